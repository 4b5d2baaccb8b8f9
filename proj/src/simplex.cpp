#include "cutlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cutlab {

namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kDegenStep = 1e-12;

bool near_integer(double v, double tol = 1e-9) {
    return std::abs(v - std::round(v)) <= tol;
}
}  // namespace

SimplexSolver::SimplexSolver(const MipInstance& inst, const std::vector<Cut>& cuts,
                             SimplexOptions opts)
    : opts_(std::move(opts)) {
    inst.validate();
    if (opts_.objective_override &&
        static_cast<int>(opts_.objective_override->size()) != inst.n())
        throw SolverError("objective override length != n");
    for (const Cut& c : cuts)
        if (static_cast<int>(c.coeffs.size()) != inst.n())
            throw SolverError("cut dimension != n");
    build(inst, cuts);
}

void SimplexSolver::build(const MipInstance& inst, const std::vector<Cut>& cuts) {
    nstruct_ = inst.n();
    nrows_ = inst.m() + static_cast<int>(cuts.size());

    cols_.assign(nstruct_, Vec(nrows_, 0.0));
    rhs_.resize(nrows_);
    for (int i = 0; i < inst.m(); ++i) {
        rhs_[i] = inst.rhs[i];
        for (int j = 0; j < nstruct_; ++j) cols_[j][i] = inst.rows(i, j);
    }
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const int i = inst.m() + static_cast<int>(k);
        rhs_[i] = cuts[k].rhs;
        for (int j = 0; j < nstruct_; ++j) cols_[j][i] = cuts[k].coeffs[j];
    }

    const Vec& obj = opts_.objective_override ? *opts_.objective_override : inst.objective;
    const int nt = nstruct_ + nrows_;
    cost_.assign(nt, 0.0);
    lo_.assign(nt, 0.0);
    hi_.assign(nt, kInf);
    for (int j = 0; j < nstruct_; ++j) {
        cost_[j] = obj[j];
        lo_[j] = inst.lower[j];
        hi_[j] = inst.upper[j];
    }
    for (int i = 0; i < inst.m(); ++i) {
        const int s = nstruct_ + i;
        lo_[s] = 0.0;
        hi_[s] = inst.row_kind[i] == RowKind::EQ ? 0.0 : kInf;
    }
    // cut slacks default to [0, inf)

    col_integer_.assign(nstruct_, false);
    for (int j : inst.integer_set) col_integer_[j] = true;

    row_integral_.assign(nrows_, false);
    for (int i = 0; i < nrows_; ++i) {
        bool ok = near_integer(rhs_[i]);
        for (int j = 0; ok && j < nstruct_; ++j) {
            const double a = cols_[j][i];
            if (std::abs(a) <= 1e-11) continue;
            if (!col_integer_[j] || !near_integer(a)) ok = false;
        }
        row_integral_[i] = ok;
    }

    Rng rng(opts_.pivot_seed);
    tie_perm_ = rng.permutation(nstruct_ + 2 * nrows_);
}

void SimplexSolver::column(int var, Vec& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (var < nstruct_) {
        out = cols_[var];
    } else if (var < nstruct_ + nrows_) {
        out[var - nstruct_] = 1.0;
    } else {
        const int a = var - nstruct_ - nrows_;
        out[art_row_[a]] = art_sign_[a];
    }
}

double SimplexSolver::nonbasic_value(int var) const {
    if (vstat_[var] == VStat::AtUpper) return hi_[var];
    return std::isfinite(lo_[var]) ? lo_[var] : 0.0;
}

bool SimplexSolver::at_upper(int var) const { return vstat_[var] == VStat::AtUpper; }

bool SimplexSolver::is_free_nonbasic(int var) const {
    return vstat_[var] != VStat::Basic && !std::isfinite(lo_[var]) && !std::isfinite(hi_[var]);
}

double SimplexSolver::variable_value(int var) const {
    const int pos = basis_pos_[var];
    return pos >= 0 ? xb_[pos] : nonbasic_value(var);
}

bool SimplexSolver::var_is_integral(int var) const {
    if (var < nstruct_) return col_integer_[var];
    if (var < nstruct_ + nrows_) return row_integral_[var - nstruct_];
    return false;
}

Vec SimplexSolver::apply_basis(const Vec& v) const {
    Vec out(nrows_, 0.0);
    Vec col(nrows_);
    for (int p = 0; p < nrows_; ++p) {
        const double vp = v[p];
        if (vp == 0.0) continue;
        const int var = basic_[p];
        if (var < nstruct_) {
            const Vec& c = cols_[var];
            for (int i = 0; i < nrows_; ++i) out[i] += vp * c[i];
        } else if (var < nstruct_ + nrows_) {
            out[var - nstruct_] += vp;
        } else {
            const int a = var - nstruct_ - nrows_;
            out[art_row_[a]] += vp * art_sign_[a];
        }
    }
    return out;
}

Vec SimplexSolver::apply_basis_transpose(const Vec& y) const {
    Vec out(nrows_, 0.0);
    for (int p = 0; p < nrows_; ++p) {
        const int var = basic_[p];
        if (var < nstruct_) {
            const Vec& c = cols_[var];
            double s = 0.0;
            for (int i = 0; i < nrows_; ++i) s += c[i] * y[i];
            out[p] = s;
        } else if (var < nstruct_ + nrows_) {
            out[p] = y[var - nstruct_];
        } else {
            const int a = var - nstruct_ - nrows_;
            out[p] = art_sign_[a] * y[art_row_[a]];
        }
    }
    return out;
}

Vec SimplexSolver::ftran(const Vec& rhs) const {
    Vec w = binv_.multiply(rhs);
    // one refinement pass against the true basis columns
    Vec resid = apply_basis(w);
    for (int i = 0; i < nrows_; ++i) resid[i] = rhs[i] - resid[i];
    const Vec corr = binv_.multiply(resid);
    for (int i = 0; i < nrows_; ++i) w[i] += corr[i];
    return w;
}

Vec SimplexSolver::btran(const Vec& c) const {
    Vec y = binv_.multiply_transpose(c);
    Vec resid = apply_basis_transpose(y);
    for (int i = 0; i < nrows_; ++i) resid[i] = c[i] - resid[i];
    const Vec corr = binv_.multiply_transpose(resid);
    for (int i = 0; i < nrows_; ++i) y[i] += corr[i];
    return y;
}

void SimplexSolver::refactor() {
    Matrix b(nrows_, nrows_, 0.0);
    Vec col(nrows_);
    for (int p = 0; p < nrows_; ++p) {
        column(basic_[p], col);
        for (int i = 0; i < nrows_; ++i) b(i, p) = col[i];
    }
    if (!invert(b, binv_)) throw SolverError("singular basis matrix");
    pivots_since_refactor_ = 0;
}

void SimplexSolver::recompute_basic_values() {
    Vec rhs_eff = rhs_;
    Vec col(nrows_);
    const int nt = nstruct_ + nrows_ + nart_;
    for (int j = 0; j < nt; ++j) {
        if (vstat_[j] == VStat::Basic) continue;
        const double v = nonbasic_value(j);
        if (v == 0.0) continue;
        column(j, col);
        for (int i = 0; i < nrows_; ++i) rhs_eff[i] -= v * col[i];
    }
    xb_ = ftran(rhs_eff);
}

double SimplexSolver::reduced_cost(int var, const Vec& y) const {
    double cy;
    if (var < nstruct_) {
        const Vec& col = cols_[var];
        double s = 0.0;
        for (int i = 0; i < nrows_; ++i) s += y[i] * col[i];
        cy = s;
    } else if (var < nstruct_ + nrows_) {
        cy = y[var - nstruct_];
    } else {
        const int a = var - nstruct_ - nrows_;
        cy = art_sign_[a] * y[art_row_[a]];
    }
    return cost_[var] - cy;
}

void SimplexSolver::pivot(int entering, int leaving_row, const Vec& w, double delta,
                          double sigma, bool to_upper) {
    for (int i = 0; i < nrows_; ++i) xb_[i] -= sigma * delta * w[i];
    const int leaving = basic_[leaving_row];
    xb_[leaving_row] = nonbasic_value(entering) + sigma * delta;

    basis_pos_[leaving] = -1;
    vstat_[leaving] = to_upper ? VStat::AtUpper : VStat::AtLower;
    basic_[leaving_row] = entering;
    basis_pos_[entering] = leaving_row;
    vstat_[entering] = VStat::Basic;

    const double wr = w[leaving_row];
    double* prow = binv_.row_ptr(leaving_row);
    for (int j = 0; j < nrows_; ++j) prow[j] /= wr;
    for (int i = 0; i < nrows_; ++i) {
        if (i == leaving_row) continue;
        const double f = w[i];
        if (f == 0.0) continue;
        double* ri = binv_.row_ptr(i);
        for (int j = 0; j < nrows_; ++j) ri[j] -= f * prow[j];
    }
    ++pivots_since_refactor_;
}

LpStatus SimplexSolver::run_phase(int phase) {
    const int nt = nstruct_ + nrows_ + nart_;
    const long max_iter = opts_.max_iterations > 0
                              ? opts_.max_iterations
                              : 200L * (nrows_ + nstruct_) + 20000L;
    bool bland = false;
    int degen_run = 0;
    std::vector<bool> banned(nt, false);
    Vec y(nrows_), w(nrows_), col(nrows_);

    for (long it = 0; it < max_iter; ++it) {
        if (pivots_since_refactor_ >= opts_.refactor_every) {
            refactor();
            recompute_basic_values();
        }

        Vec cb(nrows_);
        for (int i = 0; i < nrows_; ++i) cb[i] = cost_[basic_[i]];
        y = btran(cb);

        const double price_tol = phase == 1 ? 1e-9 : opts_.tol.opt;
        int entering = -1;
        double best_score = -price_tol;
        double entering_d = 0.0;
        for (int j = 0; j < nt; ++j) {
            if (vstat_[j] == VStat::Basic) continue;
            if (lo_[j] == hi_[j]) continue;  // fixed column never prices in
            if (banned[j]) continue;
            const double d = reduced_cost(j, y);
            double score;
            if (is_free_nonbasic(j)) {
                score = -std::abs(d);
            } else if (vstat_[j] == VStat::AtLower) {
                score = d;
            } else {
                score = -d;
            }
            if (score >= -price_tol) continue;
            if (bland) {
                if (entering < 0) {
                    entering = j;
                    entering_d = d;
                }
            } else {
                bool take = entering < 0 || score < best_score - 1e-9 ||
                            (score < best_score + 1e-9 && tie_perm_[j] < tie_perm_[entering]);
                if (take) {
                    if (entering < 0 || score < best_score) best_score = score;
                    entering = j;
                    entering_d = d;
                }
            }
        }
        if (entering < 0) return LpStatus::Optimal;

        double sigma;
        if (is_free_nonbasic(entering))
            sigma = entering_d < 0 ? 1.0 : -1.0;
        else
            sigma = vstat_[entering] == VStat::AtLower ? 1.0 : -1.0;

        column(entering, col);
        w = ftran(col);

        double limit = kInf;  // bound-flip distance for the entering variable
        if (std::isfinite(lo_[entering]) && std::isfinite(hi_[entering]))
            limit = hi_[entering] - lo_[entering];

        // Harris two-pass ratio test: bound the step by tolerance-stretched
        // ratios, then take the numerically largest pivot inside that bound.
        auto row_ratio = [&](int i, double stretch, double& ratio, bool& hits_upper) {
            if (std::abs(w[i]) <= kPivotTol) return false;
            const int bv = basic_[i];
            const double rate = -sigma * w[i];  // change rate of xb_[i]
            if (rate < 0.0) {
                if (!std::isfinite(lo_[bv])) return false;
                ratio = (xb_[i] - lo_[bv] + stretch) / (-rate);
                hits_upper = false;
            } else {
                if (!std::isfinite(hi_[bv])) return false;
                ratio = (hi_[bv] - xb_[i] + stretch) / rate;
                hits_upper = true;
            }
            if (ratio < 0.0) ratio = 0.0;
            return true;
        };

        const double stretch = bland ? 0.0 : 0.1 * opts_.tol.feas;
        double theta = limit;
        bool blocked = false;
        for (int i = 0; i < nrows_; ++i) {
            double ratio;
            bool up;
            if (!row_ratio(i, stretch, ratio, up)) continue;
            blocked = true;
            theta = std::min(theta, ratio);
        }

        int leaving_row = -1;
        bool leaving_to_upper = false;
        double best_ratio = limit;
        if (blocked && theta <= limit) {
            double best_wabs = 0.0;
            int best_bv = -1;
            for (int i = 0; i < nrows_; ++i) {
                double exact;
                bool up;
                if (!row_ratio(i, 0.0, exact, up)) continue;
                if (exact > theta) continue;
                const double wabs = std::abs(w[i]);
                const int bv = basic_[i];
                const bool take = bland ? (best_bv < 0 || bv < best_bv) : wabs > best_wabs;
                if (take) {
                    leaving_row = i;
                    leaving_to_upper = up;
                    best_wabs = wabs;
                    best_bv = bv;
                    best_ratio = exact;
                }
            }
            if (leaving_row < 0) {
                // every blocking row sits inside the stretch; take the most
                // stable of them with a zero-length step
                for (int i = 0; i < nrows_; ++i) {
                    double stretched;
                    bool up;
                    if (!row_ratio(i, stretch, stretched, up)) continue;
                    if (stretched > theta) continue;
                    const double wabs = std::abs(w[i]);
                    if (wabs > best_wabs) {
                        leaving_row = i;
                        leaving_to_upper = up;
                        best_wabs = wabs;
                        best_ratio = 0.0;
                    }
                }
            }
        }

        if (leaving_row >= 0 && std::abs(w[leaving_row]) < 1e-7) {
            // tiny pivot: retry on fresh factors, then reject the column as
            // numerically unusable for this solve pass
            if (pivots_since_refactor_ > 0) {
                refactor();
                recompute_basic_values();
                continue;
            }
            banned[entering] = true;
            continue;
        }

        const double delta = leaving_row >= 0 ? std::max(0.0, best_ratio) : limit;
        if (leaving_row < 0 && !std::isfinite(delta)) {
            if (phase == 1) throw SolverError("phase-1 objective unbounded");
            return LpStatus::Unbounded;
        }

        ++iterations_;
        std::fill(banned.begin(), banned.end(), false);
        if (leaving_row < 0) {
            // bound flip
            vstat_[entering] =
                vstat_[entering] == VStat::AtLower ? VStat::AtUpper : VStat::AtLower;
        } else {
            const bool fragile = std::abs(w[leaving_row]) < 1e-5;
            pivot(entering, leaving_row, w, delta, sigma, leaving_to_upper);
            if (fragile) refactor();
        }
        // fresh basic values every iteration: incremental updates compound
        // drift through ill-conditioned bases faster than refactoring heals
        recompute_basic_values();

        if (delta <= kDegenStep) {
            if (++degen_run >= opts_.stall_limit) bland = true;
        } else {
            degen_run = 0;
        }
    }
    throw SolverError("simplex iteration limit exceeded");
}

void SimplexSolver::drive_out_artificials() {
    for (int r = 0; r < nrows_; ++r) {
        const int bv = basic_[r];
        if (bv < nstruct_ + nrows_) continue;  // not artificial
        int best = -1;
        double best_abs = 1e-7;
        Vec col(nrows_);
        for (int j = 0; j < nstruct_ + nrows_; ++j) {
            if (vstat_[j] == VStat::Basic || lo_[j] == hi_[j]) continue;
            column(j, col);
            double t = 0.0;
            const double* brow = binv_.row_ptr(r);
            for (int i = 0; i < nrows_; ++i) t += brow[i] * col[i];
            if (std::abs(t) > best_abs) {
                best_abs = std::abs(t);
                best = j;
            }
        }
        if (best < 0) continue;  // redundant row; artificial stays fixed at zero
        column(best, col);
        Vec w = binv_.multiply(col);
        pivot(best, r, w, 0.0, 1.0, false);
        vstat_[bv] = VStat::AtLower;
    }
}

LpOutcome SimplexSolver::solve() {
    LpOutcome out;

    // slack basis start
    const int nt0 = nstruct_ + nrows_;
    vstat_.assign(nt0, VStat::AtLower);
    basis_pos_.assign(nt0, -1);
    basic_.resize(nrows_);
    for (int j = 0; j < nstruct_; ++j) {
        if (!std::isfinite(lo_[j]) && std::isfinite(hi_[j])) vstat_[j] = VStat::AtUpper;
    }
    binv_ = Matrix(nrows_, nrows_, 0.0);
    for (int i = 0; i < nrows_; ++i) {
        const int s = nstruct_ + i;
        basic_[i] = s;
        basis_pos_[s] = i;
        vstat_[s] = VStat::Basic;
        binv_(i, i) = 1.0;
    }
    nart_ = 0;
    art_row_.clear();
    art_sign_.clear();
    recompute_basic_values();

    // Phase 1 with artificials for rows whose slack starts out of bounds.
    bool need_phase1 = false;
    for (int i = 0; i < nrows_; ++i) {
        const int s = nstruct_ + i;
        const double v = xb_[i];
        double viol_lo = lo_[s] - v, viol_hi = v - hi_[s];
        if (viol_lo <= opts_.tol.feas && viol_hi <= opts_.tol.feas) continue;
        need_phase1 = true;
        const int a = nt0 + nart_;
        art_row_.push_back(i);
        if (viol_lo > 0) {
            art_sign_.push_back(-1.0);
            vstat_[s] = VStat::AtLower;
            xb_[i] = viol_lo;
        } else {
            art_sign_.push_back(1.0);
            vstat_[s] = std::isfinite(hi_[s]) ? VStat::AtUpper : VStat::AtLower;
            xb_[i] = viol_hi;
        }
        ++nart_;
        basis_pos_[s] = -1;
        basic_[i] = a;
        lo_.push_back(0.0);
        hi_.push_back(kInf);
        cost_.push_back(0.0);
        vstat_.push_back(VStat::Basic);
        basis_pos_.push_back(i);
        binv_(i, i) = art_sign_.back();
    }

    // Each phase is re-run on freshly refactored state until a pass makes no
    // pivot; optimality and infeasibility certificates never rest on a stale
    // basis inverse.
    auto run_verified = [&](int phase) {
        LpStatus st = LpStatus::Optimal;
        for (int cycle = 0; cycle < 6; ++cycle) {
            const long before = iterations_;
            st = run_phase(phase);
            refactor();
            recompute_basic_values();
            if (st != LpStatus::Optimal || iterations_ == before) break;
        }
        return st;
    };

    if (need_phase1) {
        Vec saved_cost = cost_;
        std::fill(cost_.begin(), cost_.end(), 0.0);
        for (int a = 0; a < nart_; ++a) cost_[nt0 + a] = 1.0;
        run_verified(1);
        double infeas = 0.0;
        for (int a = 0; a < nart_; ++a) infeas += variable_value(nt0 + a);
        if (infeas > opts_.tol.feas) {
            out.status = LpStatus::Infeasible;
            out.value = kInf;
            out.iterations = iterations_;
            solved_ = false;
            return out;
        }
        for (int a = 0; a < nart_; ++a) {
            lo_[nt0 + a] = 0.0;
            hi_[nt0 + a] = 0.0;
        }
        drive_out_artificials();
        cost_ = saved_cost;
    }

    LpStatus st = run_verified(2);

    // Harris stretches may leave basic variables marginally outside their
    // bounds; pull them back with a repair pass (bounds shifted to cover the
    // current point, +/-1 objective toward the violated bound), then restore
    // and re-optimize. Never silent: a stubborn violation is an error.
    auto worst_violation = [&]() {
        double worst = 0.0;
        for (int i = 0; i < nrows_; ++i) {
            const int bv = basic_[i];
            if (std::isfinite(lo_[bv])) worst = std::max(worst, lo_[bv] - xb_[i]);
            if (std::isfinite(hi_[bv])) worst = std::max(worst, xb_[i] - hi_[bv]);
        }
        return worst;
    };
    for (int repair = 0; st == LpStatus::Optimal && repair < 3; ++repair) {
        if (worst_violation() <= 0.25 * opts_.tol.feas) break;
        const Vec saved_cost = cost_;
        const Vec saved_lo = lo_, saved_hi = hi_;
        std::fill(cost_.begin(), cost_.end(), 0.0);
        for (int i = 0; i < nrows_; ++i) {
            const int bv = basic_[i];
            if (std::isfinite(hi_[bv]) && xb_[i] > hi_[bv]) {
                cost_[bv] = 1.0;
                hi_[bv] = xb_[i] + 1.0;
            } else if (std::isfinite(lo_[bv]) && xb_[i] < lo_[bv]) {
                cost_[bv] = -1.0;
                lo_[bv] = xb_[i] - 1.0;
            }
        }
        run_verified(2);
        cost_ = saved_cost;
        lo_ = saved_lo;
        hi_ = saved_hi;
        st = run_verified(2);
    }
    if (st == LpStatus::Optimal && worst_violation() > opts_.tol.feas) {
        std::ostringstream msg;
        msg.precision(12);
        int worst_var = -1;
        double worst = 0.0;
        for (int i = 0; i < nrows_; ++i) {
            const int bv = basic_[i];
            double viol = 0.0;
            if (std::isfinite(lo_[bv])) viol = std::max(viol, lo_[bv] - xb_[i]);
            if (std::isfinite(hi_[bv])) viol = std::max(viol, xb_[i] - hi_[bv]);
            if (viol > worst) { worst = viol; worst_var = bv; }
        }
        msg << "simplex finished with an infeasible basis (violation " << worst << " on var "
            << worst_var << " of " << nstruct_ << "+" << nrows_ << "+" << nart_ << ")";
        throw SolverError(msg.str());
    }

    out.status = st;
    out.iterations = iterations_;
    if (st == LpStatus::Unbounded) {
        out.value = -kInf;
        solved_ = false;
        return out;
    }

    solved_ = true;
    out.point.resize(nstruct_);
    for (int j = 0; j < nstruct_; ++j) out.point[j] = variable_value(j);
    out.value = 0.0;
    for (int j = 0; j < nstruct_; ++j) out.value += cost_[j] * out.point[j];

    Vec cb(nrows_);
    for (int i = 0; i < nrows_; ++i) cb[i] = cost_[basic_[i]];
    const Vec y = binv_.multiply_transpose(cb);
    out.basis.resize(nstruct_);
    out.reduced_costs.assign(nstruct_, 0.0);
    for (int j = 0; j < nstruct_; ++j) {
        if (vstat_[j] == VStat::Basic) {
            out.basis[j] = BasisStatus::BasicAtValue;
        } else {
            out.basis[j] = vstat_[j] == VStat::AtUpper ? BasisStatus::NonbasicAtUpper
                                                       : BasisStatus::NonbasicAtLower;
            out.reduced_costs[j] = reduced_cost(j, y);
        }
    }
    out.row_basis.resize(nrows_);
    for (int i = 0; i < nrows_; ++i) {
        const int s = nstruct_ + i;
        if (vstat_[s] == VStat::Basic)
            out.row_basis[i] = BasisStatus::BasicAtValue;
        else
            out.row_basis[i] = vstat_[s] == VStat::AtUpper ? BasisStatus::NonbasicAtUpper
                                                           : BasisStatus::NonbasicAtLower;
    }
    return out;
}

SimplexSolver::TableauRow SimplexSolver::tableau_row(int var) const {
    if (!solved_) throw SolverError("tableau_row: no optimal basis available");
    if (var < 0 || var >= nstruct_ + nrows_)
        throw SolverError("tableau_row: variable index out of range");
    const int pos = basis_pos_[var];
    if (pos < 0) throw SolverError("tableau_row: variable is nonbasic");

    TableauRow row;
    row.coeffs.assign(nstruct_ + nrows_, 0.0);
    const double* brow = binv_.row_ptr(pos);
    for (int j = 0; j < nstruct_; ++j) {
        const Vec& col = cols_[j];
        double t = 0.0;
        for (int i = 0; i < nrows_; ++i) t += brow[i] * col[i];
        row.coeffs[j] = t;
    }
    for (int i = 0; i < nrows_; ++i) row.coeffs[nstruct_ + i] = brow[i];
    double rhs = 0.0;
    for (int i = 0; i < nrows_; ++i) rhs += brow[i] * rhs_[i];
    row.rhs = rhs;
    return row;
}

LpOutcome solve_lp(const MipInstance& inst, const std::vector<Cut>& cuts,
                   const std::optional<Vec>& objective_override, std::uint64_t pivot_seed) {
    SimplexOptions opts;
    opts.pivot_seed = pivot_seed;
    opts.objective_override = objective_override;
    SimplexSolver solver(inst, cuts, std::move(opts));
    return solver.solve();
}

}  // namespace cutlab
