#include "cutlab/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cutlab {

namespace {

struct LinearTerm {
    Vec coeffs;   // a
    double rhs;   // b; slack = b - a.x
};

/// Barrier problem: minimize -sum log(slack_i + t) over an affine subspace.
struct BarrierSystem {
    int n = 0;
    std::vector<LinearTerm> barriers;  // rows, cuts and finite bounds
    Matrix eq;                         // hard equality rows (EQ rows, slice, fixed bounds)
    Vec eq_rhs;
    // Face-tight constraints in <= form. Each is imposed as an equality only
    // while it stays numerically independent of the accepted set; a
    // near-parallel duplicate would displace the pinned subspace past the
    // feasibility tolerance, so it is kept as a relaxed barrier term instead.
    std::vector<LinearTerm> soft_eq;
    double delta = 1e-7;
};

double term_slack(const LinearTerm& t, const Vec& x) { return t.rhs - dot(t.coeffs, x); }

double dot_row(const Matrix& a, int i, const Vec& x) {
    const double* r = a.row_ptr(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
    return s;
}

double min_raw_slack(const BarrierSystem& sys, const Vec& x) {
    double mn = kInf;
    for (const auto& t : sys.barriers) mn = std::min(mn, term_slack(t, x));
    return mn;
}

double barrier_value(const BarrierSystem& sys, const Vec& x, double t) {
    double f = 0.0;
    for (const auto& term : sys.barriers) {
        const double s = term_slack(term, x) + t;
        if (s <= 0.0) return kInf;
        f -= std::log(s);
    }
    return f;
}

/// Keep a maximal independent subset of the equality rows; throws
/// RegionEmptyError on an inconsistent system.
void reduce_equalities(Matrix& eq, Vec& rhs, int n) {
    const int m = static_cast<int>(eq.rows());
    if (m == 0) return;
    Matrix work = eq;
    Vec wrhs = rhs;
    std::vector<int> keep;
    int rank_col = 0;
    std::vector<bool> used(m, false);
    for (int col = 0; col < n && static_cast<int>(keep.size()) < m; ++col) {
        int piv = -1;
        double best = 1e-7;  // near-parallel face-tight rows count as dependent
        for (int i = 0; i < m; ++i) {
            if (used[i]) continue;
            if (std::abs(work(i, col)) > best) {
                best = std::abs(work(i, col));
                piv = i;
            }
        }
        if (piv < 0) continue;
        used[piv] = true;
        keep.push_back(piv);
        const double p = work(piv, col);
        for (int i = 0; i < m; ++i) {
            if (i == piv) continue;
            const double f = work(i, col) / p;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) work(i, j) -= f * work(piv, j);
            wrhs[i] -= f * wrhs[piv];
        }
        ++rank_col;
    }
    for (int i = 0; i < m; ++i) {
        if (used[i]) continue;
        double mx = 0.0;
        for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(work(i, j)));
        if (mx < 1e-7 && std::abs(wrhs[i]) > 1e-4)
            throw RegionEmptyError("inconsistent equality system");
    }
    std::sort(keep.begin(), keep.end());
    Matrix red(keep.size(), n);
    Vec rrhs(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (int j = 0; j < n; ++j) red(k, j) = eq(keep[k], j);
        rrhs[k] = rhs[keep[k]];
    }
    eq = std::move(red);
    rhs = std::move(rrhs);
}

/// Orthogonal projection of x onto {E y = e} (E with independent rows).
Vec project_onto_equalities(const Matrix& eq, const Vec& rhs, const Vec& x) {
    const int p = static_cast<int>(eq.rows());
    if (p == 0) return x;
    Vec resid(p);
    for (int i = 0; i < p; ++i) resid[i] = rhs[i] - dot_row(eq, i, x);
    Matrix gram(p, p, 0.0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < eq.cols(); ++k) s += eq(i, k) * eq(j, k);
            gram(i, j) = s;
        }
    for (int i = 0; i < p; ++i) gram(i, i) += 1e-12;
    LuFactor lu(gram);
    if (lu.singular()) throw BarrierError("singular equality projection");
    const Vec lam = lu.solve(resid);
    Vec out = x;
    for (int i = 0; i < p; ++i)
        for (std::size_t k = 0; k < eq.cols(); ++k) out[k] += eq(i, k) * lam[i];
    return out;
}

struct CenterStage {
    int iters = 0;
    double decrement = kInf;
    Vec history;
};

/// Orthonormal basis of the nullspace of the (independent-row) matrix eq,
/// as columns. Modified Gram-Schmidt with one reorthogonalization pass.
std::vector<Vec> nullspace_basis(const Matrix& eq, int n) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < eq.rows(); ++i) {
        Vec r(n);
        for (int j = 0; j < n; ++j) r[j] = eq(i, j);
        for (const Vec& q : rows) {
            const double c = dot(q, r);
            for (int j = 0; j < n; ++j) r[j] -= c * q[j];
        }
        const double nr = norm2(r);
        if (nr > 1e-10)
            rows.push_back(scale(r, 1.0 / nr));
    }
    std::vector<Vec> basis;
    for (int cand = 0; cand < n; ++cand) {
        Vec v(n, 0.0);
        v[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& q : rows) {
                const double c = dot(q, v);
                for (int j = 0; j < n; ++j) v[j] -= c * q[j];
            }
            for (const Vec& q : basis) {
                const double c = dot(q, v);
                for (int j = 0; j < n; ++j) v[j] -= c * q[j];
            }
        }
        const double nv = norm2(v);
        if (nv > 1e-8) basis.push_back(scale(v, 1.0 / nv));
        if (static_cast<int>(basis.size()) == n - static_cast<int>(rows.size())) break;
    }
    return basis;
}

/// Damped Newton on the relaxed barrier restricted to the equality subspace.
/// The step is computed in the reduced (nullspace) coordinates: a reduced
/// Hessian solve stays well scaled and a fully pinned system converges with
/// a zero step instead of chasing solver noise.
CenterStage center_at(const BarrierSystem& sys, const std::vector<Vec>& nullbasis, double t,
                      Vec& x, double target, const BarrierOptions& opts) {
    const int n = sys.n;
    const int r = static_cast<int>(nullbasis.size());
    CenterStage stage;

    if (r == 0) {  // equalities determine the point completely
        stage.decrement = 0.0;
        stage.history.push_back(0.0);
        for (const auto& term : sys.barriers)
            if (term_slack(term, x) + t <= 0.0)
                throw NoConvergenceError("pinned point is outside the barrier domain");
        return stage;
    }

    for (int it = 0; it < opts.max_newton; ++it) {
        Vec g(n, 0.0);
        Matrix h(n, n, 0.0);
        for (const auto& term : sys.barriers) {
            const double s = term_slack(term, x) + t;
            if (s <= 0.0) throw NoConvergenceError("barrier iterate left the domain");
            const double gi = 1.0 / s;
            const double hi = gi * gi;
            for (int j = 0; j < n; ++j) {
                const double aj = term.coeffs[j];
                if (aj == 0.0) continue;
                g[j] += gi * aj;
                for (int k = 0; k <= j; ++k) {
                    const double ak = term.coeffs[k];
                    if (ak != 0.0) h(j, k) += hi * aj * ak;
                }
            }
        }
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) h(j, k) = h(k, j);

        // reduced quantities: gr = Z^T g, hr = Z^T H Z
        Vec gr(r, 0.0);
        for (int a = 0; a < r; ++a) gr[a] = dot(nullbasis[a], g);
        std::vector<Vec> hz(r, Vec(n, 0.0));
        for (int a = 0; a < r; ++a) hz[a] = h.multiply(nullbasis[a]);
        Matrix hr(r, r, 0.0);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b <= a; ++b) {
                const double v = dot(nullbasis[b], hz[a]);
                hr(a, b) = v;
                hr(b, a) = v;
            }
        for (int a = 0; a < r; ++a) hr(a, a) += 1e-12;

        // Jacobi scaling plus one refinement pass keeps the solve honest
        // under the barrier's dynamic range
        Vec d(r);
        for (int a = 0; a < r; ++a) d[a] = 1.0 / std::sqrt(std::max(hr(a, a), 1e-300));
        Matrix hs(r, r);
        Vec rhs(r);
        for (int a = 0; a < r; ++a) {
            rhs[a] = -gr[a] * d[a];
            for (int b = 0; b < r; ++b) hs(a, b) = hr(a, b) * d[a] * d[b];
        }
        LuFactor lu(hs);
        if (lu.singular()) {
            for (int a = 0; a < r; ++a) hs(a, a) += 1e-10;
            lu = LuFactor(hs);
            if (lu.singular())
                throw NoConvergenceError("singular reduced Hessian in Newton step");
        }
        Vec sol = lu.solve(rhs);
        {
            Vec resid(r, 0.0);
            for (int a = 0; a < r; ++a) {
                double s = rhs[a];
                const double* row = hs.row_ptr(a);
                for (int b = 0; b < r; ++b) s -= row[b] * sol[b];
                resid[a] = s;
            }
            const Vec corr = lu.solve(resid);
            for (int a = 0; a < r; ++a) sol[a] += corr[a];
        }
        Vec w(r);
        for (int a = 0; a < r; ++a) w[a] = sol[a] * d[a];
        Vec dx(n, 0.0);
        for (int a = 0; a < r; ++a)
            for (int j = 0; j < n; ++j) dx[j] += w[a] * nullbasis[a][j];

        double hd = 0.0;
        for (int a = 0; a < r; ++a) hd += w[a] * dot_row(hr, a, w);
        const double decrement = std::sqrt(std::max(0.0, hd));
        stage.decrement = decrement;
        stage.history.push_back(decrement);
        if (decrement <= target) {
            stage.iters = it;
            return stage;
        }

        // step length: stay strictly inside, then Armijo backtracking; deep
        // in the quadratic phase the objective change drops below machine
        // precision, so the full clipped step is taken as is
        double smax = kInf;
        for (const auto& term : sys.barriers) {
            const double ad = dot(term.coeffs, dx);
            if (ad > 0.0) smax = std::min(smax, (term_slack(term, x) + t) / ad);
        }
        double step = std::min(1.0, 0.99 * smax);
        if (decrement > 1e-4) {
            const double f0 = barrier_value(sys, x, t);
            const double slope = dot(g, dx);
            Vec trial(n);
            for (int bt = 0; bt < 60; ++bt) {
                for (int j = 0; j < n; ++j) trial[j] = x[j] + step * dx[j];
                if (barrier_value(sys, trial, t) <= f0 + 0.25 * step * slope) break;
                step *= 0.5;
            }
        }
        for (int j = 0; j < n; ++j) x[j] += step * dx[j];
        stage.iters = it + 1;
    }
    {
        double mn = kInf;
        for (const auto& term : sys.barriers) mn = std::min(mn, term_slack(term, x) + t);
        std::ostringstream msg;
        msg << "analytic center Newton did not converge (decrement " << stage.decrement
            << ", t " << t << ", min slack " << mn << ", terms " << sys.barriers.size()
            << ", equalities " << sys.eq.rows() << ")";
        throw NoConvergenceError(msg.str());
    }
}

Vec midbox_start(const MipInstance& inst) {
    Vec x(inst.n());
    for (int j = 0; j < inst.n(); ++j) {
        const double l = inst.lower[j], u = inst.upper[j];
        if (std::isfinite(l) && std::isfinite(u))
            x[j] = 0.5 * (l + u);
        else if (std::isfinite(l))
            x[j] = l + 1.0;
        else if (std::isfinite(u))
            x[j] = u - 1.0;
        else
            x[j] = 0.0;
    }
    return x;
}

void append_row(BarrierSystem& sys, Vec a, double b) {
    sys.barriers.push_back({std::move(a), b});
}

void append_equality(Matrix& eq, Vec& rhs, const Vec& a, double b) {
    Matrix grown(eq.rows() + 1, a.size());
    for (std::size_t i = 0; i < eq.rows(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) grown(i, j) = eq(i, j);
    for (std::size_t j = 0; j < a.size(); ++j) grown(eq.rows(), j) = a[j];
    eq = std::move(grown);
    rhs.push_back(b);
}

Vec unit(int n, int j, double sign = 1.0) {
    Vec e(n, 0.0);
    e[j] = sign;
    return e;
}

Vec row_vec(const MipInstance& inst, int i) {
    Vec a(inst.n());
    for (int j = 0; j < inst.n(); ++j) a[j] = inst.rows(i, j);
    return a;
}

/// Strictly interior start for the delta-relaxed system via a max-margin LP:
/// maximize s subject to slack_i + delta >= s for every barrier term and the
/// equality rows. A nonempty region guarantees the margin is at least delta.
Vec interior_start(const BarrierSystem& sys, const Vec& fallback) {
    const int n = sys.n;
    MipInstance lp;
    lp.name = "margin";
    lp.objective.assign(n + 1, 0.0);
    lp.objective[n] = -1.0;  // maximize the margin variable
    const int m = static_cast<int>(sys.barriers.size()) + static_cast<int>(sys.eq.rows());
    lp.rows = Matrix(m, n + 1);
    lp.rhs.assign(m, 0.0);
    lp.row_kind.assign(m, RowKind::LE);
    int r = 0;
    double scale = 1.0;
    for (const auto& term : sys.barriers) scale = std::max(scale, std::abs(term.rhs));
    for (const auto& term : sys.barriers) {
        for (int j = 0; j < n; ++j) lp.rows(r, j) = term.coeffs[j];
        lp.rows(r, n) = 1.0;
        lp.rhs[r] = term.rhs + sys.delta;
        ++r;
    }
    for (std::size_t i = 0; i < sys.eq.rows(); ++i) {
        for (int j = 0; j < n; ++j) lp.rows(r, j) = sys.eq(i, j);
        lp.rhs[r] = sys.eq_rhs[i];
        lp.row_kind[r] = RowKind::EQ;
        ++r;
    }
    lp.lower.assign(n + 1, -kInf);
    lp.upper.assign(n + 1, kInf);
    lp.upper[n] = 1.0 + scale;  // keep the margin LP bounded

    const LpOutcome res = solve_lp(lp);
    if (res.status != LpStatus::Optimal)
        throw RegionEmptyError("margin LP failed: region is empty after delta relaxation");
    const double margin = res.point[n];
    if (margin <= 1e-12) {
        std::ostringstream msg;
        msg << "no strictly interior point after delta relaxation (margin " << margin
            << ", delta " << sys.delta << ", terms " << sys.barriers.size()
            << ", equalities " << sys.eq.rows() << ")";
        throw RegionEmptyError(msg.str());
    }
    (void)fallback;
    return Vec(res.point.begin(), res.point.begin() + n);
}

CenterPoint solve_center(BarrierSystem sys, Vec x0, CenterKind kind,
                         const BarrierOptions& opts) {
    reduce_equalities(sys.eq, sys.eq_rhs, sys.n);

    int soft_accepted = 0;
    if (!sys.soft_eq.empty()) {
        // orthonormal row basis of the accepted equalities
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < sys.eq.rows(); ++i) {
            Vec row(sys.n);
            for (int j = 0; j < sys.n; ++j) row[j] = sys.eq(i, j);
            for (const Vec& q : basis) {
                const double c = dot(q, row);
                for (int j = 0; j < sys.n; ++j) row[j] -= c * q[j];
            }
            const double nr = norm2(row);
            if (nr > 1e-10) basis.push_back(scale(row, 1.0 / nr));
        }
        for (const LinearTerm& cand : sys.soft_eq) {
            Vec res = cand.coeffs;
            for (const Vec& q : basis) {
                const double c = dot(q, res);
                for (int j = 0; j < sys.n; ++j) res[j] -= c * q[j];
            }
            const double rel = norm2(res) / std::max(norm2(cand.coeffs), 1e-12);
            if (rel >= 1e-2) {
                append_equality(sys.eq, sys.eq_rhs, cand.coeffs, cand.rhs);
                basis.push_back(scale(res, 1.0 / norm2(res)));
                ++soft_accepted;
            } else {
                sys.barriers.push_back(cand);
            }
        }
        sys.soft_eq.clear();
    }

    CenterPoint out;
    out.kind = kind;
    out.relaxation_slack = sys.delta;
    if (sys.barriers.empty()) {
        out.point = project_onto_equalities(sys.eq, sys.eq_rhs, x0);
        return out;
    }

    // The pinned subspace must intersect the relaxed barrier domain. When it
    // does not (near-parallel face-tight equalities displace it), demote the
    // most recently accepted soft equality back to a barrier term and retry.
    Vec x;
    while (true) {
        x = project_onto_equalities(sys.eq, sys.eq_rhs, x0);
        if (min_raw_slack(sys, x) + sys.delta > 0.0) break;
        bool interior_found = false;
        try {
            x = interior_start(sys, x);
            interior_found = true;
        } catch (const RegionEmptyError&) {
            if (soft_accepted == 0) throw;
        }
        if (interior_found) break;
        // drop the last soft equality row
        const std::size_t rows = sys.eq.rows();
        Vec coeffs(sys.n);
        for (int j = 0; j < sys.n; ++j) coeffs[j] = sys.eq(rows - 1, j);
        sys.barriers.push_back({coeffs, sys.eq_rhs.back()});
        Matrix shrunk(rows - 1, sys.n);
        for (std::size_t i = 0; i + 1 < rows; ++i)
            for (int j = 0; j < sys.n; ++j) shrunk(i, j) = sys.eq(i, j);
        sys.eq = std::move(shrunk);
        sys.eq_rhs.pop_back();
        --soft_accepted;
    }
    const std::vector<Vec> nullbasis = nullspace_basis(sys.eq, sys.n);

    int total_iters = 0;
    CenterStage stage = center_at(sys, nullbasis, sys.delta, x, opts.center_tol, opts);
    total_iters += stage.iters;

    // Drop the relaxation entirely when the region has healthy interior;
    // sliver regions keep the delta-relaxed center, which is the contract.
    if (min_raw_slack(sys, x) > 100.0 * sys.delta) {
        stage = center_at(sys, nullbasis, 0.0, x, opts.center_tol, opts);
        total_iters += stage.iters;
    }

    out.point = std::move(x);
    out.newton_iters = total_iters;
    out.residual = stage.decrement;
    out.decrement_history = std::move(stage.history);
    return out;
}

double relaxation_delta(const MipInstance& inst, const std::vector<Cut>& cuts) {
    double mx = 0.0;
    for (double b : inst.rhs) mx = std::max(mx, std::abs(b));
    for (const Cut& c : cuts) mx = std::max(mx, std::abs(c.rhs));
    return 1e-7 * (1.0 + mx);
}


}  // namespace

CenterPoint analytic_center(const MipInstance& inst, const std::vector<Cut>& cuts,
                            const BarrierOptions& opts) {
    inst.validate();
    const Vec zero_obj(inst.n(), 0.0);
    const LpOutcome feas = solve_lp(inst, cuts, zero_obj);
    if (feas.status == LpStatus::Infeasible)
        throw RegionEmptyError("region is empty: LP relaxation infeasible");

    BarrierSystem sys;
    sys.n = inst.n();
    sys.delta = relaxation_delta(inst, cuts);
    sys.eq = Matrix(0, sys.n);
    for (int i = 0; i < inst.m(); ++i) {
        if (inst.row_kind[i] == RowKind::EQ)
            append_equality(sys.eq, sys.eq_rhs, row_vec(inst, i), inst.rhs[i]);
        else
            append_row(sys, row_vec(inst, i), inst.rhs[i]);
    }
    for (const Cut& c : cuts) append_row(sys, c.coeffs, c.rhs);
    for (int j = 0; j < inst.n(); ++j) {
        if (inst.lower[j] == inst.upper[j]) {
            append_equality(sys.eq, sys.eq_rhs, unit(sys.n, j), inst.lower[j]);
            continue;
        }
        if (std::isfinite(inst.lower[j])) append_row(sys, unit(sys.n, j, -1.0), -inst.lower[j]);
        if (std::isfinite(inst.upper[j])) append_row(sys, unit(sys.n, j), inst.upper[j]);
    }

    return solve_center(std::move(sys), midbox_start(inst), CenterKind::PolytopeCenter, opts);
}

CenterPoint optimal_face_center(const MipInstance& inst, const std::vector<Cut>& cuts,
                                const LpOutcome& lp, const BarrierOptions& opts) {
    inst.validate();
    if (lp.status != LpStatus::Optimal)
        throw BarrierError("optimal_face_center requires an Optimal LP outcome");
    const double zstar = lp.value;
    const double feas_tol = opts.tol.feas;
    const int n = inst.n();

    // Auxiliary instance: original rows plus the optimal-value slice c.x = z*.
    MipInstance slice = inst;
    {
        Matrix grown(inst.m() + 1, n);
        for (int i = 0; i < inst.m(); ++i)
            for (int j = 0; j < n; ++j) grown(i, j) = inst.rows(i, j);
        for (int j = 0; j < n; ++j) grown(inst.m(), j) = inst.objective[j];
        slice.rows = std::move(grown);
        slice.rhs.push_back(zstar);
        slice.row_kind.push_back(RowKind::EQ);
    }

    // Face-tight detection: a constraint is tight across the whole face iff
    // its maximum slack on the slice stays within feas_tol.
    const int total_rows = inst.m() + static_cast<int>(cuts.size());
    std::vector<bool> row_face_tight(total_rows, false);
    std::vector<int> bound_face_tight(n, 0);  // -1 lower, +1 upper
    int aux_budget = n + total_rows;

    auto max_on_slice = [&](const Vec& objective) -> double {
        // max objective.x over the slice = -min(-objective.x); a probe that
        // fails numerically counts as unbounded, so the constraint stays a
        // (relaxed) barrier term rather than a hard equality
        Vec neg = scale(objective, -1.0);
        LpOutcome r;
        try {
            r = solve_lp(slice, cuts, neg, 1);
        } catch (const SolverError&) {
            return kInf;
        }
        if (r.status != LpStatus::Optimal) return kInf;
        return -r.value;
    };

    for (int i = 0; i < total_rows && aux_budget > 0; ++i) {
        const bool is_eq = i < inst.m() && inst.row_kind[i] == RowKind::EQ;
        if (is_eq) continue;
        Vec a = i < inst.m() ? row_vec(inst, i) : cuts[i - inst.m()].coeffs;
        const double b = i < inst.m() ? inst.rhs[i] : cuts[i - inst.m()].rhs;
        const double slack_at_lp = b - dot(a, lp.point);
        if (slack_at_lp > feas_tol) continue;  // not even tight at the vertex
        --aux_budget;
        const double max_slack = b - (-max_on_slice(scale(a, -1.0)));
        if (max_slack <= feas_tol) row_face_tight[i] = true;
    }
    for (int j = 0; j < n && aux_budget > 0; ++j) {
        if (inst.lower[j] == inst.upper[j]) continue;
        if (std::isfinite(inst.lower[j]) && lp.point[j] - inst.lower[j] <= feas_tol) {
            --aux_budget;
            if (max_on_slice(unit(n, j)) - inst.lower[j] <= feas_tol) {
                bound_face_tight[j] = -1;
                continue;
            }
        }
        if (std::isfinite(inst.upper[j]) && inst.upper[j] - lp.point[j] <= feas_tol) {
            --aux_budget;
            if (inst.upper[j] - (-max_on_slice(unit(n, j, -1.0))) <= feas_tol)
                bound_face_tight[j] = 1;
        }
    }

    BarrierSystem sys;
    sys.n = n;
    sys.delta = relaxation_delta(inst, cuts);
    sys.eq = Matrix(0, n);
    append_equality(sys.eq, sys.eq_rhs, inst.objective, zstar);
    for (int i = 0; i < inst.m(); ++i) {
        const Vec a = row_vec(inst, i);
        if (inst.row_kind[i] == RowKind::EQ)
            append_equality(sys.eq, sys.eq_rhs, a, inst.rhs[i]);
        else if (row_face_tight[i])
            sys.soft_eq.push_back({a, inst.rhs[i]});
        else
            append_row(sys, a, inst.rhs[i]);
    }
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        if (row_face_tight[inst.m() + static_cast<int>(k)])
            sys.soft_eq.push_back({cuts[k].coeffs, cuts[k].rhs});
        else
            append_row(sys, cuts[k].coeffs, cuts[k].rhs);
    }
    for (int j = 0; j < n; ++j) {
        if (inst.lower[j] == inst.upper[j]) {
            append_equality(sys.eq, sys.eq_rhs, unit(n, j), inst.lower[j]);
            continue;
        }
        if (bound_face_tight[j] == -1) {
            sys.soft_eq.push_back({unit(n, j, -1.0), -inst.lower[j]});
            if (std::isfinite(inst.upper[j])) append_row(sys, unit(n, j), inst.upper[j]);
            continue;
        }
        if (bound_face_tight[j] == 1) {
            sys.soft_eq.push_back({unit(n, j), inst.upper[j]});
            if (std::isfinite(inst.lower[j])) append_row(sys, unit(n, j, -1.0), -inst.lower[j]);
            continue;
        }
        if (std::isfinite(inst.lower[j])) append_row(sys, unit(n, j, -1.0), -inst.lower[j]);
        if (std::isfinite(inst.upper[j])) append_row(sys, unit(n, j), inst.upper[j]);
    }

    // Start from the box midpoint; the equality projection pulls it onto the
    // slice and the homotopy recovers interiority w.r.t. the face.
    Vec start = midbox_start(inst);
    for (int j = 0; j < n; ++j) {
        if (bound_face_tight[j] == -1) start[j] = inst.lower[j];
        if (bound_face_tight[j] == 1) start[j] = inst.upper[j];
    }
    return solve_center(std::move(sys), std::move(start), CenterKind::OptimalFaceCenter, opts);
}

}  // namespace cutlab
