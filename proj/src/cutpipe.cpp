#include "cutlab/cutpipe.hpp"

#include <algorithm>
#include <cmath>

#include "cutlab/alt_optima.hpp"
#include "cutlab/barrier.hpp"

namespace cutlab {

namespace {

double frac(double v) { return v - std::floor(v); }

bool near_integer(double v, double tol = 1e-9) {
    return std::abs(v - std::round(v)) <= tol;
}

double cosine(const Vec& a, const Vec& b) {
    const double na = norm2(a), nb = norm2(b);
    if (na <= 1e-12 || nb <= 1e-12) return 0.0;
    return dot(a, b) / (na * nb);
}

}  // namespace

void SeparationConfig::validate() const {
    if (rounds < 0) throw SolverError("separation config: rounds must be >= 0");
    if (max_cuts_per_round < 1)
        throw SolverError("separation config: max_cuts_per_round must be >= 1");
    if (density_threshold && (*density_threshold <= 0.0 || *density_threshold > 1.0))
        throw SolverError("separation config: density threshold must lie in (0,1]");
    if (parallelism_threshold <= 0.0 || parallelism_threshold > 1.0)
        throw SolverError("separation config: parallelism threshold must lie in (0,1]");
    if (k_optima < 1) throw SolverError("separation config: k_optima must be >= 1");
}

std::vector<Cut> generate_gomory(const MipInstance& inst, const std::vector<Cut>& cuts,
                                 const LpOutcome& lp, const SimplexSolver& solver,
                                 const Tolerances& tol) {
    if (lp.status != LpStatus::Optimal)
        throw SolverError("generate_gomory requires an Optimal LP outcome");
    const int n = inst.n();
    std::vector<Cut> out;

    for (int v = 0; v < n; ++v) {
        if (!inst.is_integer(v) || !solver.is_basic(v)) continue;
        const double value = solver.variable_value(v);
        const double f0 = frac(value);
        if (f0 <= tol.integrality || f0 >= 1.0 - tol.integrality) continue;

        const auto row = solver.tableau_row(v);

        // Shift nonbasics to their bounds; the source variable keeps the
        // fractional part of its own value as the cut rhs.
        Vec gamma(n, 0.0);
        double shift = 0.0;
        bool usable = true;
        for (int j = 0; j < solver.total_vars() && usable; ++j) {
            if (j == v || solver.is_basic(j)) continue;
            const double t = row.coeffs[j];
            if (std::abs(t) <= 1e-11) continue;
            const double lo = solver.var_lower(j), hi = solver.var_upper(j);
            if (lo == hi) continue;  // fixed: the shifted variable is identically zero
            if (solver.is_free_nonbasic(j)) {
                usable = false;  // no nonnegative shift exists
                break;
            }
            const bool upper = solver.at_upper(j);
            const double bound = upper ? hi : lo;
            const double tt = upper ? -t : t;

            const bool integral = solver.var_is_integral(j) && near_integer(bound);
            double g;
            if (integral) {
                const double fj = frac(tt);
                g = fj <= f0 ? fj / f0 : (1.0 - fj) / (1.0 - f0);
            } else {
                g = tt > 0 ? tt / f0 : -tt / (1.0 - f0);
            }
            if (g == 0.0) continue;

            // substitute the shifted variable back into structural space
            if (j < n) {
                if (upper) {
                    gamma[j] -= g;
                    shift += g * bound;
                } else {
                    gamma[j] += g;
                    shift -= g * bound;
                }
            } else {
                // slack of row i: s_i = rhs_i - a_i . x, nonbasic at lower 0
                const int i = j - n;
                const double* arow = nullptr;
                double brhs;
                if (i < inst.m()) {
                    arow = inst.rows.row_ptr(i);
                    brhs = inst.rhs[i];
                } else {
                    arow = cuts[i - inst.m()].coeffs.data();
                    brhs = cuts[i - inst.m()].rhs;
                }
                for (int k = 0; k < n; ++k) gamma[k] -= g * arow[k];
                shift += g * brhs;
            }
        }
        if (!usable) continue;

        // gamma . x + shift >= 1  ->  -gamma . x <= shift - 1
        Cut cut;
        cut.coeffs.resize(n);
        for (int k = 0; k < n; ++k) cut.coeffs[k] = -gamma[k];
        cut.rhs = shift - 1.0;
        cut.origin = CutOrigin::Gomory;

        double mx = norm_inf(cut.coeffs);
        if (mx <= 1e-7) continue;
        const double inv = 1.0 / mx;
        for (double& c : cut.coeffs) c *= inv;
        cut.rhs *= inv;
        // dropping a coefficient moves the rhs by its worst feasible
        // contribution, keeping the cut rigorously valid
        for (int k = 0; k < n; ++k) {
            double& c = cut.coeffs[k];
            if (c == 0.0 || std::abs(c) >= 1e-10) continue;
            const double hi_side = c > 0 ? inst.upper[k] : inst.lower[k];
            if (!std::isfinite(hi_side)) continue;  // nothing safe to drop against
            cut.rhs += std::max(c * inst.lower[k], c * inst.upper[k]);
            c = 0.0;
        }

        if (violation(cut, lp.point) <= tol.feas) continue;
        out.push_back(std::move(cut));
    }
    return out;
}

std::vector<Cut> filter_density(const std::vector<Cut>& cands, double threshold, int n,
                                double zero_tol) {
    std::vector<Cut> kept;
    kept.reserve(cands.size());
    for (const Cut& c : cands)
        if (relative_density(c, n, zero_tol) <= threshold) kept.push_back(c);
    return kept;
}

double score_cut(const Cut& cut, MeasureKind measure, const ScoringContext& ctx,
                 const Tolerances& tol) {
    auto clamped_directed = [&](const Vec& target) {
        const Vec diff = sub(target, ctx.x_lp);
        const double len = norm2(diff);
        if (len <= tol.zero)
            throw DegenerateDirectionError("scoring direction is degenerate");
        const double ay = std::abs(dot(cut.coeffs, diff) / len);
        return violation(cut, ctx.x_lp) / std::max(ay, tol.zero);
    };
    switch (measure) {
        case MeasureKind::Eff:
            return score_eff(cut, ctx.x_lp);
        case MeasureKind::Dcd:
            if (!ctx.incumbent) throw MeasureError("dcd requires an incumbent in the context");
            return clamped_directed(ctx.incumbent->point);
        case MeasureKind::ExpImprov:
            if (ctx.objective.empty())
                throw MeasureError("exp-improv requires the objective in the context");
            return score_exp_improv(cut, ctx.x_lp, ctx.objective);
        case MeasureKind::AEff:
            if (!ctx.x_face) throw MeasureError("a-eff requires the face center in the context");
            return score_a_eff(cut, *ctx.x_face);
        case MeasureKind::ADcd:
            if (!ctx.x_center)
                throw MeasureError("a-dcd requires the analytic center in the context");
            return clamped_directed(ctx.x_center->point);
        case MeasureKind::AppADcd:
            if (!ctx.cached_center || !ctx.cache_valid)
                throw MeasureError("app-a-dcd requires a valid cached center in the context");
            return clamped_directed(ctx.cached_center->point);
        case MeasureKind::AvgEff:
            if (!ctx.optima) throw MeasureError("avgeff requires an optima set in the context");
            return score_avgeff(cut, *ctx.optima);
        case MeasureKind::MinEff:
            if (!ctx.optima) throw MeasureError("mineff requires an optima set in the context");
            return score_mineff(cut, *ctx.optima);
    }
    throw MeasureError("unknown measure kind");
}

std::vector<Cut> select_cuts(const std::vector<Cut>& cands, const ScoringContext& ctx,
                             const SeparationConfig& cfg) {
    cfg.validate();
    std::vector<double> scores(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i)
        scores[i] = score_cut(cands[i], cfg.measure, ctx, cfg.tol);

    std::vector<bool> alive(cands.size(), true);
    std::vector<Cut> selected;
    while (static_cast<int>(selected.size()) < cfg.max_cuts_per_round) {
        int best = -1;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!alive[i]) continue;
            if (best < 0 || scores[i] > scores[best]) best = static_cast<int>(i);
        }
        if (best < 0 || scores[best] <= 0.0) break;
        selected.push_back(cands[best]);
        alive[best] = false;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!alive[i]) continue;
            if (cosine(cands[i].coeffs, cands[best].coeffs) > cfg.parallelism_threshold)
                alive[i] = false;
        }
    }
    return selected;
}

SeparationResult run_separation(const MipInstance& inst, const SeparationConfig& cfg,
                                const std::optional<Incumbent>& incumbent) {
    cfg.validate();
    inst.validate();

    SeparationResult result;
    std::vector<Cut>& cuts = result.cuts;
    std::optional<CenterPoint> app_cache;

    SimplexOptions sopts;
    sopts.pivot_seed = cfg.seed;
    sopts.tol = cfg.tol;

    SimplexSolver solver(inst, cuts, sopts);
    LpOutcome lp = solver.solve();
    result.total_lp_iterations += lp.iterations;
    if (lp.status == LpStatus::Infeasible)
        throw SolverError("run_separation: root LP is infeasible");
    if (lp.status == LpStatus::Unbounded)
        throw SolverError("run_separation: root LP is unbounded");
    result.features = extract_features(inst, lp, cfg.tol);

    auto lp_integral = [&](const LpOutcome& o) {
        for (int j : inst.integer_set) {
            const double f = o.point[j] - std::floor(o.point[j]);
            if (f > cfg.tol.integrality && f < 1.0 - cfg.tol.integrality) return false;
        }
        return true;
    };

    for (int round = 0; round < cfg.rounds; ++round) {
        if (lp_integral(lp)) break;

        MeasureKind effective = cfg.measure;
        bool fallback = false;
        if (effective == MeasureKind::Dcd) {
            const bool degenerate =
                incumbent && norm_inf(sub(incumbent->point, lp.point)) <= cfg.tol.zero;
            if (!incumbent || degenerate) {
                effective = MeasureKind::Eff;
                fallback = true;
            }
        }

        ScoringContext ctx;
        ctx.x_lp = lp.point;
        bool recomputed = false;
        switch (effective) {
            case MeasureKind::Eff:
                break;
            case MeasureKind::Dcd:
                ctx.incumbent = incumbent;
                break;
            case MeasureKind::ExpImprov:
                ctx.objective = inst.objective;
                break;
            case MeasureKind::AEff:
                ctx.x_face = optimal_face_center(inst, cuts, lp);
                recomputed = true;
                break;
            case MeasureKind::ADcd:
                ctx.x_center = analytic_center(inst, cuts);
                recomputed = true;
                break;
            case MeasureKind::AppADcd: {
                bool valid = app_cache.has_value();
                if (valid)
                    for (const Cut& c : cuts)
                        if (violation(c, app_cache->point) > cfg.tol.feas) {
                            valid = false;
                            break;
                        }
                if (!valid) {
                    app_cache = analytic_center(inst, cuts);
                    recomputed = true;
                }
                ctx.cached_center = app_cache;
                ctx.cache_valid = true;
                break;
            }
            case MeasureKind::AvgEff:
            case MeasureKind::MinEff:
                ctx.optima = collect_optima(inst, cuts, cfg.k_optima, cfg.seed);
                break;
        }

        std::vector<Cut> cands = generate_gomory(inst, cuts, lp, solver, cfg.tol);
        std::vector<Cut> filtered =
            cfg.density_threshold ? filter_density(cands, *cfg.density_threshold, inst.n())
                                  : cands;

        SeparationConfig scoring_cfg = cfg;
        scoring_cfg.measure = effective;
        std::vector<Cut> picked = select_cuts(filtered, ctx, scoring_cfg);

        RoundReport report;
        report.round = round;
        report.candidates_generated = static_cast<int>(cands.size());
        report.candidates_after_filter = static_cast<int>(filtered.size());
        report.cuts_added = static_cast<int>(picked.size());
        report.center_recomputed = recomputed;
        report.measure_fallback = fallback;

        if (picked.empty()) {
            report.lp_value_after = lp.value;
            result.reports.push_back(report);
            break;
        }
        const std::size_t picked_count = picked.size();
        for (Cut& c : picked) {
            c.round = round;
            cuts.push_back(std::move(c));
        }

        bool numerical_failure = false;
        try {
            solver = SimplexSolver(inst, cuts, sopts);
            lp = solver.solve();
        } catch (const CutMadeInfeasibleError&) {
            throw;
        } catch (const SolverError&) {
            // a tolerance-boundary relaxation the solver cannot certify:
            // drop this round's cuts and stop separating on the last clean
            // relaxation
            numerical_failure = true;
        }
        if (numerical_failure) {
            cuts.resize(cuts.size() - picked_count);
            solver = SimplexSolver(inst, cuts, sopts);
            lp = solver.solve();
            result.total_lp_iterations += lp.iterations;
            report.cuts_added = 0;
            report.lp_value_after = lp.value;
            result.reports.push_back(report);
            break;
        }
        result.total_lp_iterations += lp.iterations;
        if (lp.status != LpStatus::Optimal)
            throw CutMadeInfeasibleError(
                "run_separation: relaxation became " +
                std::string(lp.status == LpStatus::Infeasible ? "infeasible" : "unbounded") +
                " after adding cuts in round " + std::to_string(round));
        report.lp_value_after = lp.value;
        result.reports.push_back(report);
    }

    result.final_lp = std::move(lp);
    return result;
}

}  // namespace cutlab
