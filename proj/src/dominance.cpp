#include "cutlab/dominance.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "cutlab/barrier.hpp"
#include "cutlab/measures.hpp"
#include "cutlab/simplex.hpp"

namespace cutlab {

namespace {

constexpr double kScoreMargin = 1e-7;

/// max violation(target, x) over P intersected with {violation(keep, x) <= 0}.
/// Returns -inf for an empty region and +inf when unbounded.
struct SliceMax {
    double value;
    Vec point;
};

SliceMax max_violation_where_satisfied(const MipInstance& inst,
                                       const std::vector<Cut>& cuts_in_lp, const Cut& keep,
                                       const Cut& target) {
    std::vector<Cut> rows = cuts_in_lp;
    rows.push_back(keep);
    Vec neg = scale(target.coeffs, -1.0);
    const LpOutcome r = solve_lp(inst, rows, neg, 1);
    if (r.status == LpStatus::Infeasible) return {-kInf, {}};
    if (r.status == LpStatus::Unbounded) return {kInf, {}};
    return {-r.value - target.rhs, r.point};
}

Vec orthogonal_projection(const Cut& cut, const Vec& x) {
    const double n2 = dot(cut.coeffs, cut.coeffs);
    const double step = violation(cut, x) / n2;
    Vec p = x;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] -= step * cut.coeffs[j];
    return p;
}

bool point_in_polytope(const MipInstance& inst, const Vec& x, double tol) {
    for (int j = 0; j < inst.n(); ++j) {
        if (x[j] < inst.lower[j] - tol || x[j] > inst.upper[j] + tol) return false;
    }
    for (int i = 0; i < inst.m(); ++i) {
        const double act = row_activity(inst, i, x);
        if (inst.row_kind[i] == RowKind::LE) {
            if (act > inst.rhs[i] + tol) return false;
        } else if (std::abs(act - inst.rhs[i]) > tol) {
            return false;
        }
    }
    return true;
}

/// Convex polygon rows from a clockwise or counter-clockwise vertex list.
void polygon_rows(const std::vector<Vec>& vertices, MipInstance& inst) {
    const int m = static_cast<int>(vertices.size());
    Vec centroid(2, 0.0);
    for (const Vec& v : vertices) {
        centroid[0] += v[0] / m;
        centroid[1] += v[1] / m;
    }
    inst.rows = Matrix(m, 2);
    inst.rhs.assign(m, 0.0);
    inst.row_kind.assign(m, RowKind::LE);
    for (int i = 0; i < m; ++i) {
        const Vec& v = vertices[i];
        const Vec& w = vertices[(i + 1) % m];
        Vec normal = {w[1] - v[1], v[0] - w[0]};
        double rhs = normal[0] * v[0] + normal[1] * v[1];
        if (normal[0] * centroid[0] + normal[1] * centroid[1] > rhs) {
            normal[0] = -normal[0];
            normal[1] = -normal[1];
            rhs = -rhs;
        }
        inst.rows(i, 0) = normal[0];
        inst.rows(i, 1) = normal[1];
        inst.rhs[i] = rhs;
    }
}

}  // namespace

std::string verdict_name(DominanceVerdict v) {
    switch (v) {
        case DominanceVerdict::ADominatesB: return "a-dominates-b";
        case DominanceVerdict::BDominatesA: return "b-dominates-a";
        case DominanceVerdict::Equivalent: return "equivalent";
        case DominanceVerdict::Incomparable: return "incomparable";
    }
    return "?";
}

DominanceResult check_dominance(const MipInstance& inst, const std::vector<Cut>& cuts_in_lp,
                                const Cut& cut_a, const Cut& cut_b, double feas_tol) {
    const Vec zero_obj(inst.n(), 0.0);
    if (solve_lp(inst, cuts_in_lp, zero_obj).status == LpStatus::Infeasible)
        throw SolverError("check_dominance: the polytope is empty");

    const SliceMax b_where_a = max_violation_where_satisfied(inst, cuts_in_lp, cut_a, cut_b);
    const SliceMax a_where_b = max_violation_where_satisfied(inst, cuts_in_lp, cut_b, cut_a);

    DominanceResult out;
    out.max_b_where_a_holds = b_where_a.value;
    out.max_a_where_b_holds = a_where_b.value;
    const bool a_covers_b = b_where_a.value <= feas_tol;  // B cuts nothing extra
    const bool b_covers_a = a_where_b.value <= feas_tol;
    if (a_covers_b && b_covers_a)
        out.verdict = DominanceVerdict::Equivalent;
    else if (a_covers_b)
        out.verdict = DominanceVerdict::ADominatesB;
    else if (b_covers_a)
        out.verdict = DominanceVerdict::BDominatesA;
    else
        out.verdict = DominanceVerdict::Incomparable;
    if (a_where_b.value > feas_tol) out.only_cut_by_a = a_where_b.point;
    if (b_where_a.value > feas_tol) out.only_cut_by_b = b_where_a.point;
    return out;
}

ConsistencyReport check_consistency(const MipInstance& inst,
                                    const std::vector<Cut>& cuts_in_lp,
                                    const std::vector<Cut>& cut_set,
                                    const std::function<double(const Cut&)>& measure_fn) {
    ConsistencyReport report;
    const int k = static_cast<int>(cut_set.size());
    std::vector<double> scores(k);
    for (int i = 0; i < k; ++i) scores[i] = measure_fn(cut_set[i]);

    for (int hi = 0; hi < k; ++hi) {
        for (int lo = 0; lo < k; ++lo) {
            if (hi == lo || scores[hi] <= scores[lo] + kScoreMargin) continue;
            ++report.pairs_scored;
            ++report.pairs_checked;
            const DominanceResult dom =
                check_dominance(inst, cuts_in_lp, cut_set[hi], cut_set[lo]);
            if (dom.verdict == DominanceVerdict::BDominatesA) {
                ConsistencyViolation v;
                v.higher_index = hi;
                v.lower_index = lo;
                v.higher_score = scores[hi];
                v.lower_score = scores[lo];
                v.dominance = dom;
                report.violations.push_back(std::move(v));
            }
        }
    }
    return report;
}

ConsistencyReport check_mineff_consistency(const MipInstance& inst,
                                           const std::vector<Cut>& cuts_in_lp,
                                           const std::vector<Cut>& cut_set,
                                           const OptimaSet& optima) {
    ConsistencyReport report;
    const int k = static_cast<int>(cut_set.size());
    std::vector<double> scores(k);
    for (int i = 0; i < k; ++i) scores[i] = score_mineff(cut_set[i], optima);

    auto gate = [&](const Cut& lower_cut) {
        // active solutions: attaining the minimum efficacy for this cut
        double mn = kInf;
        std::vector<int> active;
        for (std::size_t p = 0; p < optima.points.size(); ++p) {
            const double e = score_eff(lower_cut, optima.points[p]);
            if (e < mn - 1e-9) {
                mn = e;
                active.assign(1, static_cast<int>(p));
            } else if (e <= mn + 1e-9) {
                active.push_back(static_cast<int>(p));
            }
        }
        for (int p : active) {
            const Vec& x0 = optima.points[p];
            if (violation(lower_cut, x0) <= 0) continue;  // not separated
            if (point_in_polytope(inst, orthogonal_projection(lower_cut, x0), 1e-6)) {
                bool ok = true;
                for (const Cut& c : cuts_in_lp)
                    if (violation(c, orthogonal_projection(lower_cut, x0)) > 1e-6) ok = false;
                if (ok) return true;
            }
        }
        return false;
    };

    for (int hi = 0; hi < k; ++hi) {
        for (int lo = 0; lo < k; ++lo) {
            if (hi == lo || scores[hi] <= scores[lo] + kScoreMargin) continue;
            ++report.pairs_scored;
            if (!gate(cut_set[lo])) {
                ++report.hypothesis_failures;
                continue;
            }
            ++report.pairs_checked;
            const DominanceResult dom =
                check_dominance(inst, cuts_in_lp, cut_set[hi], cut_set[lo]);
            if (dom.verdict == DominanceVerdict::BDominatesA) {
                ConsistencyViolation v;
                v.higher_index = hi;
                v.lower_index = lo;
                v.higher_score = scores[hi];
                v.lower_score = scores[lo];
                v.dominance = dom;
                report.violations.push_back(std::move(v));
            }
        }
    }
    return report;
}

Counterexample build_fig2b_counterexample() {
    Counterexample ex;
    MipInstance& inst = ex.instance;
    inst.name = "fig2b";
    inst.objective = {1.0, -2.0};
    inst.lower = {0.0, 0.0};
    inst.upper = {10.0, 10.0};
    polygon_rows({{3.0, 6.0}, {6.5, 5.0}, {5.0, 1.0}}, inst);
    inst.validate();

    ex.x_lp = {3.0, 6.0};  // unique minimizer of x1 - 2 x2 over the triangle
    ex.objective = inst.objective;

    ex.dashed.coeffs = {0.0, 1.0};  // x2 <= 5; its projection (3,5) leaves the triangle
    ex.dashed.rhs = 5.0;
    ex.dashed.origin = CutOrigin::Test;

    // through (3.4, 5), the point where the dashed cut meets edge a->c
    ex.dotted.coeffs = {-0.5, 1.0};  // x2 - 0.5 x1 <= 3.3
    ex.dotted.rhs = 5.0 - 0.5 * 3.4;
    ex.dotted.origin = CutOrigin::Test;
    return ex;
}

Counterexample build_fig3_counterexample() {
    Counterexample ex;
    MipInstance& inst = ex.instance;
    inst.name = "fig3";
    inst.objective = {-1.0, 0.0};
    inst.lower = {0.0, 0.0};
    inst.upper = {10.0, 10.0};
    polygon_rows(
        {{4.0, 3.2}, {3.0, 2.0}, {2.0, 2.0}, {1.7778, 2.5002}, {3.0, 3.0}}, inst);
    inst.validate();

    ex.x_lp = {4.0, 3.2};
    ex.objective = inst.objective;

    // both cuts pass exactly through the vertex (3,3)
    ex.dashed.coeffs = {5.0, 1.0};
    ex.dashed.rhs = 18.0;
    ex.dashed.origin = CutOrigin::Test;
    ex.dotted.coeffs = {5.0 / 6.0, 1.0};
    ex.dotted.rhs = 5.5;
    ex.dotted.origin = CutOrigin::Test;
    return ex;
}

MipInstance random_suite_polytope(Rng& rng, int dim, int extra_rows) {
    MipInstance inst;
    inst.name = "suite";
    inst.objective.assign(dim, 0.0);
    inst.lower.assign(dim, 0.0);
    inst.upper.assign(dim, 10.0);

    Vec anchor(dim);
    for (int j = 0; j < dim; ++j) anchor[j] = rng.next_range(3.0, 7.0);

    std::vector<Vec> rows;
    Vec rhs;
    while (static_cast<int>(rows.size()) < extra_rows) {
        Vec g(dim);
        double n2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            g[j] = rng.next_range(-1.0, 1.0);
            n2 += g[j] * g[j];
        }
        if (n2 < 0.05) continue;
        Vec through(dim);
        for (int j = 0; j < dim; ++j) through[j] = rng.next_range(1.0, 9.0);
        double b = dot(g, through);
        const double margin = b - dot(g, anchor);
        if (std::abs(margin) < 0.2) continue;  // keep the anchor clearly interior
        if (margin < 0) {
            for (double& v : g) v = -v;
            b = -b;
        }
        rows.push_back(g);
        rhs.push_back(b);
    }

    inst.rows = Matrix(extra_rows, dim);
    for (int i = 0; i < extra_rows; ++i)
        for (int j = 0; j < dim; ++j) inst.rows(i, j) = rows[i][j];
    inst.rhs = std::move(rhs);
    inst.row_kind.assign(extra_rows, RowKind::LE);
    inst.validate();
    return inst;
}

namespace {

/// Strictly interior sample: a convex combination of rejection-sampled box
/// points accepted with a slack margin.
std::optional<Vec> sample_interior(const MipInstance& inst, Rng& rng, double margin) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        Vec q(inst.n());
        for (int j = 0; j < inst.n(); ++j)
            q[j] = rng.next_range(inst.lower[j] + margin, inst.upper[j] - margin);
        bool ok = true;
        for (int i = 0; i < inst.m() && ok; ++i)
            if (row_activity(inst, i, q) > inst.rhs[i] - margin) ok = false;
        if (ok) return q;
    }
    return std::nullopt;
}

struct SampledCuts {
    std::vector<Cut> cuts;
};

/// Cuts through interior points, oriented to separate x_ref; optionally the
/// orthogonal projection of x_ref must stay in the polytope and the cut must
/// not be near-parallel to the ray toward dir_target.
std::vector<Cut> sample_cuts(const MipInstance& inst, Rng& rng, const Vec& x_ref, int want,
                             bool need_feasible_projection,
                             const std::vector<Vec>* dir_targets,
                             const std::vector<Vec>* must_separate) {
    std::vector<Cut> cuts;
    for (int attempt = 0; attempt < 600 && static_cast<int>(cuts.size()) < want; ++attempt) {
        const auto q = sample_interior(inst, rng, 0.15);
        if (!q) break;
        Vec g(inst.n());
        double n2 = 0.0;
        for (int j = 0; j < inst.n(); ++j) {
            g[j] = rng.next_range(-1.0, 1.0);
            n2 += g[j] * g[j];
        }
        if (n2 < 0.05) continue;
        Cut cut;
        cut.coeffs = g;
        cut.rhs = dot(g, *q);
        cut.origin = CutOrigin::Test;
        if (violation(cut, x_ref) < 0) {
            cut.coeffs = scale(cut.coeffs, -1.0);
            cut.rhs = -cut.rhs;
        }
        if (violation(cut, x_ref) < 0.05) continue;
        if (must_separate) {
            bool all = true;
            for (const Vec& p : *must_separate)
                if (violation(cut, p) < 0.05) all = false;
            if (!all) continue;
        }
        if (need_feasible_projection &&
            !point_in_polytope(inst, orthogonal_projection(cut, x_ref), 1e-9))
            continue;
        if (dir_targets) {
            // Directed measures read as segment lengths only when the target
            // stays unseparated; valid cuts never separate a feasible
            // incumbent, so the suite mirrors that premise.
            bool ok = true;
            for (const Vec& target : *dir_targets) {
                if (violation(cut, target) > -0.05) ok = false;
                const Vec diff = sub(target, x_ref);
                const double len = norm2(diff);
                if (len < 1e-9 ||
                    std::abs(dot(cut.coeffs, diff) / (len * norm2(cut.coeffs))) < 0.02)
                    ok = false;
            }
            if (!ok) continue;
        }
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

void accumulate(SuiteResult& total, const ConsistencyReport& report) {
    total.pairs_checked += report.pairs_checked;
    total.hypothesis_failures += report.hypothesis_failures;
    total.violations += static_cast<int>(report.violations.size());
}

}  // namespace

SuiteResult run_prop1_suite(int instances, std::uint64_t seed, bool analytic) {
    Rng rng(seed);
    SuiteResult total;
    while (total.instances < instances) {
        const int dim = 2 + rng.next_int(3);
        MipInstance inst = random_suite_polytope(rng, dim, 3 + rng.next_int(6));
        for (int j = 0; j < dim; ++j) inst.objective[j] = rng.next_range(-1.0, 1.0);
        if (norm2(inst.objective) < 0.1) continue;
        const LpOutcome lp = solve_lp(inst, {}, std::nullopt, seed + total.instances);
        if (lp.status != LpStatus::Optimal) continue;
        Vec x_ref = lp.point;
        if (analytic) x_ref = optimal_face_center(inst, {}, lp).point;

        const std::vector<Cut> cuts =
            sample_cuts(inst, rng, x_ref, 3 + rng.next_int(3), true, nullptr, nullptr);
        if (cuts.size() < 2) continue;
        ++total.instances;
        accumulate(total, check_consistency(inst, {}, cuts, [&](const Cut& c) {
                       return score_eff(c, x_ref);
                   }));
    }
    return total;
}

SuiteResult run_prop3_suite(int instances, std::uint64_t seed) {
    Rng rng(seed);
    SuiteResult total;
    while (total.instances < instances) {
        const int dim = 2 + rng.next_int(3);
        MipInstance inst = random_suite_polytope(rng, dim, 3 + rng.next_int(6));
        for (int j = 0; j < dim; ++j) inst.objective[j] = rng.next_range(-1.0, 1.0);
        if (norm2(inst.objective) < 0.1) continue;
        const LpOutcome lp = solve_lp(inst, {}, std::nullopt, seed + total.instances);
        if (lp.status != LpStatus::Optimal) continue;
        const Vec& x_ref = lp.point;
        const auto target = sample_interior(inst, rng, 0.2);
        if (!target || norm2(sub(*target, x_ref)) < 0.1) continue;
        const CenterPoint center = analytic_center(inst);
        if (norm2(sub(center.point, x_ref)) < 0.1) continue;

        const std::vector<Vec> targets = {*target, center.point};
        const std::vector<Cut> cuts =
            sample_cuts(inst, rng, x_ref, 3 + rng.next_int(3), false, &targets, nullptr);
        if (cuts.size() < 2) continue;
        ++total.instances;

        Incumbent inc;
        inc.point = *target;
        inc.source = IncumbentSource::Test;
        accumulate(total, check_consistency(inst, {}, cuts, [&](const Cut& c) {
                       return score_dcd(c, x_ref, inc);
                   }));

        accumulate(total, check_consistency(inst, {}, cuts, [&](const Cut& c) {
                       return score_a_dcd(c, x_ref, center);
                   }));
        accumulate(total, check_consistency(inst, {}, cuts, [&](const Cut& c) {
                       const auto v = score_app_a_dcd(c, x_ref, center, {});
                       return *v;  // empty cut list keeps the cache valid
                   }));
    }
    return total;
}

SuiteResult run_prop2_suite(int instances, std::uint64_t seed) {
    Rng rng(seed);
    SuiteResult total;
    while (total.instances < instances) {
        const int dim = 2 + rng.next_int(3);
        MipInstance inst = random_suite_polytope(rng, dim, 3 + rng.next_int(6));
        // objective along a row normal: the optimal face is that facet
        const int row = rng.next_int(inst.m());
        for (int j = 0; j < dim; ++j) inst.objective[j] = -inst.rows(row, j);
        const LpOutcome lp = solve_lp(inst, {}, std::nullopt, seed + total.instances);
        if (lp.status != LpStatus::Optimal) continue;
        OptimaSet optima = collect_optima(inst, {}, 3, seed + total.instances);

        const std::vector<Cut> cuts = sample_cuts(inst, rng, lp.point, 3 + rng.next_int(3),
                                                  true, nullptr, &optima.points);
        if (cuts.size() < 2) continue;
        ++total.instances;
        accumulate(total, check_mineff_consistency(inst, {}, cuts, optima));
    }
    return total;
}

std::string consistency_report_to_json(const ConsistencyReport& report,
                                       const std::vector<Cut>& cut_set) {
    nlohmann::json j;
    j["pairs_scored"] = report.pairs_scored;
    j["pairs_checked"] = report.pairs_checked;
    j["hypothesis_failures"] = report.hypothesis_failures;
    nlohmann::json viols = nlohmann::json::array();
    for (const ConsistencyViolation& v : report.violations) {
        nlohmann::json e;
        e["higher"] = {{"index", v.higher_index},
                       {"coeffs", cut_set[v.higher_index].coeffs},
                       {"rhs", cut_set[v.higher_index].rhs},
                       {"score", v.higher_score}};
        e["lower"] = {{"index", v.lower_index},
                      {"coeffs", cut_set[v.lower_index].coeffs},
                      {"rhs", cut_set[v.lower_index].rhs},
                      {"score", v.lower_score}};
        e["verdict"] = verdict_name(v.dominance.verdict);
        if (v.dominance.only_cut_by_a) e["witness_only_cut_by_higher"] = *v.dominance.only_cut_by_a;
        if (v.dominance.only_cut_by_b) e["witness_only_cut_by_lower"] = *v.dominance.only_cut_by_b;
        viols.push_back(std::move(e));
    }
    j["violations"] = std::move(viols);
    return j.dump(2);
}

}  // namespace cutlab
