#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/alt_optima.hpp"
#include "cutlab/model.hpp"

namespace cutlab {

enum class DominanceVerdict { ADominatesB, BDominatesA, Equivalent, Incomparable };

std::string verdict_name(DominanceVerdict v);

struct DominanceResult {
    DominanceVerdict verdict = DominanceVerdict::Incomparable;
    // witnesses: a polytope point cut by exactly one of the two cuts
    std::optional<Vec> only_cut_by_a;
    std::optional<Vec> only_cut_by_b;
    double max_b_where_a_holds = 0.0;  // max violation(B) over {A satisfied}
    double max_a_where_b_holds = 0.0;
};

/// LP-based dominance between two cuts over the polytope formed by the
/// instance rows, the cuts already in the LP, and the variable bounds.
///
/// Reading adopted for the dominance definition: A dominates B iff every
/// polytope point cut by B is cut by A, and A cuts some point B does not.
/// "Cut by" means violation > feas_tol; the strict/non-strict boundary is
/// tolerance-resolved.
DominanceResult check_dominance(const MipInstance& inst, const std::vector<Cut>& cuts_in_lp,
                                const Cut& cut_a, const Cut& cut_b, double feas_tol = 1e-6);

struct ConsistencyViolation {
    int higher_index = 0;  // cut with the strictly larger score
    int lower_index = 0;
    double higher_score = 0.0;
    double lower_score = 0.0;
    DominanceResult dominance;
};

struct ConsistencyReport {
    int pairs_scored = 0;     // ordered pairs with a strict score gap
    int pairs_checked = 0;    // pairs passing any hypothesis gate
    int hypothesis_failures = 0;
    std::vector<ConsistencyViolation> violations;
};

/// For every ordered pair with a strict score margin (> 1e-7), asks the
/// dominance oracle whether the higher-scored cut is dominated by the
/// lower-scored one; such pairs are consistency violations.
ConsistencyReport check_consistency(const MipInstance& inst,
                                    const std::vector<Cut>& cuts_in_lp,
                                    const std::vector<Cut>& cut_set,
                                    const std::function<double(const Cut&)>& measure_fn);

/// Prop. 2 check for mineff: the guarantee only covers pairs where the
/// lower-scored cut has an active separated solution whose projection onto
/// its hyperplane is LP-feasible; other pairs are gate failures, not checks.
ConsistencyReport check_mineff_consistency(const MipInstance& inst,
                                           const std::vector<Cut>& cuts_in_lp,
                                           const std::vector<Cut>& cut_set,
                                           const OptimaSet& optima);

struct Counterexample {
    MipInstance instance;
    Cut dashed;  // the dominating cut
    Cut dotted;  // the dominated cut that scores higher
    Vec x_lp;
    Vec objective;
};

/// The infeasible-projection geometry: the dashed cut dominates the dotted
/// one over a triangle, yet plain efficacy ranks the dotted cut higher
/// because the projection onto the dashed cut leaves the polytope.
Counterexample build_fig2b_counterexample();

/// Two cuts with LP-feasible orthogonal projections of x_lp where the
/// dominated cut still gets the better exp-improv score.
Counterexample build_fig3_counterexample();

/// Random polytope for the consistency suites: a box [0,10]^dim intersected
/// with extra half-spaces through sampled points, oriented so a fixed anchor
/// stays strictly interior.
MipInstance random_suite_polytope(Rng& rng, int dim, int extra_rows);

struct SuiteResult {
    int instances = 0;
    int pairs_checked = 0;
    int hypothesis_failures = 0;
    int violations = 0;
};

/// Prop. 1 suite: eff (and a-eff via the face center of a degenerate-free
/// vertex) with every sampled cut separating the reference vertex and
/// carrying an LP-feasible projection.
SuiteResult run_prop1_suite(int instances, std::uint64_t seed, bool analytic = false);

/// Prop. 2 suite for mineff under its hypothesis gate.
SuiteResult run_prop2_suite(int instances, std::uint64_t seed);

/// Prop. 3 suite: dcd / a-dcd / app-a-dcd with all cuts separating the
/// reference vertex and an interior direction target.
SuiteResult run_prop3_suite(int instances, std::uint64_t seed);

std::string consistency_report_to_json(const ConsistencyReport& report,
                                       const std::vector<Cut>& cut_set);

}  // namespace cutlab
