#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutlab/features.hpp"
#include "cutlab/measures.hpp"
#include "cutlab/model.hpp"
#include "cutlab/simplex.hpp"

namespace cutlab {

/// A cut added to the relaxation made it infeasible; cuts are required to be
/// valid, so this is always a defect, never a recoverable condition.
class CutMadeInfeasibleError : public SolverError {
public:
    using SolverError::SolverError;
};

struct SeparationConfig {
    int rounds = 50;
    int max_cuts_per_round = 10;
    MeasureKind measure = MeasureKind::Eff;
    std::optional<double> density_threshold;  // in (0, 1]
    double parallelism_threshold = 0.95;
    int k_optima = 3;
    std::uint64_t seed = 1;
    Tolerances tol;

    void validate() const;
};

struct RoundReport {
    int round = 0;
    int candidates_generated = 0;
    int candidates_after_filter = 0;
    int cuts_added = 0;
    double lp_value_after = 0.0;
    bool center_recomputed = false;
    bool measure_fallback = false;  // dcd without an incumbent scored as eff
};

/// Gomory cuts from the optimal tableau, one per basic integer variable with
/// a fractional value, expressed in structural variables with slacks
/// substituted out. Continuous and integer nonbasic contributions use the
/// mixed-integer coefficient rules, so every emitted cut is valid for all
/// integer-feasible points and violated by lp.point.
std::vector<Cut> generate_gomory(const MipInstance& inst, const std::vector<Cut>& cuts,
                                 const LpOutcome& lp, const SimplexSolver& solver,
                                 const Tolerances& tol = {});

/// Keeps exactly the cuts with relative density <= threshold, in order.
std::vector<Cut> filter_density(const std::vector<Cut>& cands, double threshold, int n,
                                double zero_tol = 1e-9);

/// Greedy selection: repeatedly take the highest-scoring candidate (ties by
/// lower candidate index), then drop remaining candidates whose coefficient
/// cosine with it exceeds the parallelism threshold. Stops at the per-round
/// budget or when the best score is <= 0.
std::vector<Cut> select_cuts(const std::vector<Cut>& cands, const ScoringContext& ctx,
                             const SeparationConfig& cfg);

/// Score one cut under a measure using an assembled context. Throws
/// MeasureError naming the missing context component. Cuts parallel to a
/// directed measure's ray get the formula value at the zero-tolerance
/// denominator floor (the finite stand-in for the +inf limit).
double score_cut(const Cut& cut, MeasureKind measure, const ScoringContext& ctx,
                 const Tolerances& tol = {});

struct SeparationResult {
    std::vector<Cut> cuts;
    std::vector<RoundReport> reports;
    FeatureVector features;  // extracted from the round-0 LP
    LpOutcome final_lp;      // relaxation with every added cut
    long total_lp_iterations = 0;  // relaxation solves only, not measure-internal LPs
};

/// The root cut loop: solve, score, generate, filter, select, append; stops
/// early once the LP is integral or a round selects nothing. Centers are
/// recomputed every round for a-eff/a-dcd; app-a-dcd keeps one cached center
/// per loop and recomputes only when some added cut separates it.
SeparationResult run_separation(const MipInstance& inst, const SeparationConfig& cfg,
                                const std::optional<Incumbent>& incumbent = std::nullopt);

}  // namespace cutlab
