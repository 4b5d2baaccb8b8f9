#pragma once

#include <optional>

#include "cutlab/cutpipe.hpp"
#include "cutlab/model.hpp"

namespace cutlab {

enum class BnbStatus { Optimal, TimeLimit, Infeasible };

struct NodeStats {
    long nodes_processed = 0;
    long lp_iterations_total = 0;  // separation and node LPs combined
    double solve_time = 0.0;       // wall seconds; excluded from records
    double primal_bound = kInf;
    double dual_bound = -kInf;
    BnbStatus status = BnbStatus::Optimal;
    double gap_after_root = kInf;  // primal - dual after separation, +inf without incumbent
};

struct BnbLimits {
    double time_limit = 0.0;  // seconds; 0 disables
    long node_limit = 0;      // 0 disables; status TimeLimit when hit
};

struct BnbResult {
    NodeStats stats;
    FeatureVector features;            // round-0 features from the separation loop
    std::vector<RoundReport> root_reports;
    std::vector<Cut> root_cuts;
    int cuts_added = 0;
    std::optional<Incumbent> incumbent;
};

/// Root separation per cfg, then best-bound branch-and-bound with
/// most-fractional branching. Global cuts stay in every node LP; no cuts are
/// added after the root. Deterministic for fixed seed and config as long as
/// no wall-clock limit triggers.
BnbResult branch_and_cut(const MipInstance& inst, const SeparationConfig& cfg,
                         const BnbLimits& limits = {},
                         const std::optional<Incumbent>& provided_incumbent = std::nullopt);

struct BruteForceResult {
    BnbStatus status = BnbStatus::Optimal;  // Optimal or Infeasible
    double value = kInf;
    Vec point;
};

/// Exhaustive enumeration over the integer assignments (continuous variables
/// resolved by an LP per assignment). Guarded to <= 22 bounded integer
/// variables with <= 4 values each; throws SolverError beyond the budget.
BruteForceResult brute_force_optimum(const MipInstance& inst);

}  // namespace cutlab
