#pragma once

#include <cstdint>
#include <vector>

#include "cutlab/model.hpp"

namespace cutlab {

/// Distinct optimal vertices X^LP of the current LP relaxation.
struct OptimaSet {
    std::vector<Vec> points;
    int k_requested = 0;
    double objective_value = 0.0;
};

/// Solves the LP once, then re-solves on the slice c.x = z* under seeded
/// random +/-1 objectives (at most 2k attempts), keeping vertices that are
/// pairwise distinct beyond 1e-7 in the infinity norm.
OptimaSet collect_optima(const MipInstance& inst, const std::vector<Cut>& cuts, int k,
                         std::uint64_t seed);

}  // namespace cutlab
