#pragma once

#include <vector>

#include "cutlab/model.hpp"
#include "cutlab/simplex.hpp"

namespace cutlab {

class BarrierError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The (delta-relaxed) region has no strictly interior point.
class RegionEmptyError : public BarrierError {
public:
    using BarrierError::BarrierError;
};

/// Damped Newton failed to reach the decrement target within max_newton.
class NoConvergenceError : public BarrierError {
public:
    using BarrierError::BarrierError;
};

struct BarrierOptions {
    int max_newton = 200;
    double center_tol = 1e-8;  // Newton decrement target
    Tolerances tol;
};

/// Analytic center x^C of the region {Ax <= b (rows + cuts), l <= x <= u},
/// dropping the objective. EQ rows are imposed as affine equalities via a
/// projected Newton step, never as barrier terms. All log-barrier arguments
/// are relaxed by delta = 1e-7 (1 + max |b_i|) during the homotopy; the
/// final center is re-polished without relaxation whenever the region has a
/// strictly interior point.
CenterPoint analytic_center(const MipInstance& inst, const std::vector<Cut>& cuts = {},
                            const BarrierOptions& opts = {});

/// Analytic center x^F of the optimal face {x : c.x = z*} of the LP. Rows
/// tight across the entire face (max slack over the slice <= feas_tol,
/// established by one auxiliary LP per candidate) are excluded from the
/// barrier and imposed as equalities.
CenterPoint optimal_face_center(const MipInstance& inst, const std::vector<Cut>& cuts,
                                const LpOutcome& lp, const BarrierOptions& opts = {});

}  // namespace cutlab
