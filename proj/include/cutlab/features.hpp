#pragma once

#include <string>

#include "cutlab/model.hpp"

namespace cutlab {

/// The five root-node features feeding the regression model, each in [0,1].
/// Degenerate denominators (no integer variables, no rows, no nonbasic
/// variables) yield 0: a missing phenomenon counts as none of it.
struct FeatureVector {
    double dual_degeneracy = 0.0;   // nonbasic structurals with zero reduced cost
    double primal_degeneracy = 0.0; // basic structurals sitting at a bound
    double fractionality = 0.0;     // integer variables with fractional LP value
    double thinness = 0.0;          // fraction of equality rows
    double density = 0.0;           // nonzeros of A over m*n

    Vec as_vector() const {
        return {dual_degeneracy, primal_degeneracy, fractionality, thinness, density};
    }
    static FeatureVector from_vector(const Vec& v);
};

/// Extracted from the round-0 LP basis, before any cut is added. Only
/// structural variables are counted for the degeneracy features; slacks
/// would double-count row duals.
FeatureVector extract_features(const MipInstance& inst, const LpOutcome& lp,
                               const Tolerances& tol = {});

/// CSV row "instance,seed,dual_deg,primal_deg,frac,thin,density".
std::string feature_csv_row(const std::string& instance, std::uint64_t seed,
                            const FeatureVector& f);
inline constexpr const char* kFeatureCsvHeader =
    "instance,seed,dual_deg,primal_deg,frac,thin,density";

}  // namespace cutlab
