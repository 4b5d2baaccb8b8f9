#include "cutlab/features.hpp"

#include <cmath>
#include <sstream>

namespace cutlab {

FeatureVector FeatureVector::from_vector(const Vec& v) {
    if (v.size() != 5) throw ModelError("feature vector must have 5 entries");
    FeatureVector f;
    f.dual_degeneracy = v[0];
    f.primal_degeneracy = v[1];
    f.fractionality = v[2];
    f.thinness = v[3];
    f.density = v[4];
    return f;
}

FeatureVector extract_features(const MipInstance& inst, const LpOutcome& lp,
                               const Tolerances& tol) {
    if (lp.status != LpStatus::Optimal)
        throw ModelError("extract_features requires an Optimal LP outcome");
    const int n = inst.n();
    if (static_cast<int>(lp.basis.size()) != n ||
        static_cast<int>(lp.reduced_costs.size()) != n)
        throw ModelError("extract_features: LP outcome is missing basis information");

    FeatureVector f;

    int nonbasic = 0, zero_rc = 0, basic = 0, at_bound = 0;
    for (int j = 0; j < n; ++j) {
        if (lp.basis[j] == BasisStatus::BasicAtValue) {
            ++basic;
            const double x = lp.point[j];
            if ((std::isfinite(inst.lower[j]) && std::abs(x - inst.lower[j]) <= tol.feas) ||
                (std::isfinite(inst.upper[j]) && std::abs(x - inst.upper[j]) <= tol.feas))
                ++at_bound;
        } else {
            ++nonbasic;
            if (std::abs(lp.reduced_costs[j]) <= tol.zero) ++zero_rc;
        }
    }
    if (nonbasic > 0) f.dual_degeneracy = static_cast<double>(zero_rc) / nonbasic;
    if (basic > 0) f.primal_degeneracy = static_cast<double>(at_bound) / basic;

    if (!inst.integer_set.empty()) {
        int fractional = 0;
        for (int j : inst.integer_set) {
            const double frac = lp.point[j] - std::floor(lp.point[j]);
            if (frac > tol.integrality && frac < 1.0 - tol.integrality) ++fractional;
        }
        f.fractionality = static_cast<double>(fractional) / inst.integer_set.size();
    }

    const int m = inst.m();
    if (m > 0) {
        int eq = 0;
        for (RowKind k : inst.row_kind)
            if (k == RowKind::EQ) ++eq;
        f.thinness = static_cast<double>(eq) / m;

        long nnz = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(inst.rows(i, j)) > tol.zero) ++nnz;
        f.density = static_cast<double>(nnz) / (static_cast<double>(m) * n);
    }
    return f;
}

std::string feature_csv_row(const std::string& instance, std::uint64_t seed,
                            const FeatureVector& f) {
    std::ostringstream os;
    os.precision(17);
    os << instance << ',' << seed << ',' << f.dual_degeneracy << ',' << f.primal_degeneracy
       << ',' << f.fractionality << ',' << f.thinness << ',' << f.density;
    return os.str();
}

}  // namespace cutlab
