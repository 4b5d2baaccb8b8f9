#include "cutlab/alt_optima.hpp"

#include <cmath>

#include "cutlab/simplex.hpp"

namespace cutlab {

OptimaSet collect_optima(const MipInstance& inst, const std::vector<Cut>& cuts, int k,
                         std::uint64_t seed) {
    if (k < 1) throw SolverError("collect_optima: k must be >= 1");
    const LpOutcome base = solve_lp(inst, cuts, std::nullopt, seed);
    if (base.status != LpStatus::Optimal)
        throw SolverError("collect_optima: LP relaxation is not Optimal");

    OptimaSet out;
    out.k_requested = k;
    out.objective_value = base.value;
    out.points.push_back(base.point);

    if (k == 1) return out;

    // Slice instance: original rows plus c.x = z* as an equality.
    MipInstance slice = inst;
    const int n = inst.n();
    Matrix grown(inst.m() + 1, n);
    for (int i = 0; i < inst.m(); ++i)
        for (int j = 0; j < n; ++j) grown(i, j) = inst.rows(i, j);
    for (int j = 0; j < n; ++j) grown(inst.m(), j) = inst.objective[j];
    slice.rows = std::move(grown);
    slice.rhs.push_back(base.value);
    slice.row_kind.push_back(RowKind::EQ);

    Rng rng(seed * 0x9e3779b9ULL + 17);
    auto is_new = [&](const Vec& p) {
        for (const Vec& q : out.points)
            if (norm_inf(sub(p, q)) <= 1e-7) return false;
        return true;
    };

    for (int attempt = 0; attempt < 2 * k; ++attempt) {
        if (static_cast<int>(out.points.size()) >= k) break;
        Vec obj(n);
        for (int j = 0; j < n; ++j) obj[j] = rng.pm_one();
        LpOutcome r;
        try {
            r = solve_lp(slice, cuts, obj, seed + attempt + 1);
        } catch (const SolverError&) {
            continue;  // degenerate slice resolves are best effort
        }
        if (r.status != LpStatus::Optimal) continue;  // unbounded face direction
        if (is_new(r.point)) out.points.push_back(r.point);
    }
    return out;
}

}  // namespace cutlab
