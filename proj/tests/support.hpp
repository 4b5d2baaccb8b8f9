// Small instance builders shared by the test suites.
#pragma once

#include <string>
#include <vector>

#include "cutlab/model.hpp"

namespace cutlab::testsup {

inline MipInstance make_instance(std::string name, Vec objective,
                                 std::vector<Vec> rows, Vec rhs, Vec lower, Vec upper,
                                 std::vector<int> integers = {},
                                 std::vector<RowKind> kinds = {}) {
    MipInstance inst;
    inst.name = std::move(name);
    inst.objective = std::move(objective);
    const int n = static_cast<int>(inst.objective.size());
    const int m = static_cast<int>(rows.size());
    inst.rows = Matrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) inst.rows(i, j) = rows[i][j];
    inst.rhs = std::move(rhs);
    inst.row_kind = kinds.empty() ? std::vector<RowKind>(m, RowKind::LE) : std::move(kinds);
    inst.lower = std::move(lower);
    inst.upper = std::move(upper);
    inst.integer_set = std::move(integers);
    inst.validate();
    return inst;
}

/// min objective over the box prod [lower_i, upper_i], no rows.
inline MipInstance make_box(Vec objective, Vec lower, Vec upper,
                            std::vector<int> integers = {}) {
    const int n = static_cast<int>(objective.size());
    MipInstance inst;
    inst.name = "box";
    inst.objective = std::move(objective);
    inst.rows = Matrix(0, n);
    inst.lower = std::move(lower);
    inst.upper = std::move(upper);
    inst.integer_set = std::move(integers);
    inst.validate();
    return inst;
}

inline Cut make_cut(Vec coeffs, double rhs, CutOrigin origin = CutOrigin::Test) {
    Cut c;
    c.coeffs = std::move(coeffs);
    c.rhs = rhs;
    c.origin = origin;
    return c;
}

}  // namespace cutlab::testsup
