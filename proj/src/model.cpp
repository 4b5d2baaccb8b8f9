#include "cutlab/model.hpp"

#include <algorithm>
#include <cmath>

namespace cutlab {

bool MipInstance::is_integer(int j) const {
    return std::binary_search(integer_set.begin(), integer_set.end(), j);
}

void MipInstance::validate() const {
    const std::size_t nn = objective.size();
    const std::size_t mm = rhs.size();
    if (rows.rows() != mm || (mm > 0 && rows.cols() != nn))
        throw ModelError("instance '" + name + "': row matrix dimensions inconsistent");
    if (row_kind.size() != mm)
        throw ModelError("instance '" + name + "': row_kind length != m");
    if (lower.size() != nn || upper.size() != nn)
        throw ModelError("instance '" + name + "': bound vectors must have length n");
    for (double c : objective)
        if (std::isnan(c)) throw ModelError("instance '" + name + "': NaN in objective");
    for (double v : rows.data())
        if (!std::isfinite(v)) throw ModelError("instance '" + name + "': non-finite row entry");
    for (double b : rhs)
        if (std::isnan(b)) throw ModelError("instance '" + name + "': NaN in rhs");
    for (std::size_t j = 0; j < nn; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]))
            throw ModelError("instance '" + name + "': NaN bound");
        if (lower[j] > upper[j])
            throw ModelError("instance '" + name + "': crossed bounds at column " +
                             std::to_string(j));
    }
    for (std::size_t k = 0; k < integer_set.size(); ++k) {
        const int j = integer_set[k];
        if (j < 0 || j >= static_cast<int>(nn))
            throw ModelError("instance '" + name + "': integer index out of range");
        if (k > 0 && integer_set[k - 1] >= j)
            throw ModelError("instance '" + name + "': integer_set must be sorted and unique");
    }
}

double violation(const Cut& cut, const Vec& x) {
    if (cut.coeffs.size() != x.size())
        throw ModelError("violation: dimension mismatch between cut and point");
    return dot(cut.coeffs, x) - cut.rhs;
}

double row_activity(const MipInstance& inst, int row, const Vec& x) {
    const double* r = inst.rows.row_ptr(row);
    double s = 0.0;
    for (int j = 0; j < inst.n(); ++j) s += r[j] * x[j];
    return s;
}

bool is_mip_feasible(const MipInstance& inst, const Vec& x, double feas_tol, double int_tol) {
    if (static_cast<int>(x.size()) != inst.n()) return false;
    for (int j = 0; j < inst.n(); ++j) {
        if (x[j] < inst.lower[j] - feas_tol) return false;
        if (x[j] > inst.upper[j] + feas_tol) return false;
    }
    for (int i = 0; i < inst.m(); ++i) {
        const double act = row_activity(inst, i, x);
        if (inst.row_kind[i] == RowKind::LE) {
            if (act > inst.rhs[i] + feas_tol) return false;
        } else {
            if (std::abs(act - inst.rhs[i]) > feas_tol) return false;
        }
    }
    for (int j : inst.integer_set)
        if (std::abs(x[j] - std::round(x[j])) > int_tol) return false;
    return true;
}

}  // namespace cutlab
