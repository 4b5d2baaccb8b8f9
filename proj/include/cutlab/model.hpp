#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutlab/linalg.hpp"

namespace cutlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Centralized numerical tolerances. Defaults match common MIP-solver values.
struct Tolerances {
    double feas = 1e-6;         // primal feasibility
    double integrality = 1e-6;  // integer rounding
    double zero = 1e-9;         // treat-as-zero threshold
    double opt = 1e-7;          // reduced-cost sign tests
    double center = 1e-8;       // Newton decrement target for analytic centers
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RowKind { LE, EQ };

/// A mixed-integer program: min c.x s.t. Ax <= b (rows tagged LE/EQ),
/// l <= x <= u, x_j integer for j in integer_set. Dense storage.
struct MipInstance {
    std::string name;
    Vec objective;                  // c, length n
    Matrix rows;                    // A, m x n
    Vec rhs;                        // b, length m
    std::vector<RowKind> row_kind;  // length m
    Vec lower;                      // entries may be -inf
    Vec upper;                      // entries may be +inf
    std::vector<int> integer_set;   // 0-based column indices, sorted, unique

    int n() const { return static_cast<int>(objective.size()); }
    int m() const { return static_cast<int>(rhs.size()); }

    bool is_integer(int j) const;

    /// Throws ModelError on dimension mismatch, non-finite matrix data,
    /// crossed bounds, or out-of-range integer indices.
    void validate() const;
};

enum class CutOrigin { Gomory, User, Test };

/// A cutting plane alpha.x <= beta.
struct Cut {
    Vec coeffs;        // alpha, length n; not all zero
    double rhs = 0.0;  // beta
    CutOrigin origin = CutOrigin::User;
    int round = 0;  // separation round that produced the cut
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class BasisStatus { BasicAtValue, NonbasicAtLower, NonbasicAtUpper };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Vec point;                           // structural variables, length n
    std::vector<BasisStatus> basis;      // per structural variable
    std::vector<BasisStatus> row_basis;  // slack status, instance rows then cuts
    Vec reduced_costs;                   // per structural variable
    long iterations = 0;
};

enum class CenterKind { PolytopeCenter, OptimalFaceCenter };

struct CenterPoint {
    Vec point;
    CenterKind kind = CenterKind::PolytopeCenter;
    int newton_iters = 0;
    double residual = 0.0;          // final Newton decrement
    double relaxation_slack = 0.0;  // delta used to relax tight barriers
    Vec decrement_history;          // per accepted Newton step at the final stage
};

enum class IncumbentSource { Provided, NodeSolution, Test };

struct Incumbent {
    Vec point;
    double value = 0.0;
    IncumbentSource source = IncumbentSource::Provided;
};

/// alpha.x - beta; positive iff x is separated by the cut.
double violation(const Cut& cut, const Vec& x);

/// Bounds, rows and integrality on the integer set within tolerances.
bool is_mip_feasible(const MipInstance& inst, const Vec& x, double feas_tol = 1e-6,
                     double int_tol = 1e-6);

/// Row activity A_i . x for a single row.
double row_activity(const MipInstance& inst, int row, const Vec& x);

}  // namespace cutlab
