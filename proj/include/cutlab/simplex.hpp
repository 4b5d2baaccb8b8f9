#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutlab/model.hpp"

namespace cutlab {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimplexOptions {
    std::uint64_t pivot_seed = 1;
    std::optional<Vec> objective_override;  // length n when present
    int refactor_every = 50;
    int stall_limit = 100;  // degenerate pivots before Bland's rule kicks in
    long max_iterations = 0;  // 0 = automatic limit from problem size
    Tolerances tol;
};

/// Dense bounded-variable primal simplex over an instance plus appended cuts.
/// Variables are the structural columns followed by one slack per row
/// (instance rows first, then cuts). EQ rows carry a slack fixed at zero.
class SimplexSolver {
public:
    SimplexSolver(const MipInstance& inst, const std::vector<Cut>& cuts,
                  SimplexOptions opts = {});

    LpOutcome solve();

    // -- post-solve queries used by cut generation ------------------------

    struct TableauRow {
        Vec coeffs;  // over structural + slack variables
        double rhs;  // row of B^-1 b; basic value once nonbasics are substituted
    };
    /// Row of the optimal tableau expressing a basic variable in terms of
    /// the nonbasic ones. Throws SolverError for nonbasic variables.
    TableauRow tableau_row(int var) const;

    int num_structural() const { return nstruct_; }
    int num_rows() const { return nrows_; }
    int total_vars() const { return nstruct_ + nrows_; }

    bool is_basic(int var) const { return basis_pos_[var] >= 0; }
    double variable_value(int var) const;
    double var_lower(int var) const { return lo_[var]; }
    double var_upper(int var) const { return hi_[var]; }
    bool at_upper(int var) const;
    bool is_free_nonbasic(int var) const;

    /// True when the variable takes integer values at every integer-feasible
    /// point: integer structural columns, and slacks of all-integer rows.
    bool var_is_integral(int var) const;

    const std::vector<int>& basic_vars() const { return basic_; }

private:
    enum class VStat : std::uint8_t { Basic, AtLower, AtUpper };

    void build(const MipInstance& inst, const std::vector<Cut>& cuts);
    void column(int var, Vec& out) const;
    Vec apply_basis(const Vec& v) const;
    Vec apply_basis_transpose(const Vec& y) const;
    Vec ftran(const Vec& rhs) const;  // B x = rhs with one refinement pass
    Vec btran(const Vec& c) const;    // B^T y = c with one refinement pass
    double nonbasic_value(int var) const;
    void refactor();
    void recompute_basic_values();
    LpStatus run_phase(int phase);
    void drive_out_artificials();
    double reduced_cost(int var, const Vec& y) const;
    void pivot(int entering, int leaving_row, const Vec& w, double delta, double sigma,
               bool to_upper);

    int nstruct_ = 0;
    int nrows_ = 0;
    int nart_ = 0;  // artificial columns appended after slacks
    std::vector<Vec> cols_;  // structural columns, each of length nrows_
    Vec rhs_;
    Vec cost_;       // phase-2 cost per variable
    Vec lo_, hi_;
    std::vector<int> art_row_;   // artificial -> row
    Vec art_sign_;
    std::vector<bool> row_integral_;  // slack integrality per row
    std::vector<bool> col_integer_;   // structural integrality

    Matrix binv_;
    std::vector<int> basic_;      // size nrows_
    std::vector<int> basis_pos_;  // var -> row position or -1
    std::vector<VStat> vstat_;
    Vec xb_;

    std::vector<int> tie_perm_;
    SimplexOptions opts_;
    long iterations_ = 0;
    int pivots_since_refactor_ = 0;
    bool solved_ = false;
};

/// One-shot solve. pivot_seed controls tie-breaking among entering
/// candidates, so distinct seeds can reach distinct optimal vertices
/// under dual degeneracy.
LpOutcome solve_lp(const MipInstance& inst, const std::vector<Cut>& cuts = {},
                   const std::optional<Vec>& objective_override = std::nullopt,
                   std::uint64_t pivot_seed = 1);

}  // namespace cutlab
