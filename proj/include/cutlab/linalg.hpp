#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cutlab {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double norm_inf(const Vec& v);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& v, double t);

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }

    Vec multiply(const Vec& x) const;            // A x
    Vec multiply_transpose(const Vec& y) const;  // A^T y

    const Vec& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec data_;
};

/// LU factorization with partial pivoting of a square matrix.
class LuFactor {
public:
    explicit LuFactor(Matrix a);

    bool singular() const { return singular_; }

    Vec solve(Vec rhs) const;            // A x = rhs
    Vec solve_transpose(Vec rhs) const;  // A^T x = rhs

private:
    Matrix lu_;
    std::vector<int> perm_;
    bool singular_ = false;
};

/// Explicit inverse via Gauss-Jordan with partial pivoting.
/// Returns false if the matrix is numerically singular.
bool invert(const Matrix& a, Matrix& inv, double pivot_tol = 1e-11);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted descending, vectors are the matching columns.
struct SymmetricEigen {
    Vec values;
    Matrix vectors;
};
SymmetricEigen symmetric_eigen(Matrix a, int max_sweeps = 64);

/// Deterministic splitmix64-based generator, portable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64();
    double next_double();                 // uniform [0, 1)
    double next_range(double lo, double hi);
    int next_int(int n);                  // uniform [0, n)
    double pm_one() { return next_double() < 0.5 ? -1.0 : 1.0; }
    std::vector<int> permutation(int n);

private:
    std::uint64_t state_;
};

}  // namespace cutlab
