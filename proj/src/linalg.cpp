#include "cutlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace cutlab {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec scale(const Vec& v, double t) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = t * v[i];
    return r;
}

Vec Matrix::multiply(const Vec& x) const {
    Vec y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vec Matrix::multiply_transpose(const Vec& y) const {
    Vec x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = row_ptr(i);
        const double yi = y[i];
        if (yi == 0.0) continue;
        for (std::size_t j = 0; j < cols_; ++j) x[j] += yi * r[j];
    }
    return x;
}

LuFactor::LuFactor(Matrix a) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-13) {
            singular_ = true;
            continue;
        }
        if (piv != k) {
            std::swap(perm_[k], perm_[piv]);
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        }
        const double pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / pivot;
            lu_(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vec LuFactor::solve(Vec rhs) const {
    const std::size_t n = lu_.rows();
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(i, j) * y[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= lu_(ii, j) * y[j];
        y[ii] /= lu_(ii, ii);
    }
    return y;
}

Vec LuFactor::solve_transpose(Vec rhs) const {
    const std::size_t n = lu_.rows();
    // Solve U^T z = rhs, then L^T w = z, then undo the row permutation.
    Vec z = std::move(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) z[i] -= lu_(j, i) * z[j];
        z[i] /= lu_(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;)
        for (std::size_t j = ii + 1; j < n; ++j) z[ii] -= lu_(j, ii) * z[j];
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
    return x;
}

bool invert(const Matrix& a, Matrix& inv, double pivot_tol) {
    const std::size_t n = a.rows();
    Matrix work = a;
    inv = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1.0;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(work(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(work(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < pivot_tol) return false;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(k, j), work(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        }
        const double d = 1.0 / work(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            work(k, j) *= d;
            inv(k, j) *= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = work(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(i, j) -= f * work(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return true;
}

SymmetricEigen symmetric_eigen(Matrix a, int max_sweeps) {
    const std::size_t n = a.rows();
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-15) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Vec diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return diag[i] > diag[j]; });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

int Rng::next_int(int n) {
    if (n <= 0) throw std::invalid_argument("Rng::next_int: n must be positive");
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

std::vector<int> Rng::permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[next_int(i + 1)]);
    return p;
}

}  // namespace cutlab
