// Test-only oracles. Each one evaluates a quantity by an independent route
// (bisection, enumeration, golden-section search) so the implementation
// formulas are checked against geometry rather than against themselves.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cutlab/model.hpp"
#include "cutlab/simplex.hpp"

namespace cutlab::oracle {

/// alpha.x - beta evaluated with Kahan summation, term by term.
inline double linear_form(const Vec& alpha, double beta, const Vec& x) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double term = alpha[i] * x[i] - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum - beta;
}

/// Euclidean distance from x to {y : alpha.y = beta} found by bisection
/// along the normal direction, never via the closed-form ratio.
inline double hyperplane_distance(const Vec& alpha, double beta, const Vec& x) {
    const double na = std::sqrt(linear_form(alpha, 0.0, alpha));
    Vec dir(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) dir[i] = alpha[i] / na;
    const double v0 = linear_form(alpha, beta, x);
    const double sign = v0 >= 0 ? -1.0 : 1.0;  // walk toward the plane

    auto value_at = [&](double t) {
        Vec p = x;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += sign * t * dir[i];
        return linear_form(alpha, beta, p);
    };
    double hi = 1.0;
    while (value_at(hi) * v0 > 0) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("oracle: no hyperplane crossing found");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (value_at(mid) * v0 > 0)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return v0 >= 0 ? t : -t;  // signed: positive iff x is separated
}

/// Distance from x to the cut hyperplane along the ray toward target,
/// again by bisection on the parametric crossing.
inline std::optional<double> directed_distance(const Vec& alpha, double beta, const Vec& x,
                                               const Vec& target) {
    Vec diff(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) diff[i] = target[i] - x[i];
    const double len = std::sqrt(linear_form(diff, 0.0, diff));
    if (len <= 1e-12) return std::nullopt;

    auto value_at = [&](double t) {
        Vec p = x;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * diff[i] / len;
        return linear_form(alpha, beta, p);
    };
    const double v0 = value_at(0.0);
    double probe = 1.0;
    bool crossed = false;
    for (int k = 0; k < 80; ++k) {
        if (value_at(probe) * v0 <= 0 || value_at(-probe) * v0 <= 0) {
            crossed = true;
            break;
        }
        probe *= 2.0;
    }
    if (!crossed) return std::nullopt;  // parallel
    const double dir = value_at(probe) * v0 <= 0 ? 1.0 : -1.0;
    double lo = 0.0, hi = dir * probe;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (value_at(mid) * v0 > 0)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    // dcd convention: positive for separated x regardless of ray orientation
    return v0 >= 0 ? std::abs(t) : -std::abs(t);
}

/// All integer assignments over the instance's integer variables, each
/// completed by an LP over the continuous ones; yields feasible points.
/// Ranges are capped to keep enumeration desk-sized.
inline std::vector<Vec> enumerate_integer_points(const MipInstance& inst,
                                                 long budget = 4'000'000) {
    std::vector<int> ints = inst.integer_set;
    std::vector<long> widths;
    long combos = 1;
    for (int j : ints) {
        const double lo = std::ceil(inst.lower[j] - 1e-9);
        const double hi = std::floor(inst.upper[j] + 1e-9);
        const long w = static_cast<long>(hi - lo) + 1;
        if (w <= 0) return {};
        widths.push_back(w);
        combos *= w;
        if (combos > budget) throw std::runtime_error("oracle: enumeration budget exceeded");
    }
    const bool pure = static_cast<int>(ints.size()) == inst.n();

    std::vector<Vec> result;
    std::vector<long> idx(ints.size(), 0);
    while (true) {
        Vec x(inst.n(), 0.0);
        for (std::size_t k = 0; k < ints.size(); ++k)
            x[ints[k]] = std::ceil(inst.lower[ints[k]] - 1e-9) + static_cast<double>(idx[k]);
        if (pure) {
            if (is_mip_feasible(inst, x)) result.push_back(x);
        } else {
            MipInstance fixed = inst;
            for (int j : ints) {
                fixed.lower[j] = x[j];
                fixed.upper[j] = x[j];
            }
            const LpOutcome lp = solve_lp(fixed);
            if (lp.status == LpStatus::Optimal && is_mip_feasible(inst, lp.point))
                result.push_back(lp.point);
        }
        std::size_t k = 0;
        for (; k < ints.size(); ++k) {
            if (++idx[k] < widths[k]) break;
            idx[k] = 0;
        }
        if (k == ints.size()) break;
    }
    return result;
}

/// Exact 1-D minimizer of a unimodal function by golden-section search.
inline double golden_section(const std::function<double(double)>& f, double lo, double hi,
                             int iters = 200) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int i = 0; i < iters; ++i) {
        if (f(c) < f(d))
            b = d;
        else
            a = c;
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    return 0.5 * (a + b);
}

}  // namespace cutlab::oracle
