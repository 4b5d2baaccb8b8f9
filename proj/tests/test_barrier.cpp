#include <cmath>

#include "doctest.h"

#include "cutlab/barrier.hpp"
#include "cutlab/simplex.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cutlab;
using testsup::make_box;
using testsup::make_cut;
using testsup::make_instance;

namespace {

MipInstance random_polytope(Rng& rng, int dim, int extra_rows) {
    Vec anchor(dim);
    for (int j = 0; j < dim; ++j) anchor[j] = rng.next_range(3, 7);
    std::vector<Vec> rows;
    Vec rhs;
    for (int i = 0; i < extra_rows; ++i) {
        Vec g(dim);
        double n2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            g[j] = rng.next_range(-1, 1);
            n2 += g[j] * g[j];
        }
        if (n2 < 1e-4) {
            --i;
            continue;
        }
        Vec through(dim);
        for (int j = 0; j < dim; ++j) through[j] = rng.next_range(1, 9);
        double b = dot(g, through);
        if (dot(g, anchor) > b) {
            for (double& v : g) v = -v;
            b = -b;
        }
        if (b - dot(g, anchor) < 0.3) b = dot(g, anchor) + 0.3;  // keep real interior
        rows.push_back(g);
        rhs.push_back(b);
    }
    Vec c(dim, 0.0);
    return testsup::make_instance("poly", c, rows, rhs, Vec(dim, 0.0), Vec(dim, 10.0));
}

}  // namespace

TEST_CASE("analytic center of symmetric boxes") {
    const CenterPoint c1 = analytic_center(make_box({0, 0}, {0, 0}, {1, 1}));
    CHECK(c1.point[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c1.point[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c1.kind == CenterKind::PolytopeCenter);

    const CenterPoint c2 = analytic_center(make_box({0, 0}, {0, 0}, {1, 3}));
    CHECK(c2.point[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(c2.point[1] == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("analytic center of the standard simplex") {
    const MipInstance simplex =
        make_instance("simplex", {0, 0}, {{1, 1}}, {1}, {0, 0}, {kInf, kInf});
    const CenterPoint c = analytic_center(simplex);
    CHECK(c.point[0] == doctest::Approx(1.0 / 3).epsilon(1e-6));
    CHECK(c.point[1] == doctest::Approx(1.0 / 3).epsilon(1e-6));
    CHECK(c.residual <= 1e-8);
}

TEST_CASE("analytic center with an equality row") {
    const MipInstance inst =
        make_instance("eq", {0, 0}, {{1, 1}}, {1}, {0, 0}, {1, 1}, {}, {RowKind::EQ});
    const CenterPoint c = analytic_center(inst);
    CHECK(c.point[0] + c.point[1] == doctest::Approx(1).epsilon(1e-9));
    CHECK(c.point[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("analytic center of an empty region raises RegionEmpty") {
    const MipInstance inst =
        make_instance("empty", {0, 0}, {{1, 1}, {-1, -1}}, {1, -3}, {0, 0}, {5, 5});
    CHECK_THROWS_AS(analytic_center(inst), RegionEmptyError);
}

TEST_CASE("analytic center is invariant under row scaling") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        MipInstance inst = random_polytope(rng, 2 + rng.next_int(2), 3);
        const CenterPoint base = analytic_center(inst);
        MipInstance scaled = inst;
        const int row = rng.next_int(inst.m());
        const double t = rng.next_range(0.2, 8.0);
        for (int j = 0; j < inst.n(); ++j) scaled.rows(row, j) *= t;
        scaled.rhs[row] *= t;
        const CenterPoint other = analytic_center(scaled);
        CHECK(norm_inf(sub(base.point, other.point)) < 1e-6);
    }
}

TEST_CASE("newton decrement tail is non-increasing") {
    Rng rng(33);
    const MipInstance inst = random_polytope(rng, 3, 5);
    const CenterPoint c = analytic_center(inst);
    const auto& h = c.decrement_history;
    const std::size_t tail = h.size() > 5 ? h.size() - 5 : 1;
    for (std::size_t i = tail; i < h.size(); ++i) CHECK(h[i] <= h[i - 1] * (1 + 1e-9));
}

TEST_CASE("centers are strictly interior and LP-feasible") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        MipInstance inst = random_polytope(rng, 2, 4);
        const CenterPoint c = analytic_center(inst);
        for (int i = 0; i < inst.m(); ++i)
            CHECK(row_activity(inst, i, c.point) < inst.rhs[i]);
        for (int j = 0; j < inst.n(); ++j) {
            CHECK(c.point[j] > inst.lower[j]);
            CHECK(c.point[j] < inst.upper[j]);
        }
    }
}

TEST_CASE("face center on a degenerate edge sits at the midpoint") {
    // min x1 over [0,1]^2: face {0} x [0,1]
    const MipInstance inst = make_box({1, 0}, {0, 0}, {1, 1});
    const LpOutcome lp = solve_lp(inst);
    REQUIRE(lp.status == LpStatus::Optimal);
    const CenterPoint f = optimal_face_center(inst, {}, lp);
    CHECK(f.kind == CenterKind::OptimalFaceCenter);
    CHECK(f.point[0] == doctest::Approx(0).epsilon(1e-7));
    CHECK(f.point[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("face center of a unique optimum equals the vertex") {
    const MipInstance simplex =
        make_instance("simplex", {1, 1}, {{1, 1}}, {1}, {0, 0}, {kInf, kInf});
    const LpOutcome lp = solve_lp(simplex);
    REQUIRE(lp.status == LpStatus::Optimal);
    const CenterPoint f = optimal_face_center(simplex, {}, lp);
    CHECK(norm_inf(sub(f.point, lp.point)) < 1e-6);
}

TEST_CASE("face center of an asymmetric edge matches the 1-D barrier oracle") {
    // Triangle (0,0), (0,1), (1,0.5) inside the box [0,2]^2; min x1.
    // Face is {0} x [0,1]; on it the barrier over the remaining constraints
    // is -log(1 - x2) - 2 log(x2) - log(2 - x2) - log(2).
    const MipInstance tri = make_instance("tri", {1, 0}, {{0.5, 1}, {0.5, -1}}, {1, 0},
                                          {0, 0}, {2, 2});
    const LpOutcome lp = solve_lp(tri);
    REQUIRE(lp.status == LpStatus::Optimal);
    REQUIRE(lp.value == doctest::Approx(0).epsilon(1e-9));
    const CenterPoint f = optimal_face_center(tri, {}, lp);
    const double expected = oracle::golden_section(
        [](double y) { return -std::log(1 - y) - 2 * std::log(y) - std::log(2 - y); }, 1e-9,
        1 - 1e-9);
    CHECK(f.point[0] == doctest::Approx(0).epsilon(1e-7));
    CHECK(f.point[1] == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("face center equals the LP point whenever the optimum is unique") {
    Rng rng(77);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 15; ++trial) {
        MipInstance inst = random_polytope(rng, 2 + rng.next_int(2), 4);
        for (int j = 0; j < inst.n(); ++j) inst.objective[j] = rng.next_range(-1, 1);
        const LpOutcome lp = solve_lp(inst);
        if (lp.status != LpStatus::Optimal) continue;
        bool dual_nondegenerate = true;
        for (int j = 0; j < inst.n(); ++j)
            if (lp.basis[j] != BasisStatus::BasicAtValue &&
                std::abs(lp.reduced_costs[j]) <= 1e-7)
                dual_nondegenerate = false;
        if (!dual_nondegenerate) continue;
        ++checked;
        const CenterPoint f = optimal_face_center(inst, {}, lp);
        CHECK(norm_inf(sub(f.point, lp.point)) < 1e-6);
    }
    CHECK(checked >= 10);
}

TEST_CASE("face center respects appended cuts") {
    // min x1 over [0,1]^2 with cut x2 <= 0.5: the face barrier over x2 is
    // -log(x2) - log(1 - x2) - log(0.5 - x2)
    const MipInstance inst = make_box({1, 0}, {0, 0}, {1, 1});
    const std::vector<Cut> cuts = {testsup::make_cut({0, 1}, 0.5)};
    const LpOutcome lp = solve_lp(inst, cuts);
    REQUIRE(lp.status == LpStatus::Optimal);
    const CenterPoint f = optimal_face_center(inst, cuts, lp);
    const double expected = oracle::golden_section(
        [](double y) { return -std::log(y) - std::log(1 - y) - std::log(0.5 - y); }, 1e-9,
        0.5 - 1e-9);
    CHECK(f.point[1] == doctest::Approx(expected).epsilon(1e-6));
}
