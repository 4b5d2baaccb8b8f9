#include <cmath>

#include "doctest.h"

#include "cutlab/bnb.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cutlab;
using testsup::make_box;
using testsup::make_instance;

namespace {
MipInstance random_small_mip(Rng& rng, int n) {
    std::vector<Vec> rows;
    Vec rhs;
    const int m = 1 + rng.next_int(3);
    for (int i = 0; i < m; ++i) {
        Vec a(n);
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            a[j] = static_cast<double>(rng.next_int(7) - 2);
            total += std::max(0.0, a[j]);
        }
        rows.push_back(a);
        rhs.push_back(std::max(1.0, std::floor(total * 0.6)));
    }
    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = static_cast<double>(rng.next_int(11) - 5);
    std::vector<int> ints(n);
    for (int j = 0; j < n; ++j) ints[j] = j;
    return testsup::make_instance("smallmip", c, rows, rhs, Vec(n, 0.0), Vec(n, 1.0), ints);
}
}  // namespace

TEST_CASE("branch and cut matches enumeration on the 2-binary example") {
    // min -x1-x2 s.t. 2x1+2x2 <= 3, x binary: optimum -1
    const MipInstance inst =
        make_instance("two", {-1, -1}, {{2, 2}}, {3}, {0, 0}, {1, 1}, {0, 1});
    SeparationConfig cfg;
    const BnbResult res = branch_and_cut(inst, cfg);
    CHECK(res.stats.status == BnbStatus::Optimal);
    CHECK(res.stats.primal_bound == doctest::Approx(-1).epsilon(1e-9));
    CHECK(res.stats.nodes_processed >= 1);
    const BruteForceResult bf = brute_force_optimum(inst);
    CHECK(bf.value == doctest::Approx(res.stats.primal_bound).epsilon(1e-9));
}

TEST_CASE("integral root LP solves in one node") {
    const MipInstance inst = make_instance("int", {-1}, {{1}}, {1}, {0}, {2}, {0});
    const BnbResult res = branch_and_cut(inst, SeparationConfig{});
    CHECK(res.stats.status == BnbStatus::Optimal);
    CHECK(res.stats.nodes_processed == 1);
    CHECK(res.stats.primal_bound == doctest::Approx(-1));
}

TEST_CASE("infeasible instances are reported as such") {
    const MipInstance inst =
        make_instance("inf", {0, 0}, {{1, 1}, {-1, -1}}, {1, -3}, {0, 0}, {1, 1}, {0, 1});
    CHECK(branch_and_cut(inst, SeparationConfig{}).stats.status == BnbStatus::Infeasible);

    // LP-feasible but integer-infeasible
    const MipInstance gap =
        make_instance("gap", {0.0}, {{2.0}, {-2.0}}, {1.2, -0.8}, {0.0}, {1.0}, {0});
    const BnbResult res = branch_and_cut(gap, SeparationConfig{});
    CHECK(res.stats.status == BnbStatus::Infeasible);
    const BruteForceResult bf = brute_force_optimum(gap);
    CHECK(bf.status == BnbStatus::Infeasible);
}

TEST_CASE("brute force agrees with branch and cut across measures and seeds") {
    Rng rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        const MipInstance inst = random_small_mip(rng, 5);
        const BruteForceResult bf = brute_force_optimum(inst);
        for (MeasureKind mk : {MeasureKind::Eff, MeasureKind::ADcd, MeasureKind::MinEff}) {
            SeparationConfig cfg;
            cfg.measure = mk;
            cfg.rounds = 10;
            cfg.seed = trial + 1;
            const BnbResult res = branch_and_cut(inst, cfg);
            if (bf.status == BnbStatus::Infeasible) {
                CHECK(res.stats.status == BnbStatus::Infeasible);
            } else {
                REQUIRE(res.stats.status == BnbStatus::Optimal);
                CHECK(std::abs(res.stats.primal_bound - bf.value) <=
                      1e-6 * (1 + std::abs(bf.value)));
            }
        }
    }
}

TEST_CASE("adding cuts never changes the optimal value") {
    Rng rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const MipInstance inst = random_small_mip(rng, 4);
        const BruteForceResult bf = brute_force_optimum(inst);
        if (bf.status != BnbStatus::Optimal) continue;
        SeparationConfig none;
        none.rounds = 0;
        SeparationConfig many;
        many.rounds = 20;
        const BnbResult a = branch_and_cut(inst, none);
        const BnbResult b = branch_and_cut(inst, many);
        CHECK(std::abs(a.stats.primal_bound - bf.value) <= 1e-6 * (1 + std::abs(bf.value)));
        CHECK(std::abs(b.stats.primal_bound - bf.value) <= 1e-6 * (1 + std::abs(bf.value)));
    }
}

TEST_CASE("node counts are deterministic for fixed seed and config") {
    Rng rng(23);
    const MipInstance inst = random_small_mip(rng, 6);
    SeparationConfig cfg;
    cfg.rounds = 5;
    cfg.seed = 3;
    const BnbResult a = branch_and_cut(inst, cfg);
    const BnbResult b = branch_and_cut(inst, cfg);
    CHECK(a.stats.nodes_processed == b.stats.nodes_processed);
    CHECK(a.stats.primal_bound == b.stats.primal_bound);
    CHECK(a.stats.lp_iterations_total == b.stats.lp_iterations_total);
}

TEST_CASE("provided incumbent sets the root gap and must be feasible") {
    const MipInstance inst =
        make_instance("two", {-1, -1}, {{2, 2}}, {3}, {0, 0}, {1, 1}, {0, 1});
    Incumbent inc;
    inc.point = {1, 0};
    inc.source = IncumbentSource::Provided;
    SeparationConfig cfg;
    const BnbResult res = branch_and_cut(inst, cfg, {}, inc);
    CHECK(res.stats.status == BnbStatus::Optimal);
    CHECK(std::isfinite(res.stats.gap_after_root));
    CHECK(res.stats.gap_after_root >= -1e-9);

    Incumbent bad;
    bad.point = {1, 1};  // violates 2x1+2x2 <= 3
    CHECK_THROWS_AS(branch_and_cut(inst, cfg, {}, bad), ModelError);
}

TEST_CASE("dual bound never exceeds the primal bound at termination") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const MipInstance inst = random_small_mip(rng, 5);
        const BnbResult res = branch_and_cut(inst, SeparationConfig{});
        if (res.stats.status == BnbStatus::Optimal)
            CHECK(res.stats.dual_bound <= res.stats.primal_bound + 1e-6);
    }
}

TEST_CASE("node limit truncates the search deterministically") {
    Rng rng(37);
    const MipInstance inst = random_small_mip(rng, 8);
    SeparationConfig cfg;
    cfg.rounds = 0;
    BnbLimits limits;
    limits.node_limit = 1;
    const BnbResult res = branch_and_cut(inst, cfg, limits);
    CHECK(res.stats.nodes_processed <= 1);
    if (res.stats.status == BnbStatus::TimeLimit)
        CHECK(res.stats.dual_bound <= res.stats.primal_bound + 1e-6);
}

TEST_CASE("brute force handles the pure LP and budget guard cases") {
    const MipInstance lp_only = make_box({-1, -1}, {0, 0}, {1, 1});
    const BruteForceResult r = brute_force_optimum(lp_only);
    CHECK(r.status == BnbStatus::Optimal);
    CHECK(r.value == doctest::Approx(-2));

    MipInstance wide = make_box({-1.0}, {0.0}, {9.0}, {0});
    CHECK_THROWS_AS(brute_force_optimum(wide), SolverError);
}
