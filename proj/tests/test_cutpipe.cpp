#include <cmath>

#include "doctest.h"

#include "cutlab/cutpipe.hpp"
#include "cutlab/simplex.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cutlab;
using testsup::make_box;
using testsup::make_cut;
using testsup::make_instance;

namespace {

MipInstance random_binary_knapsack(Rng& rng, int n, int m) {
    std::vector<Vec> rows;
    Vec rhs;
    for (int i = 0; i < m; ++i) {
        Vec a(n);
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            a[j] = static_cast<double>(1 + rng.next_int(9));
            total += a[j];
        }
        rows.push_back(a);
        rhs.push_back(std::floor(total * rng.next_range(0.3, 0.7)) + 0.5 * (rng.next_int(2)));
    }
    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = -static_cast<double>(1 + rng.next_int(9));
    std::vector<int> ints(n);
    for (int j = 0; j < n; ++j) ints[j] = j;
    return testsup::make_instance("bknap", c, rows, rhs, Vec(n, 0.0), Vec(n, 1.0), ints);
}

bool cut_valid_by_enumeration(const MipInstance& inst, const Cut& cut) {
    for (const Vec& p : oracle::enumerate_integer_points(inst))
        if (violation(cut, p) > 1e-6) return false;
    return true;
}

}  // namespace

TEST_CASE("gomory cut on the one-variable knapsack is x1 <= 1") {
    // max x1 (min -x1), 2 x1 <= 3, x1 integer in [0,2]; LP point 1.5
    const MipInstance inst = make_instance("knap1", {-1}, {{2}}, {3}, {0}, {2}, {0});
    SimplexSolver solver(inst, {});
    const LpOutcome lp = solver.solve();
    REQUIRE(lp.point[0] == doctest::Approx(1.5));
    const auto cands = generate_gomory(inst, {}, lp, solver);
    REQUIRE(cands.size() == 1);
    const Cut& cut = cands[0];
    CHECK(violation(cut, lp.point) > 1e-6);
    // equivalent to x1 <= 1: cuts 1.5, keeps 0 and 1, cuts 2
    CHECK(violation(cut, {0.0}) <= 1e-9);
    CHECK(violation(cut, {1.0}) <= 1e-9);
    CHECK(violation(cut, {2.0}) > 1e-6);
    // boundary exactly at x1 = 1
    CHECK(violation(cut, {1.0}) == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("integral LP yields no gomory candidates") {
    const MipInstance inst = make_instance("int", {-1}, {{1}}, {1}, {0}, {2}, {0});
    SimplexSolver solver(inst, {});
    const LpOutcome lp = solver.solve();
    CHECK(generate_gomory(inst, {}, lp, solver).empty());
}

TEST_CASE("gomory cuts keep every enumerated feasible point of 2-var knapsacks") {
    Rng rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const MipInstance inst = random_binary_knapsack(rng, 2 + rng.next_int(4), 1);
        SimplexSolver solver(inst, {});
        const LpOutcome lp = solver.solve();
        if (lp.status != LpStatus::Optimal) continue;
        for (const Cut& cut : generate_gomory(inst, {}, lp, solver)) {
            CHECK(cut_valid_by_enumeration(inst, cut));
            CHECK(violation(cut, lp.point) > 1e-6);
        }
    }
}

TEST_CASE("density filter keeps exactly the sparse-enough cuts in order") {
    std::vector<Cut> cands = {make_cut({1, 0, 0, 0}, 1), make_cut({1, 1, 0, 0}, 1),
                              make_cut({1, 1, 1, 1}, 1)};
    CHECK(filter_density(cands, 0.05, 4).empty());
    CHECK(filter_density(cands, 1.0, 4).size() == 3);
    const auto half = filter_density(cands, 0.5, 4);
    REQUIRE(half.size() == 2);
    CHECK(half[0].coeffs == cands[0].coeffs);
    CHECK(half[1].coeffs == cands[1].coeffs);
    for (const Cut& c : half) CHECK(relative_density(c, 4) <= 0.5);
}

TEST_CASE("select_cuts keeps one of two identical cuts") {
    ScoringContext ctx;
    ctx.x_lp = {2, 0};
    SeparationConfig cfg;
    cfg.measure = MeasureKind::Eff;
    const std::vector<Cut> cands = {make_cut({1, 0}, 1), make_cut({2, 0}, 2)};
    const auto sel = select_cuts(cands, ctx, cfg);
    CHECK(sel.size() == 1);
}

TEST_CASE("select_cuts takes both orthogonal violated cuts") {
    ScoringContext ctx;
    ctx.x_lp = {2, 2};
    SeparationConfig cfg;
    const std::vector<Cut> cands = {make_cut({1, 0}, 1), make_cut({0, 1}, 1)};
    CHECK(select_cuts(cands, ctx, cfg).size() == 2);
}

TEST_CASE("select_cuts matches a scripted greedy loop on five candidates") {
    ScoringContext ctx;
    ctx.x_lp = {3, 3};
    SeparationConfig cfg;
    cfg.max_cuts_per_round = 2;
    cfg.parallelism_threshold = 0.95;
    const std::vector<Cut> cands = {
        make_cut({1, 0}, 1),       // eff 2
        make_cut({0.99, 0.02}, 1), // nearly parallel to the first, slightly stronger
        make_cut({0, 1}, 2),       // eff 1
        make_cut({1, 1}, 5),       // eff (6-5)/sqrt2 ~ 0.707
        make_cut({-1, 0}, 10),     // not violated
    };
    // oracle: simulate the greedy loop directly from the definition
    std::vector<double> scores;
    for (const Cut& c : cands) scores.push_back(score_eff(c, ctx.x_lp));
    std::vector<bool> alive(cands.size(), true);
    std::vector<int> expected;
    while (static_cast<int>(expected.size()) < cfg.max_cuts_per_round) {
        int best = -1;
        for (int i = 0; i < static_cast<int>(cands.size()); ++i)
            if (alive[i] && (best < 0 || scores[i] > scores[best])) best = i;
        if (best < 0 || scores[best] <= 0) break;
        expected.push_back(best);
        alive[best] = false;
        for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
            if (!alive[i]) continue;
            const double cos = dot(cands[i].coeffs, cands[best].coeffs) /
                               (norm2(cands[i].coeffs) * norm2(cands[best].coeffs));
            if (cos > cfg.parallelism_threshold) alive[i] = false;
        }
    }
    REQUIRE(expected.size() == 2);
    CHECK(expected[0] == 1);  // 0.99x1 + 0.02x2 <= 1 scores above x1 <= 1 at (3,3)
    CHECK(expected[1] == 2);
    const auto sel = select_cuts(cands, ctx, cfg);
    REQUIRE(sel.size() == expected.size());
    for (std::size_t i = 0; i < sel.size(); ++i)
        CHECK(sel[i].coeffs == cands[expected[i]].coeffs);
}

TEST_CASE("select_cuts reports the missing context component by name") {
    SeparationConfig cfg;
    cfg.measure = MeasureKind::MinEff;
    ScoringContext ctx;
    ctx.x_lp = {1, 1};
    const std::vector<Cut> cands = {make_cut({1, 0}, 0)};
    CHECK_THROWS_WITH_AS(select_cuts(cands, ctx, cfg),
                         "mineff requires an optima set in the context", MeasureError);
}

TEST_CASE("run_separation on an integral LP does nothing") {
    const MipInstance inst = make_instance("int", {-1}, {{1}}, {1}, {0}, {2}, {0});
    SeparationConfig cfg;
    const SeparationResult res = run_separation(inst, cfg);
    CHECK(res.cuts.empty());
    CHECK(res.reports.empty());
    CHECK(res.final_lp.value == doctest::Approx(-1));
}

TEST_CASE("one-variable knapsack terminates with the x1 <= 1 cut") {
    const MipInstance inst = make_instance("knap1", {-1}, {{2}}, {3}, {0}, {2}, {0});
    SeparationConfig cfg;
    cfg.rounds = 50;
    const SeparationResult res = run_separation(inst, cfg);
    REQUIRE(res.cuts.size() >= 1);
    CHECK(res.reports[0].cuts_added == 1);
    CHECK(res.final_lp.value == doctest::Approx(-1).epsilon(1e-9));
    // LP integral after the first round: exactly one report
    CHECK(res.reports.size() == 1);
}

TEST_CASE("mineff context carries an optima set each scoring round") {
    const MipInstance inst = make_instance("deg", {-1, -1, 0}, {{2, 2, 1}}, {3}, {0, 0, 0},
                                           {1, 1, 1}, {0, 1, 2});
    SeparationConfig cfg;
    cfg.measure = MeasureKind::MinEff;
    cfg.k_optima = 3;
    const SeparationResult res = run_separation(inst, cfg);
    CHECK(res.final_lp.status == LpStatus::Optimal);
    // structural check happens inside select_cuts: a missing optima set would
    // have thrown; reaching here with rounds executed is the assertion
    CHECK(res.reports.size() >= 1);
}

TEST_CASE("dcd without an incumbent falls back to eff and flags the round") {
    const MipInstance inst = make_instance("knap1", {-1}, {{2}}, {3}, {0}, {2}, {0});
    SeparationConfig cfg;
    cfg.measure = MeasureKind::Dcd;
    const SeparationResult res = run_separation(inst, cfg);
    REQUIRE(!res.reports.empty());
    CHECK(res.reports[0].measure_fallback);
    CHECK(res.final_lp.value == doctest::Approx(-1).epsilon(1e-9));
}

TEST_CASE("separation respects budgets, parallelism and monotone dual bounds") {
    Rng rng(97);
    for (int trial = 0; trial < 8; ++trial) {
        const MipInstance inst = random_binary_knapsack(rng, 6, 2);
        SeparationConfig cfg;
        cfg.rounds = 12;
        cfg.max_cuts_per_round = 3;
        cfg.seed = trial + 1;
        const SeparationResult res = run_separation(inst, cfg);
        double prev = -kInf;
        for (const RoundReport& r : res.reports) {
            CHECK(r.cuts_added <= cfg.max_cuts_per_round);
            CHECK(r.cuts_added <= r.candidates_after_filter);
            CHECK(r.candidates_after_filter <= r.candidates_generated);
            CHECK(r.lp_value_after >= prev - 1e-9);
            prev = r.lp_value_after;
        }
        CHECK(static_cast<int>(res.cuts.size()) <= cfg.rounds * cfg.max_cuts_per_round);
        for (std::size_t a = 0; a < res.cuts.size(); ++a)
            for (std::size_t b = a + 1; b < res.cuts.size(); ++b) {
                if (res.cuts[a].round != res.cuts[b].round) continue;
                const double cos = dot(res.cuts[a].coeffs, res.cuts[b].coeffs) /
                                   (norm2(res.cuts[a].coeffs) * norm2(res.cuts[b].coeffs));
                CHECK(cos <= cfg.parallelism_threshold + 1e-9);
            }
        // validity end to end
        for (const Vec& p : oracle::enumerate_integer_points(inst))
            for (const Cut& c : res.cuts) CHECK(violation(c, p) <= 1e-6);
    }
}

TEST_CASE("separation is deterministic for a fixed seed and config") {
    Rng rng(13);
    const MipInstance inst = random_binary_knapsack(rng, 5, 2);
    SeparationConfig cfg;
    cfg.rounds = 8;
    cfg.seed = 4;
    const SeparationResult a = run_separation(inst, cfg);
    const SeparationResult b = run_separation(inst, cfg);
    REQUIRE(a.cuts.size() == b.cuts.size());
    for (std::size_t i = 0; i < a.cuts.size(); ++i) {
        CHECK(a.cuts[i].rhs == b.cuts[i].rhs);
        CHECK(a.cuts[i].coeffs == b.cuts[i].coeffs);
    }
    CHECK(a.final_lp.value == b.final_lp.value);
}

TEST_CASE("app-a-dcd recomputes only when a cut separates the cached center") {
    Rng rng(41);
    const MipInstance inst = random_binary_knapsack(rng, 6, 2);
    SeparationConfig cfg;
    cfg.measure = MeasureKind::AppADcd;
    cfg.rounds = 10;
    const SeparationResult res = run_separation(inst, cfg);
    REQUIRE(!res.reports.empty());
    CHECK(res.reports[0].center_recomputed);  // first round always computes
    // every round either reused the cache or recomputed; both appear over
    // enough rounds on instances where cuts reach the center
    for (const RoundReport& r : res.reports) CHECK(r.cuts_added <= cfg.max_cuts_per_round);
}

TEST_CASE("a-eff and a-dcd recompute centers every round") {
    Rng rng(43);
    const MipInstance inst = random_binary_knapsack(rng, 5, 1);
    for (MeasureKind mk : {MeasureKind::AEff, MeasureKind::ADcd}) {
        SeparationConfig cfg;
        cfg.measure = mk;
        cfg.rounds = 6;
        const SeparationResult res = run_separation(inst, cfg);
        for (const RoundReport& r : res.reports) CHECK(r.center_recomputed);
    }
}

TEST_CASE("all eight measures run the loop and preserve validity") {
    Rng rng(59);
    const MipInstance inst = random_binary_knapsack(rng, 6, 2);
    const auto points = oracle::enumerate_integer_points(inst);
    for (MeasureKind mk : kAllMeasures) {
        SeparationConfig cfg;
        cfg.measure = mk;
        cfg.rounds = 8;
        const SeparationResult res = run_separation(inst, cfg);
        CHECK(res.final_lp.status == LpStatus::Optimal);
        for (const Cut& c : res.cuts)
            for (const Vec& p : points) CHECK(violation(c, p) <= 1e-6);
    }
}
