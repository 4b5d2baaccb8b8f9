#include "doctest.h"

#include "cutlab/json_io.hpp"
#include "cutlab/model.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cutlab;
using testsup::make_box;
using testsup::make_cut;
using testsup::make_instance;

TEST_CASE("violation of a cut at a point") {
    CHECK(violation(make_cut({1, 0}, 1), {3, 7}) == doctest::Approx(2).epsilon(1e-12));
    CHECK(violation(make_cut({1, 1}, 2), {1, 1}) == doctest::Approx(0).epsilon(1e-12));
    const double expected = oracle::linear_form({3, 4}, 0, {1, 1});
    CHECK(violation(make_cut({3, 4}, 0), {1, 1}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(violation(make_cut({1, 0}, 1), {1, 2, 3}), ModelError);
}

TEST_CASE("violation is linear along segments and scales with the cut") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + rng.next_int(4);
        Vec alpha(n), x(n), y(n);
        for (int j = 0; j < n; ++j) {
            alpha[j] = rng.next_range(-3, 3);
            x[j] = rng.next_range(-5, 5);
            y[j] = rng.next_range(-5, 5);
        }
        const double beta = rng.next_range(-2, 2);
        const Cut cut = make_cut(alpha, beta);
        const double a = rng.next_double();
        Vec mix(n);
        for (int j = 0; j < n; ++j) mix[j] = a * x[j] + (1 - a) * y[j];
        CHECK(violation(cut, mix) ==
              doctest::Approx(a * violation(cut, x) + (1 - a) * violation(cut, y))
                  .epsilon(1e-9));
        const double t = 0.1 + 3 * rng.next_double();
        const Cut scaled = make_cut(scale(alpha, t), t * beta);
        CHECK(violation(scaled, x) == doctest::Approx(t * violation(cut, x)).epsilon(1e-9));
    }
}

TEST_CASE("mip feasibility checks bounds, rows and integrality") {
    MipInstance box = make_box({0, 0}, {0, 0}, {1, 1}, {0, 1});
    CHECK(is_mip_feasible(box, {1, 0}));
    CHECK_FALSE(is_mip_feasible(box, {0.5, 0}));

    MipInstance capped = make_instance("capped", {0, 0}, {{1, 1}}, {1}, {0, 0}, {1, 1}, {0, 1});
    CHECK_FALSE(is_mip_feasible(capped, {1, 1}));
    CHECK(is_mip_feasible(capped, {1, 0}));
}

TEST_CASE("equality rows are enforced both ways") {
    MipInstance inst = make_instance("eq", {0, 0}, {{1, 1}}, {1}, {0, 0}, {1, 1}, {},
                                     {RowKind::EQ});
    CHECK(is_mip_feasible(inst, {0.5, 0.5}));
    CHECK_FALSE(is_mip_feasible(inst, {0.2, 0.2}));
}

TEST_CASE("instance json round trip preserves the model") {
    MipInstance inst = make_instance("rt", {1, -2}, {{2, 3}, {-1, 0}}, {6, 0}, {0, -kInf},
                                     {kInf, 5}, {1}, {RowKind::LE, RowKind::EQ});
    const std::string text = instance_to_json(inst);
    const MipInstance back = instance_from_json(text);
    CHECK(back.name == "rt");
    CHECK(back.n() == 2);
    CHECK(back.m() == 2);
    CHECK(back.rows(0, 1) == doctest::Approx(3));
    CHECK(back.lower[1] == -kInf);
    CHECK(back.upper[0] == kInf);
    CHECK(back.row_kind[1] == RowKind::EQ);
    CHECK(back.integer_set == std::vector<int>{1});
}

TEST_CASE("instance json rejects NaN and mismatched dimensions") {
    CHECK_THROWS_AS(instance_from_json(R"({"name":"x","n":2,"m":0,"objective":[1],
        "rows":[],"rhs":[],"row_kind":[],"lower":[0,0],"upper":[1,1],"integer":[]})"),
                    ModelError);
    CHECK_THROWS_AS(instance_from_json(R"({"name":"x","n":1,"m":1,"objective":[null],
        "rows":[[1]],"rhs":[1],"row_kind":["LE"],"lower":[0],"upper":[1],"integer":[]})"),
                    ModelError);
    CHECK_THROWS_AS(instance_from_json("not json"), ModelError);
    CHECK_THROWS_AS(instance_from_json(R"({"name":"x","n":1,"m":1,"objective":[1],
        "rows":[[1]],"rhs":[1],"row_kind":["GE"],"lower":[0],"upper":[1],"integer":[]})"),
                    ModelError);
}

TEST_CASE("validate rejects crossed bounds and bad integer indices") {
    MipInstance inst = make_box({0.0}, {0.0}, {1.0});
    inst.lower[0] = 2.0;
    CHECK_THROWS_AS(inst.validate(), ModelError);
    inst.lower[0] = 0.0;
    inst.integer_set = {4};
    CHECK_THROWS_AS(inst.validate(), ModelError);
}
