#include <cmath>
#include <functional>

#include "doctest.h"

#include "cutlab/regress.hpp"

using namespace cutlab;

namespace {

TrainingRecord record_from(Rng& rng, const std::function<double(const Vec&, int)>& target) {
    TrainingRecord r;
    Vec f(5);
    for (double& v : f) v = rng.next_double();
    r.features = FeatureVector::from_vector(f);
    for (int o = 0; o < 8; ++o) r.targets[o] = target(f, o);
    return r;
}

std::vector<TrainingRecord> make_records(int n, std::uint64_t seed,
                                         const std::function<double(const Vec&, int)>& target) {
    Rng rng(seed);
    std::vector<TrainingRecord> records;
    for (int i = 0; i < n; ++i) records.push_back(record_from(rng, target));
    return records;
}

}  // namespace

TEST_CASE("constant targets are reproduced on the training points") {
    const auto records = make_records(24, 5, [](const Vec&, int) { return 1.0; });
    const RegressionModel model = train(records, 1e-6);
    for (const TrainingRecord& r : records) {
        const Vec p = predict(model, r.features);
        for (double v : p) CHECK(v == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("linear targets sit inside the cubic kernel span") {
    const auto records =
        make_records(40, 7, [](const Vec& f, int o) { return 0.3 + 0.5 * f[(o % 5)]; });
    const RegressionModel model = train(records, 1e-6);
    double mse = 0.0;
    int count = 0;
    for (const TrainingRecord& r : records) {
        const Vec p = predict(model, r.features);
        for (int o = 0; o < 8; ++o) {
            const double err = p[o] - r.targets[o];
            mse += err * err;
            ++count;
        }
    }
    CHECK(mse / count < 1e-4);
}

TEST_CASE("training is structurally sound on the minimum record count") {
    const auto records = make_records(8, 9, [](const Vec& f, int o) {
        return 0.5 + 0.05 * o + 0.1 * f[0];
    });
    const RegressionModel model = train(records, 0.1);
    CHECK(model.cv_mse.size() == 8);
    for (double v : model.cv_mse) CHECK(std::isfinite(v));
    for (const Vec& a : model.dual_coeffs)
        for (double v : a) CHECK(std::isfinite(v));
    CHECK_THROWS_AS(train({records.begin(), records.begin() + 4}, 0.1), RegressError);
}

TEST_CASE("prediction at lambda -> 0 interpolates a training point") {
    const auto records =
        make_records(20, 11, [](const Vec& f, int) { return 0.2 + 0.6 * f[1] * f[1]; });
    const RegressionModel model = train(records, 1e-8);
    const Vec p = predict(model, records[3].features);
    for (int o = 0; o < 8; ++o) CHECK(p[o] == doctest::Approx(records[3].targets[o]).epsilon(1e-3));

    // identical feature vectors give identical predictions
    const Vec q = predict(model, records[3].features);
    for (int o = 0; o < 8; ++o) CHECK(p[o] == q[o]);
}

TEST_CASE("pick_measure takes the argmax with declaration-order ties") {
    // build a model whose predictions we control through constant targets
    auto records = make_records(16, 13, [](const Vec&, int o) { return o == 4 ? 0.9 : 0.1; });
    const RegressionModel model = train(records, 1e-6);
    CHECK(pick_measure(model, records[0].features) == MeasureKind::ADcd);

    auto tied = make_records(16, 15, [](const Vec&, int o) {
        return (o == 0 || o == 1) ? 0.8 : 0.1;  // eff and dcd tie within noise
    });
    const RegressionModel tied_model = train(tied, 1e-6);
    const Vec p = predict(tied_model, tied[0].features);
    // exact tie breaking is declaration order; a numerically exact tie is
    // hard to build through training, so check the rule on the raw argmax
    int best = 0;
    for (int o = 1; o < 8; ++o)
        if (p[o] > p[best]) best = o;
    CHECK(pick_measure(tied_model, tied[0].features) == kAllMeasures[best]);
}

TEST_CASE("standardize-train-predict is invariant to feature rescaling") {
    const auto records =
        make_records(30, 17, [](const Vec& f, int o) { return 0.4 + 0.3 * f[(o + 1) % 5]; });
    auto scaled = records;
    for (TrainingRecord& r : scaled) {
        Vec f = r.features.as_vector();
        f[2] = 100.0 * f[2] - 40.0;  // affine rescale of one column
        r.features = FeatureVector::from_vector(f);
    }
    const RegressionModel a = train(records, 1e-4);
    const RegressionModel b = train(scaled, 1e-4);
    for (int i = 0; i < 5; ++i) {
        const Vec pa = predict(a, records[i].features);
        const Vec pb = predict(b, scaled[i].features);
        for (int o = 0; o < 8; ++o) CHECK(pa[o] == doctest::Approx(pb[o]).epsilon(1e-8));
    }
}

TEST_CASE("pca components are orthonormal with the sign convention") {
    const auto records =
        make_records(200, 19, [](const Vec& f, int) { return f[0]; });
    const PcaResult pca = pca_project(records);
    CHECK(dot(pca.component1, pca.component1) == doctest::Approx(1).epsilon(1e-10));
    CHECK(dot(pca.component2, pca.component2) == doctest::Approx(1).epsilon(1e-10));
    CHECK(std::abs(dot(pca.component1, pca.component2)) < 1e-10);
    for (const Vec* comp : {&pca.component1, &pca.component2}) {
        for (double v : *comp) {
            if (std::abs(v) > 1e-12) {
                CHECK(v >= 0);
                break;
            }
        }
    }
    double prev = kInf;
    double total = 0.0;
    for (double rat : pca.explained_ratio) {
        CHECK(rat >= 0);
        CHECK(rat <= prev + 1e-12);
        prev = rat;
        total += rat;
    }
    CHECK(total == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("two duplicated feature columns load on the first component") {
    Rng rng(23);
    std::vector<TrainingRecord> records;
    for (int i = 0; i < 400; ++i) {
        TrainingRecord r;
        const double shared = rng.next_double();
        Vec f = {shared, shared, 0.02 * rng.next_double(), 0.02 * rng.next_double(),
                 0.02 * rng.next_double()};
        r.features = FeatureVector::from_vector(f);
        records.push_back(r);
    }
    const PcaResult pca = pca_project(records);
    // the shared pair carries 2 of the 5 unit variances after standardization
    CHECK(pca.explained_ratio[0] == doctest::Approx(0.4).epsilon(0.05));
    CHECK(std::abs(pca.component1[0]) == doctest::Approx(std::abs(pca.component1[1]))
                                             .epsilon(0.05));
}

TEST_CASE("isotropic features spread the variance evenly") {
    const auto records = make_records(5000, 29, [](const Vec&, int) { return 0.5; });
    const PcaResult pca = pca_project(records);
    for (double rat : pca.explained_ratio) CHECK(rat == doctest::Approx(0.2).epsilon(0.5));
    CHECK(pca.explained_ratio[0] - pca.explained_ratio[4] < 0.1);
}

TEST_CASE("decision regions cover the grid and collapse for constant models") {
    const auto records = make_records(30, 31, [](const Vec&, int o) {
        return o == 2 ? 0.9 : 0.2;  // exp-improv always wins
    });
    const RegressionModel model = train(records, 1e-4);
    const auto cells = export_decision_regions(model, 50);
    CHECK(cells.size() == 2500);
    for (const RegionCell& c : cells) CHECK(c.pick == MeasureKind::ExpImprov);

    const std::string csv = regions_to_csv(cells);
    CHECK(csv.rfind("pc1,pc2,measure,confidence\n", 0) == 0);
}

TEST_CASE("model json round trips through persistence") {
    const auto records =
        make_records(20, 37, [](const Vec& f, int o) { return 0.3 + 0.1 * o * f[3]; });
    const RegressionModel model = train(records, 1e-3);
    const RegressionModel back = model_from_json(model_to_json(model));
    const Vec pa = predict(model, records[5].features);
    const Vec pb = predict(back, records[5].features);
    for (int o = 0; o < 8; ++o) CHECK(pa[o] == pb[o]);
    CHECK_THROWS_AS(model_from_json("{"), RegressError);
}

TEST_CASE("training csv parser accepts the documented 15-column layout") {
    std::string csv = std::string(kCorpusCsvHeader) + "\n";
    csv += "inst,1,0.1,0.2,0.3,0.4,0.5,1,0.9,0.8,0.7,0.6,0.5,0.4,0.3\n";
    const auto records = read_training_csv(csv);
    REQUIRE(records.size() == 1);
    CHECK(records[0].features.fractionality == doctest::Approx(0.3));
    CHECK(records[0].targets[7] == doctest::Approx(0.3));
    CHECK_THROWS_AS(read_training_csv("h\n1,2,3\n"), RegressError);
}

TEST_CASE("decision region boundaries are stable under grid refinement") {
    // two-region model: dual degeneracy above 0.5 prefers a-dcd, else eff
    Rng rng(41);
    std::vector<TrainingRecord> records;
    for (int i = 0; i < 120; ++i) {
        TrainingRecord r;
        Vec f(5);
        for (double& v : f) v = rng.next_double();
        r.features = FeatureVector::from_vector(f);
        for (int o = 0; o < 8; ++o) {
            if (o == 4)
                r.targets[o] = f[0] > 0.5 ? 1.0 : 0.55;
            else if (o == 0)
                r.targets[o] = f[0] > 0.5 ? 0.55 : 1.0;
            else
                r.targets[o] = 0.4;
        }
        records.push_back(r);
    }
    const RegressionModel model = train(records, 1e-3);

    auto boundary_cells = [&](int res) {
        const auto cells = export_decision_regions(model, res);
        std::vector<std::array<double, 2>> boundary;
        for (int i = 0; i < res; ++i)
            for (int j = 0; j < res; ++j) {
                const RegionCell& c = cells[i * res + j];
                const bool differs =
                    (i + 1 < res && cells[(i + 1) * res + j].pick != c.pick) ||
                    (j + 1 < res && cells[i * res + j + 1].pick != c.pick);
                if (differs) boundary.push_back({c.pc1, c.pc2});
            }
        return boundary;
    };
    const auto coarse = boundary_cells(50);
    const auto fine = boundary_cells(100);
    REQUIRE(!coarse.empty());
    REQUIRE(!fine.empty());

    // cell size of the coarse grid, from the projected data spread
    double lo1 = kInf, hi1 = -kInf;
    for (const auto& p : model.pca.projected) {
        lo1 = std::min(lo1, p[0]);
        hi1 = std::max(hi1, p[0]);
    }
    const double cell = 1.2 * (hi1 - lo1) / 50.0;

    auto hausdorff = [](const std::vector<std::array<double, 2>>& a,
                        const std::vector<std::array<double, 2>>& b) {
        double worst = 0.0;
        for (const auto& p : a) {
            double best = kInf;
            for (const auto& q : b) {
                const double d = std::hypot(p[0] - q[0], p[1] - q[1]);
                best = std::min(best, d);
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    const double drift = std::max(hausdorff(coarse, fine), hausdorff(fine, coarse));
    CHECK(drift < 2.0 * cell);
}
