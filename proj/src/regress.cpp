#include "cutlab/regress.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cutlab {

namespace {

constexpr int kFeatures = 5;
constexpr int kOutputs = 8;

Vec standardize(const Vec& raw, const Vec& means, const Vec& stds) {
    Vec z(kFeatures);
    for (int j = 0; j < kFeatures; ++j) z[j] = (raw[j] - means[j]) / stds[j];
    return z;
}

double kernel(const Vec& a, const Vec& b, double gamma, double offset, int degree) {
    double base = offset + gamma * dot(a, b);
    double k = 1.0;
    for (int d = 0; d < degree; ++d) k *= base;
    return k;
}

/// Solve (K + lambda I) a = t for each target column.
std::vector<Vec> fit_dual(const std::vector<Vec>& inputs, const std::vector<Vec>& targets,
                          double gamma, double offset, int degree, double lambda) {
    const int n = static_cast<int>(inputs.size());
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = kernel(inputs[i], inputs[j], gamma, offset, degree);
            k(i, j) = v;
            k(j, i) = v;
        }
    for (int i = 0; i < n; ++i) k(i, i) += lambda;
    LuFactor lu(std::move(k));
    if (lu.singular())
        throw RegressError(
            "kernel system is singular; duplicate rows need a ridge lambda > 0");
    std::vector<Vec> coeffs;
    coeffs.reserve(targets.size());
    for (const Vec& t : targets) coeffs.push_back(lu.solve(t));
    return coeffs;
}

double predict_one(const std::vector<Vec>& inputs, const Vec& alpha, const Vec& z,
                   double gamma, double offset, int degree) {
    double s = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        s += alpha[i] * kernel(inputs[i], z, gamma, offset, degree);
    return s;
}

PcaResult pca_of_standardized(const std::vector<Vec>& z, const Vec& means, const Vec& stds) {
    const int n = static_cast<int>(z.size());
    Matrix cov(kFeatures, kFeatures, 0.0);
    for (const Vec& row : z)
        for (int a = 0; a < kFeatures; ++a)
            for (int b = 0; b < kFeatures; ++b) cov(a, b) += row[a] * row[b];
    const double denom = n > 1 ? n - 1 : 1;
    for (int a = 0; a < kFeatures; ++a)
        for (int b = 0; b < kFeatures; ++b) cov(a, b) /= denom;

    SymmetricEigen eig = symmetric_eigen(cov);
    double total = 0.0;
    for (double v : eig.values) total += std::max(v, 0.0);
    if (total <= 0) total = 1.0;

    PcaResult out;
    out.means = means;
    out.stds = stds;
    out.explained_ratio.resize(kFeatures);
    for (int i = 0; i < kFeatures; ++i)
        out.explained_ratio[i] = std::max(eig.values[i], 0.0) / total;

    auto column = [&](int c) {
        Vec v(kFeatures);
        for (int i = 0; i < kFeatures; ++i) v[i] = eig.vectors(i, c);
        // sign convention: first loading above noise is nonnegative
        for (int i = 0; i < kFeatures; ++i) {
            if (std::abs(v[i]) > 1e-12) {
                if (v[i] < 0)
                    for (double& x : v) x = -x;
                break;
            }
        }
        return v;
    };
    out.component1 = column(0);
    out.component2 = column(1);

    out.projected.reserve(n);
    for (const Vec& row : z)
        out.projected.push_back({dot(row, out.component1), dot(row, out.component2)});
    return out;
}

void standardization(const std::vector<TrainingRecord>& records, Vec& means, Vec& stds) {
    const int n = static_cast<int>(records.size());
    means.assign(kFeatures, 0.0);
    stds.assign(kFeatures, 0.0);
    for (const TrainingRecord& r : records) {
        const Vec f = r.features.as_vector();
        for (int j = 0; j < kFeatures; ++j) means[j] += f[j] / n;
    }
    for (const TrainingRecord& r : records) {
        const Vec f = r.features.as_vector();
        for (int j = 0; j < kFeatures; ++j) {
            const double d = f[j] - means[j];
            stds[j] += d * d;
        }
    }
    for (int j = 0; j < kFeatures; ++j) {
        stds[j] = n > 1 ? std::sqrt(stds[j] / (n - 1)) : 0.0;
        if (stds[j] <= 1e-12) stds[j] = 1.0;  // constant feature
    }
}

}  // namespace

RegressionModel train(const std::vector<TrainingRecord>& records, double lambda,
                      std::uint64_t seed, double gamma, double offset) {
    if (records.size() < 8)
        throw RegressError("train requires at least 8 records, got " +
                           std::to_string(records.size()));
    for (const TrainingRecord& r : records)
        for (double t : r.targets)
            if (!std::isfinite(t)) throw RegressError("train: non-finite target");

    RegressionModel model;
    model.gamma = gamma;
    model.offset = offset;
    model.lambda = lambda;
    standardization(records, model.means, model.stds);

    const int n = static_cast<int>(records.size());
    model.inputs.reserve(n);
    for (const TrainingRecord& r : records)
        model.inputs.push_back(standardize(r.features.as_vector(), model.means, model.stds));

    std::vector<Vec> targets(kOutputs, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int o = 0; o < kOutputs; ++o) targets[o][i] = records[i].targets[o];

    model.dual_coeffs =
        fit_dual(model.inputs, targets, model.gamma, model.offset, model.degree, lambda);

    // 5-fold cross-validation report
    Rng rng(seed);
    std::vector<int> order = rng.permutation(n);
    model.cv_mse.assign(kOutputs, 0.0);
    Vec fold_count(kOutputs, 0.0);
    for (int fold = 0; fold < 5; ++fold) {
        std::vector<Vec> tr_in;
        std::vector<Vec> tr_t(kOutputs);
        std::vector<int> test_idx;
        for (int i = 0; i < n; ++i) {
            if (i % 5 == fold) {
                test_idx.push_back(order[i]);
            } else {
                tr_in.push_back(model.inputs[order[i]]);
                for (int o = 0; o < kOutputs; ++o)
                    tr_t[o].push_back(records[order[i]].targets[o]);
            }
        }
        if (tr_in.size() < 2 || test_idx.empty()) continue;
        const auto coeffs =
            fit_dual(tr_in, tr_t, model.gamma, model.offset, model.degree, lambda);
        for (int o = 0; o < kOutputs; ++o) {
            for (int idx : test_idx) {
                const double p = predict_one(tr_in, coeffs[o], model.inputs[idx],
                                             model.gamma, model.offset, model.degree);
                const double err = p - records[idx].targets[o];
                model.cv_mse[o] += err * err;
                fold_count[o] += 1.0;
            }
        }
    }
    for (int o = 0; o < kOutputs; ++o)
        if (fold_count[o] > 0) model.cv_mse[o] /= fold_count[o];

    model.pca = pca_of_standardized(model.inputs, model.means, model.stds);
    return model;
}

Vec predict(const RegressionModel& model, const FeatureVector& features) {
    const Vec z = standardize(features.as_vector(), model.means, model.stds);
    Vec out(kOutputs);
    for (int o = 0; o < kOutputs; ++o)
        out[o] = predict_one(model.inputs, model.dual_coeffs[o], z, model.gamma,
                             model.offset, model.degree);
    return out;
}

MeasureKind pick_measure(const RegressionModel& model, const FeatureVector& features) {
    const Vec p = predict(model, features);
    int best = 0;
    for (int o = 1; o < kOutputs; ++o)
        if (p[o] > p[best]) best = o;
    return kAllMeasures[best];
}

PcaResult pca_project(const std::vector<TrainingRecord>& records) {
    if (records.empty()) throw RegressError("pca_project: no records");
    Vec means, stds;
    standardization(records, means, stds);
    std::vector<Vec> z;
    z.reserve(records.size());
    for (const TrainingRecord& r : records)
        z.push_back(standardize(r.features.as_vector(), means, stds));
    return pca_of_standardized(z, means, stds);
}

std::vector<RegionCell> export_decision_regions(const RegressionModel& model,
                                                int grid_resolution) {
    if (grid_resolution < 1) throw RegressError("grid resolution must be >= 1");
    double lo1 = kInf, hi1 = -kInf, lo2 = kInf, hi2 = -kInf;
    for (const auto& p : model.pca.projected) {
        lo1 = std::min(lo1, p[0]);
        hi1 = std::max(hi1, p[0]);
        lo2 = std::min(lo2, p[1]);
        hi2 = std::max(hi2, p[1]);
    }
    if (!std::isfinite(lo1)) {
        lo1 = lo2 = -2.5;
        hi1 = hi2 = 2.5;
    }
    const double pad1 = 0.1 * std::max(hi1 - lo1, 1e-6);
    const double pad2 = 0.1 * std::max(hi2 - lo2, 1e-6);
    lo1 -= pad1;
    hi1 += pad1;
    lo2 -= pad2;
    hi2 += pad2;

    std::vector<RegionCell> cells;
    cells.reserve(static_cast<std::size_t>(grid_resolution) * grid_resolution);
    for (int i = 0; i < grid_resolution; ++i) {
        for (int j = 0; j < grid_resolution; ++j) {
            RegionCell cell;
            cell.pc1 = lo1 + (i + 0.5) * (hi1 - lo1) / grid_resolution;
            cell.pc2 = lo2 + (j + 0.5) * (hi2 - lo2) / grid_resolution;
            Vec f(kFeatures);
            for (int k = 0; k < kFeatures; ++k) {
                const double z =
                    cell.pc1 * model.pca.component1[k] + cell.pc2 * model.pca.component2[k];
                f[k] = model.means[k] + model.stds[k] * z;
            }
            const Vec p = predict(model, FeatureVector::from_vector(f));
            int best = 0, second = -1;
            for (int o = 1; o < kOutputs; ++o)
                if (p[o] > p[best]) best = o;
            for (int o = 0; o < kOutputs; ++o) {
                if (o == best) continue;
                if (second < 0 || p[o] > p[second]) second = o;
            }
            cell.pick = kAllMeasures[best];
            cell.confidence = second >= 0 ? p[best] - p[second] : 0.0;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::string regions_to_csv(const std::vector<RegionCell>& cells) {
    std::ostringstream os;
    os.precision(17);
    os << "pc1,pc2,measure,confidence\n";
    for (const RegionCell& c : cells)
        os << c.pc1 << ',' << c.pc2 << ',' << measure_name(c.pick) << ',' << c.confidence
           << '\n';
    return os.str();
}

std::string model_to_json(const RegressionModel& model) {
    nlohmann::json j;
    j["gamma"] = model.gamma;
    j["offset"] = model.offset;
    j["lambda"] = model.lambda;
    j["degree"] = model.degree;
    j["means"] = model.means;
    j["stds"] = model.stds;
    j["inputs"] = model.inputs;
    j["dual_coeffs"] = model.dual_coeffs;
    j["cv_mse"] = model.cv_mse;
    j["pca"] = {{"component1", model.pca.component1},
                {"component2", model.pca.component2},
                {"explained_ratio", model.pca.explained_ratio},
                {"projected", model.pca.projected},
                {"means", model.pca.means},
                {"stds", model.pca.stds}};
    return j.dump(2);
}

RegressionModel model_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        RegressionModel m;
        m.gamma = j.at("gamma").get<double>();
        m.offset = j.at("offset").get<double>();
        m.lambda = j.at("lambda").get<double>();
        m.degree = j.at("degree").get<int>();
        m.means = j.at("means").get<Vec>();
        m.stds = j.at("stds").get<Vec>();
        m.inputs = j.at("inputs").get<std::vector<Vec>>();
        m.dual_coeffs = j.at("dual_coeffs").get<std::vector<Vec>>();
        m.cv_mse = j.at("cv_mse").get<Vec>();
        const auto& p = j.at("pca");
        m.pca.component1 = p.at("component1").get<Vec>();
        m.pca.component2 = p.at("component2").get<Vec>();
        m.pca.explained_ratio = p.at("explained_ratio").get<Vec>();
        m.pca.projected = p.at("projected").get<std::vector<std::array<double, 2>>>();
        m.pca.means = p.at("means").get<Vec>();
        m.pca.stds = p.at("stds").get<Vec>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw RegressError(std::string("invalid model JSON: ") + e.what());
    }
}

std::vector<TrainingRecord> read_training_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw RegressError("empty training CSV");
    std::vector<TrainingRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 15)
            throw RegressError("training CSV rows need 15 fields, got " +
                               std::to_string(fields.size()));
        TrainingRecord r;
        Vec f(5);
        for (int j = 0; j < 5; ++j) f[j] = std::stod(fields[2 + j]);
        r.features = FeatureVector::from_vector(f);
        for (int o = 0; o < 8; ++o) r.targets[o] = std::stod(fields[7 + o]);
        records.push_back(r);
    }
    return records;
}

}  // namespace cutlab
