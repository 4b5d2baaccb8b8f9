#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cutlab/features.hpp"
#include "cutlab/measures.hpp"
#include "cutlab/model.hpp"

namespace cutlab {

class RegressError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One (instance, seed) pair: features plus the per-measure relative
/// performance targets in (0,1], virtual-best nodes over this measure's
/// nodes; the virtual best itself scores 1.
struct TrainingRecord {
    FeatureVector features;
    std::array<double, 8> targets{};  // MeasureKind declaration order
};

struct PcaResult {
    Vec component1, component2;  // unit loadings over the 5 features
    Vec explained_ratio;         // all 5 ratios, non-increasing
    std::vector<std::array<double, 2>> projected;
    Vec means, stds;
};

/// Kernel ridge regression with the cubic polynomial kernel
/// k(x,y) = (gamma x.y + offset)^3 per output, over standardized features.
struct RegressionModel {
    double gamma = 0.2;  // 1 / number of features
    double offset = 1.0;
    double lambda = 1e-2;
    int degree = 3;
    Vec means, stds;                 // per-feature standardization
    std::vector<Vec> inputs;         // standardized training inputs
    std::vector<Vec> dual_coeffs;    // one coefficient vector per output
    Vec cv_mse;                      // 5-fold cross-validation MSE per output
    PcaResult pca;                   // of the training features, for regions
};

RegressionModel train(const std::vector<TrainingRecord>& records, double lambda = 1e-2,
                      std::uint64_t seed = 1, double gamma = 0.2, double offset = 1.0);

/// Predicted targets in MeasureKind declaration order.
Vec predict(const RegressionModel& model, const FeatureVector& features);

/// Argmax over predictions; exact ties resolve to declaration order.
MeasureKind pick_measure(const RegressionModel& model, const FeatureVector& features);

PcaResult pca_project(const std::vector<TrainingRecord>& records);

struct RegionCell {
    double pc1 = 0.0, pc2 = 0.0;
    MeasureKind pick = MeasureKind::Eff;
    double confidence = 0.0;  // best predicted target minus the runner-up
};

/// PC-plane grid inverse-mapped to feature space (remaining components mean
/// completed), one pick_measure evaluation per cell, row-major in pc2 then
/// pc1. Grid bounds come from the projected training points plus a margin.
std::vector<RegionCell> export_decision_regions(const RegressionModel& model,
                                                int grid_resolution);

std::string regions_to_csv(const std::vector<RegionCell>& cells);

std::string model_to_json(const RegressionModel& model);
RegressionModel model_from_json(const std::string& text);

/// Corpus CSV: instance,seed,<5 features>,<8 targets by measure name>.
inline constexpr const char* kCorpusCsvHeader =
    "instance,seed,dual_deg,primal_deg,frac,thin,density,"
    "eff,dcd,exp-improv,a-eff,a-dcd,app-a-dcd,avgeff,mineff";
std::vector<TrainingRecord> read_training_csv(const std::string& text);

}  // namespace cutlab
