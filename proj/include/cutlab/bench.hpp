#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/bnb.hpp"
#include "cutlab/regress.hpp"

namespace cutlab {

enum class CorpusKind { Knapsack, SetCover, Packing, Mixed };

CorpusKind corpus_kind_from_name(const std::string& name);
std::string corpus_kind_name(CorpusKind kind);

struct CorpusParams {
    int n_min = 6, n_max = 16;
    int m_min = 2, m_max = 6;
    int coeff_max = 9;
};

/// Feasible, bounded instances; each is resampled until its root LP is
/// fractional (capped), so the corpus fractionality rate stays >= 80%.
std::vector<MipInstance> gen_corpus(CorpusKind kind, int count, const CorpusParams& params,
                                    std::uint64_t seed);

/// A measure name or a density-filtered efficacy variant "eff-05".."eff-80".
struct VariantSpec {
    std::string name;
    MeasureKind measure = MeasureKind::Eff;
    std::optional<double> density_threshold;
};
VariantSpec parse_variant(const std::string& name);
inline const std::vector<std::string> kDensityVariants = {"eff-05", "eff-10", "eff-20",
                                                          "eff-40", "eff-80"};

struct ExperimentRecord {
    std::string instance;
    std::uint64_t seed = 0;
    std::string variant;
    NodeStats stats;  // solve_time only serialized when times are recorded
    FeatureVector features;
    int cuts_added = 0;
    int rounds_executed = 0;
    std::vector<RoundReport> rounds;
    std::vector<double> cut_reldens;  // relative density of every added cut
};

std::string record_to_json(const ExperimentRecord& record, bool with_time = false);
ExperimentRecord record_from_json(const std::string& line);

std::vector<ExperimentRecord> read_results(const std::string& path);  // empty if absent

enum class IncumbentMode { Exact, Heuristic, None };

struct RunMatrixConfig {
    SeparationConfig base;  // measure/threshold/seed overridden per task
    std::vector<std::string> variants;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    double time_limit = 0.0;
    long node_limit = 0;
    int jobs = 1;
    IncumbentMode incumbent_mode = IncumbentMode::Exact;
    bool record_times = false;
};

/// Cross product corpus x variants x seeds. Records already present in the
/// store are skipped; new ones are appended as they complete. Returns the
/// full record set (existing plus new).
std::vector<ExperimentRecord> run_matrix(const std::vector<MipInstance>& corpus,
                                         const RunMatrixConfig& cfg,
                                         const std::string& store_path);

enum class Metric { Nodes, Gap, Time };
Metric metric_from_name(const std::string& name);

struct HeadToHead {
    std::vector<std::string> variants;
    Matrix win;   // entry (i,j): fraction of instances where i beats j
    Matrix loss;  // entry (i,j) == win(j,i) exactly
    int instances_considered = 0;
};

/// A variant beats another on an instance when it is at least as good on
/// every seed and strictly better on at least one. For the node metric,
/// instances where any variant hit a limit are excluded.
HeadToHead head_to_head(const std::vector<ExperimentRecord>& records,
                        const std::vector<std::string>& variants, Metric metric);

/// exp(mean(log(v + shift))) - shift; every v + shift must be positive.
double shifted_geo_mean(const std::vector<double>& values, double shift);

struct VirtualBestTable {
    std::vector<std::string> instances;
    std::vector<std::string> variants;
    Matrix ratios;  // per instance row: seed-averaged metric over the row best
};

/// Seed-averaged metric per (instance, variant) divided by the row minimum,
/// so the best variant scores 1 and the rest >= 1. With reciprocal=true the
/// orientation flips to best-over-value in (0,1] (regression targets).
VirtualBestTable virtual_best_ratios(const std::vector<ExperimentRecord>& records,
                                     const std::vector<std::string>& variants, Metric metric,
                                     bool reciprocal = false);

/// Per (instance, seed) regression rows over the eight plain measures:
/// features plus virtual-best nodes divided by each measure's nodes.
std::vector<TrainingRecord> training_records(const std::vector<ExperimentRecord>& records);
std::string training_csv(const std::vector<ExperimentRecord>& records);

std::string head_to_head_csv(const HeadToHead& table);
std::string sgm_csv(const std::vector<ExperimentRecord>& records,
                    const std::vector<std::string>& variants, Metric metric);
std::string vbr_csv(const VirtualBestTable& table);

}  // namespace cutlab
