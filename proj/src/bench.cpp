#include "cutlab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <atomic>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cutlab/measures.hpp"
#include "cutlab/simplex.hpp"

namespace cutlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string bnb_status_name(BnbStatus s) {
    switch (s) {
        case BnbStatus::Optimal: return "optimal";
        case BnbStatus::TimeLimit: return "limit";
        case BnbStatus::Infeasible: return "infeasible";
    }
    return "?";
}

BnbStatus bnb_status_from_name(const std::string& s) {
    if (s == "optimal") return BnbStatus::Optimal;
    if (s == "limit") return BnbStatus::TimeLimit;
    if (s == "infeasible") return BnbStatus::Infeasible;
    throw ModelError("unknown status '" + s + "' in record");
}

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double null_or_inf(const nlohmann::json& v, double sign = 1.0) {
    if (v.is_null()) return sign * kInf;
    return v.get<double>();
}

std::string record_key(const std::string& instance, std::uint64_t seed,
                       const std::string& variant) {
    return instance + "|" + std::to_string(seed) + "|" + variant;
}

}  // namespace

CorpusKind corpus_kind_from_name(const std::string& name) {
    if (name == "knapsack") return CorpusKind::Knapsack;
    if (name == "set_cover") return CorpusKind::SetCover;
    if (name == "packing") return CorpusKind::Packing;
    if (name == "mixed") return CorpusKind::Mixed;
    throw ModelError("unknown corpus kind '" + name + "'");
}

std::string corpus_kind_name(CorpusKind kind) {
    switch (kind) {
        case CorpusKind::Knapsack: return "knapsack";
        case CorpusKind::SetCover: return "set_cover";
        case CorpusKind::Packing: return "packing";
        case CorpusKind::Mixed: return "mixed";
    }
    return "?";
}

namespace {

MipInstance sample_instance(CorpusKind kind, const CorpusParams& p, Rng& rng, int index,
                            std::uint64_t seed) {
    const int n = p.n_min + rng.next_int(std::max(1, p.n_max - p.n_min + 1));
    MipInstance inst;
    inst.objective.assign(n, 0.0);
    inst.lower.assign(n, 0.0);
    inst.upper.assign(n, 1.0);
    inst.integer_set.resize(n);
    for (int j = 0; j < n; ++j) inst.integer_set[j] = j;

    std::vector<Vec> rows;
    Vec rhs;
    std::vector<RowKind> kinds;

    auto knapsack_row = [&]() {
        Vec a(n, 0.0);
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            a[j] = static_cast<double>(1 + rng.next_int(p.coeff_max));
            total += a[j];
        }
        rows.push_back(a);
        rhs.push_back(std::floor(total * rng.next_range(0.35, 0.65)) + 0.5);
        kinds.push_back(RowKind::LE);
    };
    auto cover_row = [&]() {
        Vec a(n, 0.0);
        const int size = 2 + rng.next_int(std::min(4, n - 1));
        for (int k = 0; k < size; ++k) a[rng.next_int(n)] = -1.0;
        rows.push_back(a);
        rhs.push_back(-1.0);
        kinds.push_back(RowKind::LE);
    };
    auto packing_row = [&]() {
        Vec a(n, 0.0);
        const int size = 2 + rng.next_int(std::min(3, n - 1));
        int placed = 0;
        while (placed < size) {
            const int j = rng.next_int(n);
            if (a[j] == 0.0) {
                a[j] = 1.0;
                ++placed;
            }
        }
        rows.push_back(a);
        rhs.push_back(1.0);
        kinds.push_back(RowKind::LE);
    };

    const int m = p.m_min + rng.next_int(std::max(1, p.m_max - p.m_min + 1));
    switch (kind) {
        case CorpusKind::Knapsack:
            for (int i = 0; i < m; ++i) knapsack_row();
            for (int j = 0; j < n; ++j)
                inst.objective[j] = -static_cast<double>(1 + rng.next_int(p.coeff_max));
            break;
        case CorpusKind::SetCover:
            for (int i = 0; i < m; ++i) cover_row();
            for (int j = 0; j < n; ++j)
                inst.objective[j] = static_cast<double>(1 + rng.next_int(p.coeff_max));
            break;
        case CorpusKind::Packing:
            for (int i = 0; i < m; ++i) packing_row();
            for (int j = 0; j < n; ++j)
                inst.objective[j] = -static_cast<double>(1 + rng.next_int(p.coeff_max));
            break;
        case CorpusKind::Mixed: {
            // choose-one groups as equality rows, then a knapsack budget that
            // keeps the per-group minima affordable
            const int groups = std::max(1, n / 5);
            Vec weights(n);
            for (int j = 0; j < n; ++j)
                weights[j] = static_cast<double>(1 + rng.next_int(p.coeff_max));
            double must_carry = 0.0;
            for (int g = 0; g < groups; ++g) {
                Vec a(n, 0.0);
                double group_min = kInf;
                for (int k = 0; k < 3; ++k) {
                    const int j = g * 3 + k;
                    if (j >= n) break;
                    a[j] = 1.0;
                    group_min = std::min(group_min, weights[j]);
                }
                rows.push_back(a);
                rhs.push_back(1.0);
                kinds.push_back(RowKind::EQ);
                if (std::isfinite(group_min)) must_carry += group_min;
            }
            Vec a = weights;
            double total = 0.0;
            for (double w : weights) total += w;
            rows.push_back(a);
            rhs.push_back(std::max(must_carry, std::floor(total * 0.45)) + 0.5);
            kinds.push_back(RowKind::LE);
            for (int j = 0; j < n; ++j)
                inst.objective[j] = -static_cast<double>(1 + rng.next_int(p.coeff_max));
            break;
        }
    }

    const int mm = static_cast<int>(rows.size());
    inst.rows = Matrix(mm, n);
    for (int i = 0; i < mm; ++i)
        for (int j = 0; j < n; ++j) inst.rows(i, j) = rows[i][j];
    inst.rhs = std::move(rhs);
    inst.row_kind = std::move(kinds);
    std::ostringstream name;
    name << corpus_kind_name(kind) << "_n" << n << "_s" << seed << "_i" << index;
    inst.name = name.str();
    inst.validate();
    return inst;
}

bool root_is_fractional(const MipInstance& inst) {
    const LpOutcome lp = solve_lp(inst);
    if (lp.status != LpStatus::Optimal) return false;
    for (int j : inst.integer_set) {
        const double f = lp.point[j] - std::floor(lp.point[j]);
        if (f > 1e-6 && f < 1.0 - 1e-6) return true;
    }
    return false;
}

}  // namespace

std::vector<MipInstance> gen_corpus(CorpusKind kind, int count, const CorpusParams& params,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<MipInstance> corpus;
    corpus.reserve(count);
    for (int i = 0; i < count; ++i) {
        MipInstance inst = sample_instance(kind, params, rng, i, seed);
        for (int attempt = 0; attempt < 60 && !root_is_fractional(inst); ++attempt)
            inst = sample_instance(kind, params, rng, i, seed);
        corpus.push_back(std::move(inst));
    }
    return corpus;
}

VariantSpec parse_variant(const std::string& name) {
    VariantSpec spec;
    spec.name = name;
    if (name.rfind("eff-", 0) == 0) {
        const std::string suffix = name.substr(4);
        spec.measure = MeasureKind::Eff;
        if (suffix == "05")
            spec.density_threshold = 0.05;
        else if (suffix == "10")
            spec.density_threshold = 0.10;
        else if (suffix == "20")
            spec.density_threshold = 0.20;
        else if (suffix == "40")
            spec.density_threshold = 0.40;
        else if (suffix == "80")
            spec.density_threshold = 0.80;
        else
            throw ModelError("unknown density variant '" + name + "'");
        return spec;
    }
    spec.measure = measure_from_name(name);
    return spec;
}

std::string record_to_json(const ExperimentRecord& r, bool with_time) {
    ordered_json j;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["variant"] = r.variant;
    j["status"] = bnb_status_name(r.stats.status);
    j["nodes"] = r.stats.nodes_processed;
    j["lp_iterations"] = r.stats.lp_iterations_total;
    j["primal_bound"] = finite_or_null(r.stats.primal_bound);
    j["dual_bound"] = finite_or_null(r.stats.dual_bound);
    j["gap_after_root"] = finite_or_null(r.stats.gap_after_root);
    j["cuts_added"] = r.cuts_added;
    j["rounds_executed"] = r.rounds_executed;
    j["features"] = {{"dual_deg", r.features.dual_degeneracy},
                     {"primal_deg", r.features.primal_degeneracy},
                     {"frac", r.features.fractionality},
                     {"thin", r.features.thinness},
                     {"density", r.features.density}};
    ordered_json rounds = ordered_json::array();
    for (const RoundReport& rr : r.rounds) {
        rounds.push_back({{"round", rr.round},
                          {"candidates", rr.candidates_generated},
                          {"after_filter", rr.candidates_after_filter},
                          {"added", rr.cuts_added},
                          {"lp_value", finite_or_null(rr.lp_value_after)},
                          {"center_recomputed", rr.center_recomputed},
                          {"measure_fallback", rr.measure_fallback}});
    }
    j["rounds"] = std::move(rounds);
    j["cut_reldens"] = r.cut_reldens;
    if (with_time) j["solve_time"] = r.stats.solve_time;
    return j.dump();
}

ExperimentRecord record_from_json(const std::string& line) {
    try {
        const nlohmann::json j = nlohmann::json::parse(line);
        ExperimentRecord r;
        r.instance = j.at("instance").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.variant = j.at("variant").get<std::string>();
        r.stats.status = bnb_status_from_name(j.at("status").get<std::string>());
        r.stats.nodes_processed = j.at("nodes").get<long>();
        r.stats.lp_iterations_total = j.at("lp_iterations").get<long>();
        r.stats.primal_bound = null_or_inf(j.at("primal_bound"));
        r.stats.dual_bound = null_or_inf(j.at("dual_bound"), -1.0);
        r.stats.gap_after_root = null_or_inf(j.at("gap_after_root"));
        r.cuts_added = j.at("cuts_added").get<int>();
        r.rounds_executed = j.at("rounds_executed").get<int>();
        const auto& f = j.at("features");
        r.features.dual_degeneracy = f.at("dual_deg").get<double>();
        r.features.primal_degeneracy = f.at("primal_deg").get<double>();
        r.features.fractionality = f.at("frac").get<double>();
        r.features.thinness = f.at("thin").get<double>();
        r.features.density = f.at("density").get<double>();
        for (const auto& rr : j.at("rounds")) {
            RoundReport report;
            report.round = rr.at("round").get<int>();
            report.candidates_generated = rr.at("candidates").get<int>();
            report.candidates_after_filter = rr.at("after_filter").get<int>();
            report.cuts_added = rr.at("added").get<int>();
            report.lp_value_after = null_or_inf(rr.at("lp_value"));
            report.center_recomputed = rr.at("center_recomputed").get<bool>();
            report.measure_fallback = rr.at("measure_fallback").get<bool>();
            r.rounds.push_back(report);
        }
        r.cut_reldens = j.at("cut_reldens").get<std::vector<double>>();
        if (j.contains("solve_time")) r.stats.solve_time = j.at("solve_time").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("invalid record JSON: ") + e.what());
    }
}

std::vector<ExperimentRecord> read_results(const std::string& path) {
    std::ifstream in(path);
    std::vector<ExperimentRecord> records;
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json(line));
    }
    return records;
}

namespace {

std::optional<Incumbent> make_incumbent(const MipInstance& inst, IncumbentMode mode) {
    if (mode == IncumbentMode::None) return std::nullopt;
    if (mode == IncumbentMode::Exact) {
        const BruteForceResult bf = brute_force_optimum(inst);
        if (bf.status != BnbStatus::Optimal) return std::nullopt;
        Incumbent inc;
        inc.point = bf.point;
        inc.value = bf.value;
        inc.source = IncumbentSource::Provided;
        return inc;
    }
    // heuristic: cheap candidate points, first MIP-feasible wins
    std::vector<Vec> candidates;
    Vec zeros(inst.n(), 0.0);
    for (int j = 0; j < inst.n(); ++j)
        zeros[j] = std::clamp(0.0, inst.lower[j], inst.upper[j]);
    candidates.push_back(zeros);
    Vec los(inst.n()), ups(inst.n());
    for (int j = 0; j < inst.n(); ++j) {
        los[j] = std::isfinite(inst.lower[j]) ? inst.lower[j] : 0.0;
        ups[j] = std::isfinite(inst.upper[j]) ? inst.upper[j] : 0.0;
    }
    candidates.push_back(los);
    candidates.push_back(ups);
    const LpOutcome lp = solve_lp(inst);
    if (lp.status == LpStatus::Optimal) {
        Vec rounded = lp.point;
        for (int j : inst.integer_set) rounded[j] = std::round(rounded[j]);
        candidates.push_back(rounded);
    }
    for (const Vec& x : candidates) {
        if (!is_mip_feasible(inst, x)) continue;
        Incumbent inc;
        inc.point = x;
        inc.value = dot(inst.objective, x);
        inc.source = IncumbentSource::Provided;
        return inc;
    }
    return std::nullopt;
}

ExperimentRecord run_one(const MipInstance& inst, const VariantSpec& variant,
                         std::uint64_t seed, const RunMatrixConfig& cfg,
                         const std::optional<Incumbent>& incumbent) {
    SeparationConfig sep = cfg.base;
    sep.measure = variant.measure;
    sep.density_threshold = variant.density_threshold;
    sep.seed = seed;

    BnbLimits limits;
    limits.time_limit = cfg.time_limit;
    limits.node_limit = cfg.node_limit;

    const BnbResult res = branch_and_cut(inst, sep, limits, incumbent);

    ExperimentRecord record;
    record.instance = inst.name;
    record.seed = seed;
    record.variant = variant.name;
    record.stats = res.stats;
    record.features = res.features;
    record.cuts_added = res.cuts_added;
    record.rounds_executed = static_cast<int>(res.root_reports.size());
    record.rounds = res.root_reports;
    record.cut_reldens.reserve(res.root_cuts.size());
    for (const Cut& c : res.root_cuts)
        record.cut_reldens.push_back(relative_density(c, inst.n()));
    return record;
}

}  // namespace

std::vector<ExperimentRecord> run_matrix(const std::vector<MipInstance>& corpus,
                                         const RunMatrixConfig& cfg,
                                         const std::string& store_path) {
    std::vector<ExperimentRecord> existing = read_results(store_path);
    std::set<std::string> done;
    for (const ExperimentRecord& r : existing)
        done.insert(record_key(r.instance, r.seed, r.variant));

    struct Task {
        const MipInstance* inst;
        VariantSpec variant;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const MipInstance& inst : corpus) {
        for (const std::string& vname : cfg.variants) {
            const VariantSpec variant = parse_variant(vname);
            for (std::uint64_t seed : cfg.seeds) {
                if (done.count(record_key(inst.name, seed, vname))) continue;
                tasks.push_back({&inst, variant, seed});
            }
        }
    }

    // incumbents are per instance; compute each once up front
    std::map<const MipInstance*, std::optional<Incumbent>> incumbents;
    for (const Task& t : tasks)
        if (!incumbents.count(t.inst))
            incumbents[t.inst] = make_incumbent(*t.inst, cfg.incumbent_mode);

    std::vector<std::optional<ExperimentRecord>> results(tasks.size());
    std::ofstream store;
    std::mutex store_mutex;
    if (!store_path.empty()) {
        store.open(store_path, std::ios::app);
        if (!store) throw ModelError("cannot open results store: " + store_path);
    }

    auto run_task = [&](std::size_t idx) {
        const Task& t = tasks[idx];
        ExperimentRecord rec = run_one(*t.inst, t.variant, t.seed, cfg, incumbents[t.inst]);
        if (!store_path.empty()) {
            const std::string line = record_to_json(rec, cfg.record_times);
            std::lock_guard<std::mutex> lock(store_mutex);
            store << line << "\n";
            store.flush();
        }
        results[idx] = std::move(rec);
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (auto& r : results)
        if (r) existing.push_back(std::move(*r));
    return existing;
}

Metric metric_from_name(const std::string& name) {
    if (name == "nodes") return Metric::Nodes;
    if (name == "gap") return Metric::Gap;
    if (name == "time") return Metric::Time;
    throw ModelError("unknown metric '" + name + "'");
}

namespace {

double metric_value(const ExperimentRecord& r, Metric metric) {
    switch (metric) {
        case Metric::Nodes: return static_cast<double>(r.stats.nodes_processed);
        case Metric::Gap: return r.stats.gap_after_root;
        case Metric::Time: return r.stats.solve_time;
    }
    return 0.0;
}

/// instance -> variant -> seed -> value
using Grouped = std::map<std::string, std::map<std::string, std::map<std::uint64_t, double>>>;

Grouped group_records(const std::vector<ExperimentRecord>& records, Metric metric,
                      std::map<std::string, bool>* limit_map) {
    Grouped g;
    for (const ExperimentRecord& r : records) {
        g[r.instance][r.variant][r.seed] = metric_value(r, metric);
        if (limit_map && r.stats.status == BnbStatus::TimeLimit) (*limit_map)[r.instance] = true;
    }
    return g;
}

}  // namespace

HeadToHead head_to_head(const std::vector<ExperimentRecord>& records,
                        const std::vector<std::string>& variants, Metric metric) {
    std::map<std::string, bool> limited;
    const Grouped g = group_records(records, metric, &limited);

    const int k = static_cast<int>(variants.size());
    HeadToHead table;
    table.variants = variants;
    table.win = Matrix(k, k, 0.0);
    table.loss = Matrix(k, k, 0.0);

    int considered = 0;
    Matrix wins(k, k, 0.0);
    for (const auto& [instance, per_variant] : g) {
        if (metric == Metric::Nodes && limited.count(instance)) continue;
        bool complete = true;
        for (const std::string& v : variants) {
            auto it = per_variant.find(v);
            if (it == per_variant.end() || it->second.empty()) complete = false;
            if (complete)
                for (const auto& [seed, value] : it->second)
                    if (!std::isfinite(value)) complete = false;
        }
        if (!complete) continue;
        ++considered;
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                const auto& vi = per_variant.at(variants[i]);
                const auto& vj = per_variant.at(variants[j]);
                bool at_least_as_good = true, strictly_better = false;
                for (const auto& [seed, value] : vi) {
                    auto jt = vj.find(seed);
                    if (jt == vj.end()) {
                        at_least_as_good = false;
                        break;
                    }
                    if (value > jt->second + 1e-12) at_least_as_good = false;
                    if (value < jt->second - 1e-12) strictly_better = true;
                }
                if (at_least_as_good && strictly_better) wins(i, j) += 1.0;
            }
        }
    }
    table.instances_considered = considered;
    if (considered > 0) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                table.win(i, j) = wins(i, j) / considered;
                table.loss(i, j) = wins(j, i) / considered;
            }
    }
    return table;
}

double shifted_geo_mean(const std::vector<double>& values, double shift) {
    if (values.empty()) throw ModelError("shifted_geo_mean: no values");
    double acc = 0.0;
    for (double v : values) {
        const double arg = v + shift;
        if (arg <= 0.0) throw ModelError("shifted_geo_mean: value + shift must be positive");
        acc += std::log(arg);
    }
    return std::exp(acc / values.size()) - shift;
}

VirtualBestTable virtual_best_ratios(const std::vector<ExperimentRecord>& records,
                                     const std::vector<std::string>& variants, Metric metric,
                                     bool reciprocal) {
    const Grouped g = group_records(records, metric, nullptr);
    VirtualBestTable table;
    table.variants = variants;

    std::vector<std::vector<double>> rows;
    for (const auto& [instance, per_variant] : g) {
        std::vector<double> averages;
        bool complete = true;
        for (const std::string& v : variants) {
            auto it = per_variant.find(v);
            if (it == per_variant.end() || it->second.empty()) {
                complete = false;
                break;
            }
            double mean = 0.0;
            for (const auto& [seed, value] : it->second) {
                if (!std::isfinite(value)) complete = false;
                mean += value;
            }
            if (!complete) break;
            averages.push_back(mean / it->second.size());
        }
        if (!complete) continue;
        const double best = *std::min_element(averages.begin(), averages.end());
        std::vector<double> row;
        for (double v : averages) {
            if (best <= 0.0)
                row.push_back(reciprocal ? 1.0 : 1.0);  // degenerate all-zero row
            else
                row.push_back(reciprocal ? best / v : v / best);
        }
        table.instances.push_back(instance);
        rows.push_back(std::move(row));
    }

    table.ratios = Matrix(rows.size(), variants.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < variants.size(); ++j) table.ratios(i, j) = rows[i][j];
    return table;
}

std::vector<TrainingRecord> training_records(const std::vector<ExperimentRecord>& records) {
    std::vector<std::string> measures;
    for (MeasureKind k : kAllMeasures) measures.push_back(measure_name(k));

    // (instance, seed) -> measure -> record
    std::map<std::pair<std::string, std::uint64_t>, std::map<std::string, const ExperimentRecord*>>
        pairs;
    for (const ExperimentRecord& r : records) pairs[{r.instance, r.seed}][r.variant] = &r;

    std::vector<TrainingRecord> out;
    for (const auto& [key, by_variant] : pairs) {
        bool complete = true;
        double vb = kInf;
        for (const std::string& m : measures) {
            auto it = by_variant.find(m);
            if (it == by_variant.end() || it->second->stats.status != BnbStatus::Optimal) {
                complete = false;
                break;
            }
            vb = std::min(vb, static_cast<double>(it->second->stats.nodes_processed));
        }
        if (!complete || !std::isfinite(vb) || vb <= 0) continue;
        TrainingRecord tr;
        tr.features = by_variant.begin()->second->features;
        for (int o = 0; o < 8; ++o) {
            const ExperimentRecord* r = by_variant.at(measures[o]);
            tr.targets[o] = vb / static_cast<double>(r->stats.nodes_processed);
        }
        out.push_back(tr);
    }
    return out;
}

std::string training_csv(const std::vector<ExperimentRecord>& records) {
    std::vector<std::string> measures;
    for (MeasureKind k : kAllMeasures) measures.push_back(measure_name(k));
    std::map<std::pair<std::string, std::uint64_t>, std::map<std::string, const ExperimentRecord*>>
        pairs;
    for (const ExperimentRecord& r : records) pairs[{r.instance, r.seed}][r.variant] = &r;

    std::ostringstream os;
    os.precision(17);
    os << kCorpusCsvHeader << "\n";
    for (const auto& [key, by_variant] : pairs) {
        bool complete = true;
        double vb = kInf;
        for (const std::string& m : measures) {
            auto it = by_variant.find(m);
            if (it == by_variant.end() || it->second->stats.status != BnbStatus::Optimal) {
                complete = false;
                break;
            }
            vb = std::min(vb, static_cast<double>(it->second->stats.nodes_processed));
        }
        if (!complete || !std::isfinite(vb) || vb <= 0) continue;
        const FeatureVector& f = by_variant.begin()->second->features;
        os << key.first << ',' << key.second << ',' << f.dual_degeneracy << ','
           << f.primal_degeneracy << ',' << f.fractionality << ',' << f.thinness << ','
           << f.density;
        for (const std::string& m : measures)
            os << ','
               << vb / static_cast<double>(by_variant.at(m)->stats.nodes_processed);
        os << "\n";
    }
    return os.str();
}

std::string head_to_head_csv(const HeadToHead& table) {
    std::ostringstream os;
    os.precision(17);
    os << "variant";
    for (const std::string& v : table.variants) os << ',' << v << "_win," << v << "_loss";
    os << "\n";
    for (std::size_t i = 0; i < table.variants.size(); ++i) {
        os << table.variants[i];
        for (std::size_t j = 0; j < table.variants.size(); ++j)
            os << ',' << table.win(i, j) << ',' << table.loss(i, j);
        os << "\n";
    }
    return os.str();
}

std::string sgm_csv(const std::vector<ExperimentRecord>& records,
                    const std::vector<std::string>& variants, Metric metric) {
    const double shift = metric == Metric::Nodes ? 10.0 : 1.0;
    std::map<std::string, std::vector<double>> values;
    for (const ExperimentRecord& r : records) {
        const double v = metric_value(r, metric);
        if (std::isfinite(v)) values[r.variant].push_back(v);
    }
    std::ostringstream os;
    os.precision(17);
    os << "variant,shifted_geo_mean,shift,count\n";
    for (const std::string& v : variants) {
        auto it = values.find(v);
        if (it == values.end() || it->second.empty()) continue;
        os << v << ',' << shifted_geo_mean(it->second, shift) << ',' << shift << ','
           << it->second.size() << "\n";
    }
    return os.str();
}

std::string vbr_csv(const VirtualBestTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "instance";
    for (const std::string& v : table.variants) os << ',' << v;
    os << "\n";
    for (std::size_t i = 0; i < table.instances.size(); ++i) {
        os << table.instances[i];
        for (std::size_t j = 0; j < table.variants.size(); ++j) os << ',' << table.ratios(i, j);
        os << "\n";
    }
    return os.str();
}

}  // namespace cutlab
