// cutlab command line: solve instances, run measure benchmarks, train the
// measure-recommendation model, and probe cut dominance.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cutlab/barrier.hpp"
#include "cutlab/bench.hpp"
#include "cutlab/dominance.hpp"
#include "cutlab/json_io.hpp"
#include "cutlab/mps_io.hpp"

namespace {

using namespace cutlab;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

MipInstance load_any(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".mps") return load_mps(path);
    return load_instance(path);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Cut parse_cut_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ModelError("cut spec must look like 'c1,c2,...:rhs', got '" + spec + "'");
    Cut cut;
    for (const std::string& c : split_list(spec.substr(0, colon)))
        cut.coeffs.push_back(std::stod(c));
    cut.rhs = std::stod(spec.substr(colon + 1));
    cut.origin = CutOrigin::User;
    return cut;
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ModelError("cannot write file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

FeatureVector parse_features(const std::string& text) {
    Vec v;
    for (const std::string& f : split_list(text)) v.push_back(std::stod(f));
    return FeatureVector::from_vector(v);
}

int cmd_solve(const std::string& path, const std::string& measure, int rounds, int max_cuts,
              std::uint64_t seed, double density_threshold, const std::string& incumbent_path,
              double time_limit, long node_limit, const std::string& out_path,
              bool with_time) {
    const MipInstance inst = load_any(path);
    SeparationConfig cfg;
    cfg.measure = measure_from_name(measure);
    cfg.rounds = rounds;
    cfg.max_cuts_per_round = max_cuts;
    cfg.seed = seed;
    if (density_threshold > 0) cfg.density_threshold = density_threshold;

    std::optional<Incumbent> incumbent;
    if (!incumbent_path.empty()) {
        incumbent = load_incumbent(incumbent_path);
        if (!is_mip_feasible(inst, incumbent->point))
            throw ModelError("incumbent point is not MIP-feasible for this instance");
    }

    BnbLimits limits;
    limits.time_limit = time_limit;
    limits.node_limit = node_limit;
    const BnbResult res = branch_and_cut(inst, cfg, limits, incumbent);

    ExperimentRecord record;
    record.instance = inst.name;
    record.seed = seed;
    record.variant = measure;
    record.stats = res.stats;
    record.features = res.features;
    record.cuts_added = res.cuts_added;
    record.rounds_executed = static_cast<int>(res.root_reports.size());
    record.rounds = res.root_reports;
    for (const Cut& c : res.root_cuts)
        record.cut_reldens.push_back(relative_density(c, inst.n()));

    write_or_print(out_path, record_to_json(record, with_time));
    std::cerr << "instance " << inst.name << ": status="
              << (res.stats.status == BnbStatus::Optimal
                      ? "optimal"
                      : res.stats.status == BnbStatus::TimeLimit ? "limit" : "infeasible")
              << " nodes=" << res.stats.nodes_processed << " cuts=" << res.cuts_added
              << " time=" << res.stats.solve_time << "s\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutlab: distance-based cut selection laboratory"};
    app.require_subcommand(1);

    // ---- solve ----------------------------------------------------------
    std::string solve_path, solve_measure = "eff", solve_incumbent, solve_out;
    int solve_rounds = 50, solve_max_cuts = 10;
    std::uint64_t solve_seed = 1;
    double solve_density = 0.0, solve_time_limit = 0.0;
    long solve_node_limit = 0;
    bool solve_with_time = false;
    auto* solve = app.add_subcommand("solve", "branch and cut on one instance");
    solve->add_option("instance", solve_path, "instance file (.json or .mps)")->required();
    solve->add_option("--measure", solve_measure, "cut scoring measure");
    solve->add_option("--rounds", solve_rounds, "separation rounds at the root");
    solve->add_option("--max-cuts", solve_max_cuts, "cuts per round");
    solve->add_option("--seed", solve_seed, "pivot/selection seed");
    solve->add_option("--density-threshold", solve_density, "relative density filter in (0,1]");
    solve->add_option("--incumbent", solve_incumbent, "JSON file with a primal point");
    solve->add_option("--time-limit", solve_time_limit, "seconds, 0 = none");
    solve->add_option("--node-limit", solve_node_limit, "node cap, 0 = none");
    solve->add_option("--out", solve_out, "write the record here instead of stdout");
    solve->add_flag("--record-time", solve_with_time,
                    "include wall time in the record (breaks byte determinism)");

    // ---- bench ----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "corpus generation, runs and statistics");
    bench->require_subcommand(1);

    std::string gen_kind = "knapsack", gen_out;
    int gen_count = 10;
    std::uint64_t gen_seed = 1;
    CorpusParams gen_params;
    auto* bench_gen = bench->add_subcommand("gen", "generate a desk-scale corpus");
    bench_gen->add_option("--kind", gen_kind, "knapsack|set_cover|packing|mixed");
    bench_gen->add_option("--count", gen_count, "instances to generate")->required();
    bench_gen->add_option("--out", gen_out, "output directory")->required();
    bench_gen->add_option("--seed", gen_seed, "corpus seed");
    bench_gen->add_option("--n-min", gen_params.n_min);
    bench_gen->add_option("--n-max", gen_params.n_max);
    bench_gen->add_option("--m-min", gen_params.m_min);
    bench_gen->add_option("--m-max", gen_params.m_max);

    std::string run_corpus, run_variants_text =
                                "eff,dcd,exp-improv,a-eff,a-dcd,app-a-dcd,avgeff,mineff";
    std::string run_out = "results.jsonl", run_seeds_text = "1,2,3",
                run_incumbent_mode = "exact";
    int run_jobs = 1, run_rounds = 50, run_max_cuts = 10;
    double run_time_limit = 0.0;
    long run_node_limit = 0;
    bool run_record_times = false;
    auto* bench_run = bench->add_subcommand("run", "run the variant/seed cross product");
    bench_run->add_option("--corpus", run_corpus, "directory of instance .json files")
        ->required();
    bench_run->add_option("--variants", run_variants_text, "comma list (measures, eff-05..)");
    bench_run->add_option("--seeds", run_seeds_text, "comma list of seeds");
    bench_run->add_option("--jobs", run_jobs, "parallel workers");
    bench_run->add_option("--out", run_out, "results store (JSON lines, resumable)");
    bench_run->add_option("--rounds", run_rounds, "separation rounds");
    bench_run->add_option("--max-cuts", run_max_cuts, "cuts per round");
    bench_run->add_option("--time-limit", run_time_limit, "seconds per run, 0 = none");
    bench_run->add_option("--node-limit", run_node_limit, "node cap per run, 0 = none");
    bench_run->add_option("--incumbent-mode", run_incumbent_mode, "exact|heuristic|none");
    bench_run->add_flag("--record-times", run_record_times,
                        "include wall times (breaks byte determinism)");

    std::string stats_in, stats_metric = "nodes", stats_table = "h2h", stats_out;
    std::string stats_variants_text =
        "eff,dcd,exp-improv,a-eff,a-dcd,app-a-dcd,avgeff,mineff";
    bool stats_reciprocal = false;
    auto* bench_stats = bench->add_subcommand("stats", "tables from a results store");
    bench_stats->add_option("--in", stats_in, "results.jsonl")->required();
    bench_stats->add_option("--metric", stats_metric, "nodes|gap|time");
    bench_stats->add_option("--table", stats_table, "h2h|sgm|vbr|targets");
    bench_stats->add_option("--variants", stats_variants_text, "column order");
    bench_stats->add_option("--out", stats_out, "write CSV here instead of stdout");
    bench_stats->add_flag("--reciprocal", stats_reciprocal,
                          "vbr in best-over-value orientation");

    // ---- regress --------------------------------------------------------
    auto* regress = app.add_subcommand("regress", "measure recommendation model");
    regress->require_subcommand(1);

    std::string train_in, train_out = "model.json";
    double train_lambda = 1e-2, train_gamma = 0.2, train_offset = 1.0;
    std::uint64_t train_seed = 1;
    auto* regress_train = regress->add_subcommand("train", "fit kernel ridge regression");
    regress_train->add_option("--in", train_in, "corpus CSV (features + 8 targets)")
        ->required();
    regress_train->add_option("--out", train_out, "model JSON path");
    regress_train->add_option("--lambda", train_lambda, "ridge parameter");
    regress_train->add_option("--gamma", train_gamma, "kernel scale");
    regress_train->add_option("--offset", train_offset, "kernel offset");
    regress_train->add_option("--seed", train_seed, "cross-validation shuffle seed");

    std::string predict_model, predict_features;
    auto* regress_predict = regress->add_subcommand("predict", "predict all 8 targets");
    regress_predict->add_option("--model", predict_model)->required();
    regress_predict->add_option("--features", predict_features, "5 comma-separated values")
        ->required();

    std::string pick_model, pick_features;
    auto* regress_pick = regress->add_subcommand("pick", "recommend a measure");
    regress_pick->add_option("--model", pick_model)->required();
    regress_pick->add_option("--features", pick_features)->required();

    std::string regions_model, regions_out = "regions.csv";
    int regions_resolution = 50;
    auto* regress_regions =
        regress->add_subcommand("regions", "decision regions over the PCA plane");
    regress_regions->add_option("--model", regions_model)->required();
    regress_regions->add_option("--out", regions_out);
    regress_regions->add_option("--resolution", regions_resolution, "grid cells per axis");

    // ---- dominance ------------------------------------------------------
    auto* dominance = app.add_subcommand("dominance", "cut dominance oracle and suites");
    dominance->require_subcommand(1);

    std::string check_instance, check_a, check_b;
    auto* dom_check = dominance->add_subcommand("check", "compare two cuts on an instance");
    dom_check->add_option("--instance", check_instance)->required();
    dom_check->add_option("--cut-a", check_a, "'c1,c2,...:rhs'")->required();
    dom_check->add_option("--cut-b", check_b, "'c1,c2,...:rhs'")->required();

    int suite_count = 1000;
    std::uint64_t suite_seed = 1;
    std::string suite_prop = "all";
    auto* dom_suite = dominance->add_subcommand("suite", "randomized consistency suites");
    dom_suite->add_option("--count", suite_count, "instances per suite");
    dom_suite->add_option("--seed", suite_seed);
    dom_suite->add_option("--prop", suite_prop, "1|1a|2|3|all");

    auto* dom_fig3 = dominance->add_subcommand("fig3", "exp-improv counterexample");
    auto* dom_fig2b = dominance->add_subcommand("fig2b", "infeasible-projection example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_path, solve_measure, solve_rounds, solve_max_cuts,
                             solve_seed, solve_density, solve_incumbent, solve_time_limit,
                             solve_node_limit, solve_out, solve_with_time);

        if (bench_gen->parsed()) {
            const auto corpus = gen_corpus(corpus_kind_from_name(gen_kind), gen_count,
                                           gen_params, gen_seed);
            std::filesystem::create_directories(gen_out);
            for (const MipInstance& inst : corpus)
                save_instance(inst, gen_out + "/" + inst.name + ".json");
            std::cerr << "wrote " << corpus.size() << " instances to " << gen_out << "\n";
            return kExitOk;
        }

        if (bench_run->parsed()) {
            std::vector<MipInstance> corpus;
            std::vector<std::string> files;
            for (const auto& entry : std::filesystem::directory_iterator(run_corpus))
                if (entry.path().extension() == ".json")
                    files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            if (files.empty()) throw ModelError("no .json instances in " + run_corpus);
            for (const std::string& f : files) corpus.push_back(load_instance(f));

            RunMatrixConfig cfg;
            cfg.base.rounds = run_rounds;
            cfg.base.max_cuts_per_round = run_max_cuts;
            cfg.variants = split_list(run_variants_text);
            cfg.seeds.clear();
            for (const std::string& s : split_list(run_seeds_text))
                cfg.seeds.push_back(std::stoull(s));
            cfg.jobs = run_jobs;
            cfg.time_limit = run_time_limit;
            cfg.node_limit = run_node_limit;
            cfg.record_times = run_record_times;
            if (run_incumbent_mode == "exact")
                cfg.incumbent_mode = IncumbentMode::Exact;
            else if (run_incumbent_mode == "heuristic")
                cfg.incumbent_mode = IncumbentMode::Heuristic;
            else if (run_incumbent_mode == "none")
                cfg.incumbent_mode = IncumbentMode::None;
            else
                throw ModelError("unknown incumbent mode '" + run_incumbent_mode + "'");

            const auto records = run_matrix(corpus, cfg, run_out);
            std::cerr << "store " << run_out << " now holds " << records.size()
                      << " records\n";
            return kExitOk;
        }

        if (bench_stats->parsed()) {
            const auto records = read_results(stats_in);
            if (records.empty()) throw ModelError("no records in " + stats_in);
            const auto variants = split_list(stats_variants_text);
            const Metric metric = metric_from_name(stats_metric);
            std::string text;
            if (stats_table == "h2h")
                text = head_to_head_csv(head_to_head(records, variants, metric));
            else if (stats_table == "sgm")
                text = sgm_csv(records, variants, metric);
            else if (stats_table == "vbr")
                text = vbr_csv(virtual_best_ratios(records, variants, metric,
                                                   stats_reciprocal));
            else if (stats_table == "targets")
                text = training_csv(records);
            else
                throw ModelError("unknown table '" + stats_table + "'");
            write_or_print(stats_out, text);
            return kExitOk;
        }

        if (regress_train->parsed()) {
            std::ifstream in(train_in);
            if (!in) throw ModelError("cannot open " + train_in);
            std::ostringstream ss;
            ss << in.rdbuf();
            const auto records = read_training_csv(ss.str());
            const RegressionModel model =
                train(records, train_lambda, train_seed, train_gamma, train_offset);
            write_or_print(train_out, model_to_json(model));
            std::cerr << "trained on " << records.size() << " records; CV MSE per output:";
            for (std::size_t o = 0; o < model.cv_mse.size(); ++o)
                std::cerr << ' ' << measure_name(kAllMeasures[o]) << '='
                          << model.cv_mse[o];
            std::cerr << "\n";
            return kExitOk;
        }

        if (regress_predict->parsed() || regress_pick->parsed()) {
            const bool picking = regress_pick->parsed();
            const std::string model_path = picking ? pick_model : predict_model;
            std::ifstream in(model_path);
            if (!in) throw ModelError("cannot open " + model_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            const RegressionModel model = model_from_json(ss.str());
            const FeatureVector f =
                parse_features(picking ? pick_features : predict_features);
            if (picking) {
                std::cout << measure_name(pick_measure(model, f)) << "\n";
            } else {
                const Vec p = predict(model, f);
                nlohmann::ordered_json j;
                for (std::size_t o = 0; o < p.size(); ++o)
                    j[measure_name(kAllMeasures[o])] = p[o];
                std::cout << j.dump() << "\n";
            }
            return kExitOk;
        }

        if (regress_regions->parsed()) {
            std::ifstream in(regions_model);
            if (!in) throw ModelError("cannot open " + regions_model);
            std::ostringstream ss;
            ss << in.rdbuf();
            const RegressionModel model = model_from_json(ss.str());
            write_or_print(regions_out,
                           regions_to_csv(export_decision_regions(model, regions_resolution)));
            return kExitOk;
        }

        if (dom_check->parsed()) {
            const MipInstance inst = load_any(check_instance);
            const Cut a = parse_cut_spec(check_a);
            const Cut b = parse_cut_spec(check_b);
            const DominanceResult r = check_dominance(inst, {}, a, b);
            nlohmann::ordered_json j;
            j["verdict"] = verdict_name(r.verdict);
            j["max_b_where_a_holds"] = r.max_b_where_a_holds;
            j["max_a_where_b_holds"] = r.max_a_where_b_holds;
            if (r.only_cut_by_a) j["witness_only_cut_by_a"] = *r.only_cut_by_a;
            if (r.only_cut_by_b) j["witness_only_cut_by_b"] = *r.only_cut_by_b;
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (dom_suite->parsed()) {
            nlohmann::ordered_json j;
            auto emit = [&](const std::string& name, const SuiteResult& r) {
                j[name] = {{"instances", r.instances},
                           {"pairs_checked", r.pairs_checked},
                           {"hypothesis_failures", r.hypothesis_failures},
                           {"violations", r.violations}};
            };
            if (suite_prop == "1" || suite_prop == "all")
                emit("prop1_eff", run_prop1_suite(suite_count, suite_seed));
            if (suite_prop == "1a" || suite_prop == "all")
                emit("prop1_a_eff", run_prop1_suite(suite_count, suite_seed + 1, true));
            if (suite_prop == "2" || suite_prop == "all")
                emit("prop2_mineff", run_prop2_suite(suite_count, suite_seed + 2));
            if (suite_prop == "3" || suite_prop == "all")
                emit("prop3_directed", run_prop3_suite(suite_count, suite_seed + 3));
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (dom_fig3->parsed() || dom_fig2b->parsed()) {
            const Counterexample ex =
                dom_fig3->parsed() ? build_fig3_counterexample() : build_fig2b_counterexample();
            const auto scorer = [&](const Cut& c) {
                return dom_fig3->parsed() ? score_exp_improv(c, ex.x_lp, ex.objective)
                                          : score_eff(c, ex.x_lp);
            };
            const auto report =
                check_consistency(ex.instance, {}, {ex.dashed, ex.dotted}, scorer);
            const DominanceResult dom = check_dominance(ex.instance, {}, ex.dashed, ex.dotted);
            nlohmann::ordered_json j;
            j["instance"] = nlohmann::json::parse(instance_to_json(ex.instance));
            j["x_lp"] = ex.x_lp;
            j["dashed"] = {{"coeffs", ex.dashed.coeffs}, {"rhs", ex.dashed.rhs}};
            j["dotted"] = {{"coeffs", ex.dotted.coeffs}, {"rhs", ex.dotted.rhs}};
            j["dashed_dominates_dotted"] = dom.verdict == DominanceVerdict::ADominatesB;
            j["scores"] = {{"dashed", scorer(ex.dashed)}, {"dotted", scorer(ex.dotted)}};
            j["violations_found"] = report.violations.size();
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const BarrierError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
