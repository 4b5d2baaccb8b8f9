#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutlab/barrier.hpp"
#include "cutlab/bench.hpp"
#include "cutlab/dominance.hpp"
#include "cutlab/json_io.hpp"
#include "cutlab/mps_io.hpp"

namespace py = pybind11;
using namespace cutlab;

namespace {

SeparationConfig make_config(const std::string& measure, int rounds, int max_cuts,
                             std::uint64_t seed, std::optional<double> density_threshold,
                             int k_optima) {
    SeparationConfig cfg;
    cfg.measure = measure_from_name(measure);
    cfg.rounds = rounds;
    cfg.max_cuts_per_round = max_cuts;
    cfg.seed = seed;
    cfg.density_threshold = density_threshold;
    cfg.k_optima = k_optima;
    return cfg;
}

std::optional<Incumbent> make_opt_incumbent(const std::optional<Vec>& point) {
    if (!point) return std::nullopt;
    Incumbent inc;
    inc.point = *point;
    inc.source = IncumbentSource::Provided;
    return inc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cutlab: distance-based cutting-plane selection laboratory";

    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<BarrierError>(m, "BarrierError", PyExc_RuntimeError);
    py::register_exception<MeasureError>(m, "MeasureError", PyExc_ValueError);
    py::register_exception<RegressError>(m, "RegressError", PyExc_ValueError);

    py::class_<MipInstance>(m, "Instance")
        .def_readonly("name", &MipInstance::name)
        .def_property_readonly("n", &MipInstance::n)
        .def_property_readonly("m", &MipInstance::m)
        .def_readonly("objective", &MipInstance::objective)
        .def_readonly("rhs", &MipInstance::rhs)
        .def_readonly("lower", &MipInstance::lower)
        .def_readonly("upper", &MipInstance::upper)
        .def_readonly("integer_set", &MipInstance::integer_set)
        .def("to_json", [](const MipInstance& inst) { return instance_to_json(inst); })
        .def("__repr__", [](const MipInstance& inst) {
            return "<Instance '" + inst.name + "' n=" + std::to_string(inst.n()) +
                   " m=" + std::to_string(inst.m()) + ">";
        });

    m.def("instance_from_json", &instance_from_json, py::arg("text"));
    m.def("instance_from_mps", &instance_from_mps, py::arg("text"));
    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));

    py::class_<Cut>(m, "Cut")
        .def(py::init([](Vec coeffs, double rhs) {
                 Cut c;
                 c.coeffs = std::move(coeffs);
                 c.rhs = rhs;
                 c.origin = CutOrigin::User;
                 return c;
             }),
             py::arg("coeffs"), py::arg("rhs"))
        .def_readonly("coeffs", &Cut::coeffs)
        .def_readonly("rhs", &Cut::rhs)
        .def_readonly("round", &Cut::round);

    m.def("violation", &violation, py::arg("cut"), py::arg("x"));
    m.def("is_mip_feasible", &is_mip_feasible, py::arg("instance"), py::arg("x"),
          py::arg("feas_tol") = 1e-6, py::arg("int_tol") = 1e-6);

    py::enum_<LpStatus>(m, "LpStatus")
        .value("Optimal", LpStatus::Optimal)
        .value("Infeasible", LpStatus::Infeasible)
        .value("Unbounded", LpStatus::Unbounded);

    py::class_<LpOutcome>(m, "LpOutcome")
        .def_readonly("status", &LpOutcome::status)
        .def_readonly("value", &LpOutcome::value)
        .def_readonly("point", &LpOutcome::point)
        .def_readonly("reduced_costs", &LpOutcome::reduced_costs)
        .def_readonly("iterations", &LpOutcome::iterations);

    m.def(
        "solve_lp",
        [](const MipInstance& inst, const std::vector<Cut>& cuts,
           const std::optional<Vec>& objective_override, std::uint64_t pivot_seed) {
            return solve_lp(inst, cuts, objective_override, pivot_seed);
        },
        py::arg("instance"), py::arg("cuts") = std::vector<Cut>{},
        py::arg("objective_override") = std::nullopt, py::arg("pivot_seed") = 1);

    py::class_<CenterPoint>(m, "CenterPoint")
        .def_readonly("point", &CenterPoint::point)
        .def_readonly("newton_iters", &CenterPoint::newton_iters)
        .def_readonly("residual", &CenterPoint::residual)
        .def_readonly("relaxation_slack", &CenterPoint::relaxation_slack);

    m.def(
        "analytic_center",
        [](const MipInstance& inst, const std::vector<Cut>& cuts) {
            return analytic_center(inst, cuts);
        },
        py::arg("instance"), py::arg("cuts") = std::vector<Cut>{});
    m.def(
        "optimal_face_center",
        [](const MipInstance& inst, const std::vector<Cut>& cuts, const LpOutcome& lp) {
            return optimal_face_center(inst, cuts, lp);
        },
        py::arg("instance"), py::arg("cuts"), py::arg("lp"));

    py::class_<OptimaSet>(m, "OptimaSet")
        .def_readonly("points", &OptimaSet::points)
        .def_readonly("objective_value", &OptimaSet::objective_value);
    m.def("collect_optima", &collect_optima, py::arg("instance"), py::arg("cuts"),
          py::arg("k"), py::arg("seed"));

    // measures over plain vectors
    m.def("score_eff", &score_eff, py::arg("cut"), py::arg("x_lp"));
    m.def(
        "score_dcd",
        [](const Cut& cut, const Vec& x_lp, const Vec& incumbent) {
            Incumbent inc;
            inc.point = incumbent;
            return score_dcd(cut, x_lp, inc);
        },
        py::arg("cut"), py::arg("x_lp"), py::arg("incumbent"));
    m.def("score_exp_improv", &score_exp_improv, py::arg("cut"), py::arg("x_lp"),
          py::arg("objective"));
    m.def(
        "score_a_eff",
        [](const Cut& cut, const CenterPoint& face) { return score_a_eff(cut, face); },
        py::arg("cut"), py::arg("face_center"));
    m.def(
        "score_a_dcd",
        [](const Cut& cut, const Vec& x_lp, const CenterPoint& center) {
            return score_a_dcd(cut, x_lp, center);
        },
        py::arg("cut"), py::arg("x_lp"), py::arg("center"));
    m.def(
        "score_avgeff",
        [](const Cut& cut, const OptimaSet& optima) { return score_avgeff(cut, optima); },
        py::arg("cut"), py::arg("optima"));
    m.def(
        "score_mineff",
        [](const Cut& cut, const OptimaSet& optima) { return score_mineff(cut, optima); },
        py::arg("cut"), py::arg("optima"));
    m.def("density", [](const Cut& cut) { return density(cut); }, py::arg("cut"));
    m.def(
        "relative_density", [](const Cut& cut, int n) { return relative_density(cut, n); },
        py::arg("cut"), py::arg("n"));
    m.def("measure_names", []() {
        std::vector<std::string> names;
        for (MeasureKind k : kAllMeasures) names.push_back(measure_name(k));
        return names;
    });

    py::class_<FeatureVector>(m, "FeatureVector")
        .def_readonly("dual_degeneracy", &FeatureVector::dual_degeneracy)
        .def_readonly("primal_degeneracy", &FeatureVector::primal_degeneracy)
        .def_readonly("fractionality", &FeatureVector::fractionality)
        .def_readonly("thinness", &FeatureVector::thinness)
        .def_readonly("density", &FeatureVector::density)
        .def("as_list", &FeatureVector::as_vector);
    m.def(
        "extract_features",
        [](const MipInstance& inst, const LpOutcome& lp) {
            return extract_features(inst, lp);
        },
        py::arg("instance"), py::arg("lp"));

    py::class_<RoundReport>(m, "RoundReport")
        .def_readonly("round", &RoundReport::round)
        .def_readonly("candidates_generated", &RoundReport::candidates_generated)
        .def_readonly("candidates_after_filter", &RoundReport::candidates_after_filter)
        .def_readonly("cuts_added", &RoundReport::cuts_added)
        .def_readonly("lp_value_after", &RoundReport::lp_value_after)
        .def_readonly("center_recomputed", &RoundReport::center_recomputed)
        .def_readonly("measure_fallback", &RoundReport::measure_fallback);

    py::class_<SeparationResult>(m, "SeparationResult")
        .def_readonly("cuts", &SeparationResult::cuts)
        .def_readonly("reports", &SeparationResult::reports)
        .def_readonly("features", &SeparationResult::features)
        .def_property_readonly("final_lp_value",
                               [](const SeparationResult& r) { return r.final_lp.value; });

    m.def(
        "run_separation",
        [](const MipInstance& inst, const std::string& measure, int rounds, int max_cuts,
           std::uint64_t seed, std::optional<double> density_threshold, int k_optima,
           const std::optional<Vec>& incumbent) {
            return run_separation(inst,
                                  make_config(measure, rounds, max_cuts, seed,
                                              density_threshold, k_optima),
                                  make_opt_incumbent(incumbent));
        },
        py::arg("instance"), py::arg("measure") = "eff", py::arg("rounds") = 50,
        py::arg("max_cuts") = 10, py::arg("seed") = 1,
        py::arg("density_threshold") = std::nullopt, py::arg("k_optima") = 3,
        py::arg("incumbent") = std::nullopt);

    py::enum_<BnbStatus>(m, "BnbStatus")
        .value("Optimal", BnbStatus::Optimal)
        .value("TimeLimit", BnbStatus::TimeLimit)
        .value("Infeasible", BnbStatus::Infeasible);

    py::class_<NodeStats>(m, "NodeStats")
        .def_readonly("nodes_processed", &NodeStats::nodes_processed)
        .def_readonly("lp_iterations_total", &NodeStats::lp_iterations_total)
        .def_readonly("solve_time", &NodeStats::solve_time)
        .def_readonly("primal_bound", &NodeStats::primal_bound)
        .def_readonly("dual_bound", &NodeStats::dual_bound)
        .def_readonly("status", &NodeStats::status)
        .def_readonly("gap_after_root", &NodeStats::gap_after_root);

    py::class_<BnbResult>(m, "BnbResult")
        .def_readonly("stats", &BnbResult::stats)
        .def_readonly("features", &BnbResult::features)
        .def_readonly("root_reports", &BnbResult::root_reports)
        .def_readonly("cuts_added", &BnbResult::cuts_added)
        .def_property_readonly("incumbent_point", [](const BnbResult& r) {
            return r.incumbent ? std::optional<Vec>(r.incumbent->point) : std::nullopt;
        });

    m.def(
        "branch_and_cut",
        [](const MipInstance& inst, const std::string& measure, int rounds, int max_cuts,
           std::uint64_t seed, std::optional<double> density_threshold, int k_optima,
           double time_limit, long node_limit, const std::optional<Vec>& incumbent) {
            BnbLimits limits;
            limits.time_limit = time_limit;
            limits.node_limit = node_limit;
            return branch_and_cut(inst,
                                  make_config(measure, rounds, max_cuts, seed,
                                              density_threshold, k_optima),
                                  limits, make_opt_incumbent(incumbent));
        },
        py::arg("instance"), py::arg("measure") = "eff", py::arg("rounds") = 50,
        py::arg("max_cuts") = 10, py::arg("seed") = 1,
        py::arg("density_threshold") = std::nullopt, py::arg("k_optima") = 3,
        py::arg("time_limit") = 0.0, py::arg("node_limit") = 0,
        py::arg("incumbent") = std::nullopt);

    py::class_<BruteForceResult>(m, "BruteForceResult")
        .def_readonly("status", &BruteForceResult::status)
        .def_readonly("value", &BruteForceResult::value)
        .def_readonly("point", &BruteForceResult::point);
    m.def("brute_force_optimum", &brute_force_optimum, py::arg("instance"));

    m.def(
        "check_dominance",
        [](const MipInstance& inst, const std::vector<Cut>& cuts_in_lp, const Cut& a,
           const Cut& b) {
            const DominanceResult r = check_dominance(inst, cuts_in_lp, a, b);
            py::dict out;
            out["verdict"] = verdict_name(r.verdict);
            out["only_cut_by_a"] = r.only_cut_by_a;
            out["only_cut_by_b"] = r.only_cut_by_b;
            return out;
        },
        py::arg("instance"), py::arg("cuts_in_lp"), py::arg("cut_a"), py::arg("cut_b"));

    py::class_<Counterexample>(m, "Counterexample")
        .def_readonly("instance", &Counterexample::instance)
        .def_readonly("dashed", &Counterexample::dashed)
        .def_readonly("dotted", &Counterexample::dotted)
        .def_readonly("x_lp", &Counterexample::x_lp)
        .def_readonly("objective", &Counterexample::objective);
    m.def("build_fig2b_counterexample", &build_fig2b_counterexample);
    m.def("build_fig3_counterexample", &build_fig3_counterexample);

    m.def(
        "gen_corpus",
        [](const std::string& kind, int count, std::uint64_t seed, int n_min, int n_max,
           int m_min, int m_max) {
            CorpusParams params;
            params.n_min = n_min;
            params.n_max = n_max;
            params.m_min = m_min;
            params.m_max = m_max;
            return gen_corpus(corpus_kind_from_name(kind), count, params, seed);
        },
        py::arg("kind"), py::arg("count"), py::arg("seed") = 1, py::arg("n_min") = 6,
        py::arg("n_max") = 16, py::arg("m_min") = 2, py::arg("m_max") = 6);

    m.def("shifted_geo_mean", &shifted_geo_mean, py::arg("values"), py::arg("shift"));

    // regression over (features, 8 targets) rows
    py::class_<RegressionModel>(m, "RegressionModel")
        .def("to_json", &model_to_json)
        .def_readonly("cv_mse", &RegressionModel::cv_mse);
    m.def("model_from_json", &model_from_json, py::arg("text"));
    m.def(
        "train",
        [](const std::vector<std::pair<Vec, Vec>>& rows, double lambda, std::uint64_t seed) {
            std::vector<TrainingRecord> records;
            for (const auto& [features, targets] : rows) {
                if (targets.size() != 8)
                    throw RegressError("each row needs 8 targets");
                TrainingRecord r;
                r.features = FeatureVector::from_vector(features);
                for (int o = 0; o < 8; ++o) r.targets[o] = targets[o];
                records.push_back(r);
            }
            return train(records, lambda, seed);
        },
        py::arg("rows"), py::arg("lambda_") = 1e-2, py::arg("seed") = 1);
    m.def(
        "predict",
        [](const RegressionModel& model, const Vec& features) {
            return predict(model, FeatureVector::from_vector(features));
        },
        py::arg("model"), py::arg("features"));
    m.def(
        "pick_measure",
        [](const RegressionModel& model, const Vec& features) {
            return measure_name(pick_measure(model, FeatureVector::from_vector(features)));
        },
        py::arg("model"), py::arg("features"));
}
