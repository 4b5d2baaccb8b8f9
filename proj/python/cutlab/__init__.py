"""cutlab: distance-based cutting-plane selection laboratory.

Thin python surface over the C++ core: LP/MIP solving with eight cut
quality measures, analytic centers, dominance checks, and the measure
recommendation model.
"""

from cutlab._core import (  # noqa: F401
    BnbResult,
    BnbStatus,
    BruteForceResult,
    CenterPoint,
    Counterexample,
    Cut,
    FeatureVector,
    Instance,
    LpOutcome,
    LpStatus,
    NodeStats,
    OptimaSet,
    RegressionModel,
    RoundReport,
    SeparationResult,
    analytic_center,
    branch_and_cut,
    brute_force_optimum,
    build_fig2b_counterexample,
    build_fig3_counterexample,
    check_dominance,
    collect_optima,
    density,
    extract_features,
    gen_corpus,
    instance_from_json,
    instance_from_mps,
    is_mip_feasible,
    load_instance,
    measure_names,
    model_from_json,
    optimal_face_center,
    pick_measure,
    predict,
    relative_density,
    run_separation,
    save_instance,
    score_a_dcd,
    score_a_eff,
    score_avgeff,
    score_dcd,
    score_eff,
    score_exp_improv,
    score_mineff,
    shifted_geo_mean,
    solve_lp,
    train,
    violation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
