#include "cutlab/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "cutlab/simplex.hpp"

namespace cutlab {

namespace {

struct Node {
    Vec lower, upper;
    double bound;  // parent LP value
    long id;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;  // FIFO among equal bounds
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

BnbResult branch_and_cut(const MipInstance& inst, const SeparationConfig& cfg,
                         const BnbLimits& limits,
                         const std::optional<Incumbent>& provided_incumbent) {
    inst.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::optional<Incumbent> incumbent = provided_incumbent;
    if (incumbent) {
        if (!is_mip_feasible(inst, incumbent->point, cfg.tol.feas, cfg.tol.integrality))
            throw ModelError("provided incumbent is not MIP-feasible");
        incumbent->value = dot(inst.objective, incumbent->point);
    }

    BnbResult result;
    NodeStats& stats = result.stats;

    {
        const LpOutcome bare = solve_lp(inst, {}, std::nullopt, cfg.seed);
        if (bare.status == LpStatus::Infeasible) {
            stats.status = BnbStatus::Infeasible;
            stats.primal_bound = kInf;
            stats.dual_bound = kInf;
            stats.solve_time = seconds_since(t0);
            return result;
        }
    }

    SeparationResult root;
    try {
        root = run_separation(inst, cfg, incumbent);
    } catch (const CutMadeInfeasibleError&) {
        // Valid cuts emptied a feasible relaxation: the instance has no
        // integer-feasible point. Invalid cuts are ruled out by the validity
        // suites, so this is a proof of infeasibility here.
        stats.status = BnbStatus::Infeasible;
        stats.primal_bound = kInf;
        stats.dual_bound = kInf;
        stats.solve_time = seconds_since(t0);
        return result;
    }
    result.features = root.features;
    result.root_reports = std::move(root.reports);
    result.cuts_added = static_cast<int>(root.cuts.size());
    result.root_cuts = root.cuts;
    stats.lp_iterations_total += root.total_lp_iterations;

    const double root_dual = root.final_lp.value;
    stats.gap_after_root = incumbent ? incumbent->value - root_dual : kInf;
    stats.dual_bound = root_dual;

    const std::vector<Cut>& cuts = root.cuts;
    SimplexOptions sopts;
    sopts.pivot_seed = cfg.seed;
    sopts.tol = cfg.tol;

    auto prune_threshold = [&]() {
        return incumbent ? incumbent->value - 1e-9 * (1.0 + std::abs(incumbent->value))
                         : kInf;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    long next_id = 0;
    queue.push({inst.lower, inst.upper, root_dual, next_id++});

    bool limit_hit = false;
    while (!queue.empty()) {
        if (limits.time_limit > 0 && seconds_since(t0) > limits.time_limit) {
            limit_hit = true;
            break;
        }
        if (limits.node_limit > 0 && stats.nodes_processed >= limits.node_limit) {
            limit_hit = true;
            break;
        }
        Node node = queue.top();
        queue.pop();
        stats.dual_bound = std::max(stats.dual_bound, node.bound);
        // the root node always gets solved, even when a provided incumbent
        // already matches the bound: node counts stay meaningful ratios
        if (stats.nodes_processed > 0 && node.bound >= prune_threshold()) continue;

        MipInstance local = inst;
        local.lower = node.lower;
        local.upper = node.upper;
        SimplexSolver solver(local, cuts, sopts);
        LpOutcome lp;
        try {
            lp = solver.solve();
        } catch (const SolverError&) {
            // the node relaxation could not be certified; fall back to the
            // cut-free node LP, whose bound is still valid for the subtree
            SimplexSolver bare(local, {}, sopts);
            lp = bare.solve();
        }
        ++stats.nodes_processed;
        stats.lp_iterations_total += lp.iterations;

        if (lp.status != LpStatus::Optimal) continue;  // infeasible subproblem
        if (lp.value >= prune_threshold()) continue;

        int branch_var = -1;
        double best_frac = cfg.tol.integrality;
        for (int j : inst.integer_set) {
            const double f = lp.point[j] - std::floor(lp.point[j]);
            const double dist = std::min(f, 1.0 - f);
            if (dist > best_frac) {
                best_frac = dist;
                branch_var = j;
            }
        }
        if (branch_var < 0) {
            // integer feasible
            if (!incumbent || lp.value < incumbent->value) {
                Incumbent inc;
                inc.point = lp.point;
                for (int j : inst.integer_set) inc.point[j] = std::round(inc.point[j]);
                inc.value = dot(inst.objective, inc.point);
                inc.source = IncumbentSource::NodeSolution;
                incumbent = std::move(inc);
            }
            continue;
        }

        const double v =
            std::clamp(lp.point[branch_var], node.lower[branch_var], node.upper[branch_var]);
        Node down{node.lower, node.upper, lp.value, next_id++};
        down.upper[branch_var] = std::floor(v);
        Node up{node.lower, node.upper, lp.value, next_id++};
        up.lower[branch_var] = std::ceil(v);
        if (down.upper[branch_var] >= node.upper[branch_var] ||
            up.lower[branch_var] <= node.lower[branch_var])
            throw SolverError("branching made no progress; numerical failure at a node");
        if (down.upper[branch_var] >= down.lower[branch_var] - 1e-9) queue.push(std::move(down));
        if (up.lower[branch_var] <= up.upper[branch_var] + 1e-9) queue.push(std::move(up));
    }

    stats.solve_time = seconds_since(t0);
    result.incumbent = incumbent;
    stats.primal_bound = incumbent ? incumbent->value : kInf;
    if (limit_hit) {
        stats.status = BnbStatus::TimeLimit;
        double best_open = kInf;
        std::priority_queue<Node, std::vector<Node>, NodeOrder> rest = std::move(queue);
        if (!rest.empty()) best_open = rest.top().bound;
        stats.dual_bound = std::min(incumbent ? incumbent->value : kInf,
                                    std::max(stats.dual_bound, std::min(best_open, kInf)));
        if (!std::isfinite(stats.dual_bound)) stats.dual_bound = root_dual;
    } else if (incumbent) {
        stats.status = BnbStatus::Optimal;
        stats.dual_bound = incumbent->value;  // search exhausted: bound proven
    } else {
        stats.status = BnbStatus::Infeasible;
        stats.dual_bound = kInf;
    }
    return result;
}

BruteForceResult brute_force_optimum(const MipInstance& inst) {
    inst.validate();
    BruteForceResult best;
    best.status = BnbStatus::Infeasible;

    const auto& ints = inst.integer_set;
    if (static_cast<int>(ints.size()) > 22)
        throw SolverError("brute_force_optimum: more than 22 integer variables");
    std::vector<double> base(ints.size());
    std::vector<long> width(ints.size());
    for (std::size_t k = 0; k < ints.size(); ++k) {
        const int j = ints[k];
        if (!std::isfinite(inst.lower[j]) || !std::isfinite(inst.upper[j]))
            throw SolverError("brute_force_optimum: unbounded integer variable");
        const double lo = std::ceil(inst.lower[j] - 1e-9);
        const double hi = std::floor(inst.upper[j] + 1e-9);
        const long w = static_cast<long>(hi - lo) + 1;
        if (w > 4) throw SolverError("brute_force_optimum: integer range wider than 4 values");
        if (w <= 0) return best;  // no integer value fits the bounds
        base[k] = lo;
        width[k] = w;
    }

    const bool pure = static_cast<int>(ints.size()) == inst.n();
    if (ints.empty()) {
        const LpOutcome lp = solve_lp(inst);
        if (lp.status == LpStatus::Optimal) {
            best.status = BnbStatus::Optimal;
            best.value = lp.value;
            best.point = lp.point;
        }
        if (lp.status == LpStatus::Unbounded)
            throw SolverError("brute_force_optimum: continuous relaxation unbounded");
        return best;
    }

    std::vector<long> idx(ints.size(), 0);
    while (true) {
        Vec assignment(ints.size());
        for (std::size_t k = 0; k < ints.size(); ++k)
            assignment[k] = base[k] + static_cast<double>(idx[k]);
        if (pure) {
            Vec x(inst.n(), 0.0);
            for (std::size_t k = 0; k < ints.size(); ++k) x[ints[k]] = assignment[k];
            if (is_mip_feasible(inst, x)) {
                const double val = dot(inst.objective, x);
                if (best.status != BnbStatus::Optimal || val < best.value) {
                    best.status = BnbStatus::Optimal;
                    best.value = val;
                    best.point = x;
                }
            }
        } else {
            MipInstance fixed = inst;
            for (std::size_t k = 0; k < ints.size(); ++k) {
                fixed.lower[ints[k]] = assignment[k];
                fixed.upper[ints[k]] = assignment[k];
            }
            const LpOutcome lp = solve_lp(fixed);
            if (lp.status == LpStatus::Unbounded)
                throw SolverError("brute_force_optimum: continuous part unbounded");
            if (lp.status == LpStatus::Optimal &&
                (best.status != BnbStatus::Optimal || lp.value < best.value)) {
                best.status = BnbStatus::Optimal;
                best.value = lp.value;
                best.point = lp.point;
            }
        }
        std::size_t k = 0;
        for (; k < ints.size(); ++k) {
            if (++idx[k] < width[k]) break;
            idx[k] = 0;
        }
        if (k == ints.size()) break;
    }
    return best;
}

}  // namespace cutlab
