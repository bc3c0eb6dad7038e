#include "signorini/adapt.hpp"

#include "signorini/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace signorini {

MarkSet doerfler_mark(const IndicatorField& ind, double beta)
{
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
    const std::vector<double> values = ind.scaled_element_values();
    std::vector<Index> order(values.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] > values[b]; });

    // Summing in the sorted order makes the beta = 1 prefix end exactly at the
    // last positive value.
    double total = 0.0;
    for (Index k : order) total += values[k];
    const double target = beta * total;

    MarkSet marks;
    double acc = 0.0;
    for (Index k : order) {
        if (acc >= target) break;
        acc += values[k];
        marks.marked.push_back(k);
    }
    return marks;
}

AdaptiveTrace run_adaptive(const RunConfig& cfg, const CycleObserver& observer)
{
    cfg.validate();
    const auto ms = find_example(cfg.example, cfg.example2_literal_sign);
    if (!ms) throw ConfigError("example", "unknown example '" + cfg.example + "'");

    EstimatorOptions est_opts;
    est_opts.include_boundary_flux = cfg.include_boundary_flux;

    AdaptiveTrace trace;
    Mesh mesh = make_structured_mesh(ms->domain, cfg.coarse_n);
    std::vector<Index> warm_active;

    for (int cycle = 0; cycle < cfg.max_cycles; ++cycle) {
        const auto start = std::chrono::steady_clock::now();
        const SystemOperator sys = assemble(mesh, ms->f);

        CycleRecord rec;
        rec.cycle = cycle;
        rec.dofs = mesh.vertex_count();
        rec.h_max = mesh.h_max();

        ViSolution sol;
        try {
            sol = solve_vi(sys, mesh, cfg.solver, warm_active);
        }
        catch (const LinearSolveFailure& e) {
            trace.solver_failed = true;
            trace.failure = e.what();
            break;
        }
        rec.solver_iterations = sol.iterations;
        rec.converged = sol.converged;

        const IndicatorField ind = element_indicators(sol, ms->f, cfg.p, est_opts);
        rec.estimate = ind.global;

        const ContactReport contact = extract_contact(sol, mesh.boundary_walk());
        rec.n_h = contact.n_h;
        rec.condition_ah = contact.condition_ah;
        if (!ms->exact_critical_arcs.empty()) rec.drift = critical_point_drift(contact, ms->exact_critical_arcs);

        rec.effectivity = std::nan("");
        if (ms->u) {
            rec.errors = signed_lp_errors(sol.u, *ms, cfg.p);
            rec.effectivity = rec.estimate / rec.errors->total;
        }
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        trace.cycles.push_back(rec);
        if (observer) observer(CycleState{trace.cycles.back(), mesh, sol, ind, contact});

        if (!sol.converged) {
            trace.solver_failed = true;
            trace.failure = "SolverDiverged: no active-set fixed point after " + std::to_string(sol.iterations) +
                            " iterations";
            break;
        }
        if (cycle + 1 == cfg.max_cycles) break;

        // Uniform cycles bisect twice so n doubles; Dorfler cycles bisect the
        // marked elements once.
        const bool uniform = cfg.strategy == Strategy::uniform;
        const MarkSet marks = uniform ? mark_all(mesh) : doerfler_mark(ind, cfg.beta);
        if (marks.empty()) break;
        Mesh fine = refine_sweeps(mesh, marks, uniform ? 2 : 1);
        if (static_cast<long>(fine.vertex_count()) > cfg.max_dofs) break;

        // Warm start: vertices in contact on the coarse mesh, and new boundary
        // vertices between two of them, start active.
        const std::vector<double> guess = prolongate(fine, sol.u.coefficients);
        warm_active.clear();
        for (Index v : fine.boundary_loop()) {
            if (guess[v] <= 0.0) warm_active.push_back(v);
        }
        std::sort(warm_active.begin(), warm_active.end());
        mesh = std::move(fine);
    }
    return trace;
}

} // namespace signorini
