#pragma once

#include "signorini/bench.hpp"
#include "signorini/config.hpp"
#include "signorini/contact.hpp"
#include "signorini/estimator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace signorini {

/// Greedy Dorfler marking: elements sorted by eta_K^p + eta_J^p / 2
/// (descending, ties by ascending index); the shortest prefix carrying at
/// least beta of the total is marked. beta must lie in (0, 1].
MarkSet doerfler_mark(const IndicatorField& ind, double beta);

struct CycleRecord {
    int cycle = 0;
    std::size_t dofs = 0;
    double h_max = 0.0;
    double estimate = 0.0;
    /// Present when the example has an exact solution.
    std::optional<SignedErrors> errors;
    /// estimate / total error; NaN without an exact solution.
    double effectivity = 0.0;
    std::size_t n_h = 0;
    bool condition_ah = false;
    /// Critical point drift against the known change points, when available.
    std::optional<DriftResult> drift;
    int solver_iterations = 0;
    bool converged = false;
    double wall_seconds = 0.0;
};

struct AdaptiveTrace {
    std::vector<CycleRecord> cycles;
    /// Set when the loop stopped on a solver failure.
    bool solver_failed = false;
    std::string failure;
};

/// Objects alive during one cycle, handed to the observer for export.
struct CycleState {
    const CycleRecord& record;
    const Mesh& mesh;
    const ViSolution& solution;
    const IndicatorField& indicators;
    const ContactReport& contact;
};

using CycleObserver = std::function<void(const CycleState&)>;

/// Solve, estimate, diagnose contact, mark and refine, starting from the
/// structured coarse mesh. Dorfler cycles bisect the marked elements once
/// (plus closure); uniform cycles bisect every element twice, doubling n. Stops after max_cycles, before solving a mesh with more than
/// max_dofs vertices, when marking selects nothing, or after an unconverged
/// or failed solve (recorded in the trace).
AdaptiveTrace run_adaptive(const RunConfig& cfg, const CycleObserver& observer = {});

} // namespace signorini
