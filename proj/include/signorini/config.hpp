#pragma once

#include "signorini/vi_solver.hpp"

#include <string>
#include <string_view>

namespace signorini {

enum class Strategy { uniform, doerfler };

std::string_view to_string(Strategy s);

/// Everything needed to reproduce a run.
struct RunConfig {
    std::string example = "example1";
    double p = 4.0;
    Strategy strategy = Strategy::doerfler;
    double beta = 0.9;
    int coarse_n = 8;
    int max_cycles = 15;
    long max_dofs = 200000;
    std::string output_dir = "output";
    SolverConfig solver;
    bool include_boundary_flux = false;
    int sample_density = 2;
    /// Example 2 only: f = Lap w + w when set, f = -Lap w + w otherwise.
    bool example2_literal_sign = true;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Parses a flat key=value document. Entries are separated by newlines or
/// commas, '#' starts a comment, and a "[solver]" header switches to the
/// solver keys (pdas_shift, max_outer, linear_tol) until the next header.
/// Missing keys keep their defaults. Throws ConfigError on unknown keys,
/// malformed values and out-of-range values.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config; doubles are written with 17 significant digits.
std::string serialize(const RunConfig& cfg);

/// Lossless decimal form of a double ("%.17g"); "nan" and "inf" for the
/// non-finite values.
std::string format_double(double v);

} // namespace signorini
