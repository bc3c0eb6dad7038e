#include "signorini/adapt.hpp"
#include "signorini/bench.hpp"
#include "signorini/config.hpp"
#include "signorini/errors.hpp"
#include "signorini/export.hpp"
#include "signorini/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace signorini;

namespace {

constexpr int exit_config = 2;
constexpr int exit_solver = 3;

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

int run_command(const std::string& config_path, const std::optional<std::string>& output,
                const std::optional<double>& p, const std::optional<std::string>& strategy,
                const std::optional<double>& beta)
{
    RunConfig cfg = load_config(config_path);
    // Overrides go through the parser so they get the same checks.
    std::string overrides;
    if (output) overrides += "output_dir=" + *output + "\n";
    if (p) overrides += "p=" + format_double(*p) + "\n";
    if (strategy) overrides += "strategy=" + *strategy + "\n";
    if (beta) overrides += "beta=" + format_double(*beta) + "\n";
    if (!overrides.empty()) {
        const RunConfig parsed_overrides = parse_config(overrides);
        if (output) cfg.output_dir = parsed_overrides.output_dir;
        if (p) cfg.p = parsed_overrides.p;
        if (strategy) cfg.strategy = parsed_overrides.strategy;
        if (beta) cfg.beta = parsed_overrides.beta;
        cfg.validate();
    }
    if (cfg.p <= 4.0) {
        std::cerr << "warning: p = " << cfg.p << " <= 4; the error bound is only established for p > 4\n";
    }

    begin_summary(cfg.output_dir);
    {
        std::ofstream copy(cfg.output_dir + "/config.ini");
        copy << serialize(cfg);
    }
    std::printf("%5s %9s %12s %12s %12s %8s %4s %3s\n", "cycle", "dofs", "h_max", "estimate", "err_total",
                "effect.", "N_h", "ah");
    const AdaptiveTrace trace = run_adaptive(cfg, [&](const CycleState& state) {
        export_cycle(state, cfg.output_dir);
        const CycleRecord& r = state.record;
        std::printf("%5d %9zu %12.5e %12.5e %12.5e %8.3f %4zu %3d\n", r.cycle, r.dofs, r.h_max, r.estimate,
                    r.errors ? r.errors->total : std::nan(""), r.effectivity, r.n_h, r.condition_ah ? 1 : 0);
        std::fflush(stdout);
    });
    if (trace.solver_failed) {
        std::cerr << "solver failure: " << trace.failure << '\n';
        return exit_solver;
    }
    return 0;
}

int demo_interpolant(const std::string& function, int levels, int coarse_n, double q, int density)
{
    const auto z = find_target_function(function);
    if (!z) throw ConfigError("function", "unknown function '" + function + "'");
    if (levels < 1) throw ConfigError("levels", "must be at least 1");
    if (coarse_n < 1) throw ConfigError("coarse-n", "must be at least 1");
    if (!(q >= 1.0)) throw ConfigError("q", "must be at least 1");
    if (density < 1) throw ConfigError("density", "must be at least 1");

    const auto rows = interpolation_study(*z, levels, coarse_n, q, make_sample_set(density));
    std::printf("%6s %12s %14s %6s %14s %6s %14s %6s\n", "n", "h_max", "|z-Iz|", "eoc", "|z-Pi z|", "eoc",
                "|z-bil z|", "eoc");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        auto rate = [&](double InterpolationLevel::*field) {
            if (k == 0) return std::nan("");
            const auto& prev = rows[k - 1];
            return std::log(r.*field / prev.*field) / std::log(r.h_max / prev.h_max);
        };
        std::printf("%6d %12.5e %14.6e %6.2f %14.6e %6.2f %14.6e %6.2f\n", r.n, r.h_max, r.lagrange,
                    rate(&InterpolationLevel::lagrange), r.one_sided, rate(&InterpolationLevel::one_sided),
                    r.bilateral, rate(&InterpolationLevel::bilateral));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive finite elements for the scalar Signorini problem"};
    app.require_subcommand(1);
    unsigned workers = 1;
    app.add_option("--workers", workers, "Worker threads for element loops")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "Run the solve-estimate-mark-refine loop");
    std::string config_path;
    std::optional<std::string> output, strategy;
    std::optional<double> p, beta;
    run->add_option("--config", config_path, "Configuration file")->required();
    run->add_option("--output", output, "Output directory");
    run->add_option("--p", p, "Estimator and error exponent");
    run->add_option("--strategy", strategy, "uniform or doerfler");
    run->add_option("--beta", beta, "Dorfler fraction");

    auto* demo = app.add_subcommand("demo-interpolant", "Convergence table of the three interpolants");
    std::string function;
    int levels = 5, coarse_n = 4, density = 2;
    double q = 1.3;
    demo->add_option("--function", function, "bump, paraboloid or centered_paraboloid")->required();
    demo->add_option("--levels", levels, "Number of uniform levels")->required();
    demo->add_option("--coarse-n", coarse_n, "Subdivisions of the coarsest mesh");
    demo->add_option("--q", q, "Norm exponent");
    demo->add_option("--density", density, "Sample density of the patch maximum");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        set_worker_count(workers);
        if (*run) return run_command(config_path, output, p, strategy, beta);
        return demo_interpolant(function, levels, coarse_n, q, density);
    }
    catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return exit_config;
    }
    catch (const SolverDiverged& e) {
        std::cerr << e.what() << '\n';
        return exit_solver;
    }
    catch (const LinearSolveFailure& e) {
        std::cerr << e.what() << '\n';
        return exit_solver;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
