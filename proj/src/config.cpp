#include "signorini/config.hpp"

#include "signorini/bench.hpp"
#include "signorini/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace signorini {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, std::string_view value)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
        throw ConfigError(key, "expected a finite real, got '" + std::string(value) + "'");
    }
    return v;
}

long parse_integer(const std::string& key, std::string_view value)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(key, "expected an integer, got '" + std::string(value) + "'");
    }
    return v;
}

int parse_int(const std::string& key, std::string_view value)
{
    const long v = parse_integer(key, value);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(key, "integer out of range");
    }
    return static_cast<int>(v);
}

bool parse_flag(const std::string& key, std::string_view value)
{
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(value) + "'");
}

Strategy parse_strategy(const std::string& key, std::string_view value)
{
    if (value == "uniform") return Strategy::uniform;
    if (value == "doerfler") return Strategy::doerfler;
    throw ConfigError(key, "expected uniform or doerfler, got '" + std::string(value) + "'");
}

void assign(RunConfig& cfg, const std::string& key, std::string_view value)
{
    if (key == "example") cfg.example = std::string(value);
    else if (key == "p") cfg.p = parse_real(key, value);
    else if (key == "strategy") cfg.strategy = parse_strategy(key, value);
    else if (key == "beta") cfg.beta = parse_real(key, value);
    else if (key == "coarse_n") cfg.coarse_n = parse_int(key, value);
    else if (key == "max_cycles") cfg.max_cycles = parse_int(key, value);
    else if (key == "max_dofs") cfg.max_dofs = parse_integer(key, value);
    else if (key == "output_dir") cfg.output_dir = std::string(value);
    else if (key == "include_boundary_flux") cfg.include_boundary_flux = parse_flag(key, value);
    else if (key == "sample_density") cfg.sample_density = parse_int(key, value);
    else if (key == "example2_literal_sign") cfg.example2_literal_sign = parse_flag(key, value);
    else if (key == "solver.pdas_shift") cfg.solver.pdas_shift = parse_real(key, value);
    else if (key == "solver.max_outer") cfg.solver.max_outer = parse_int(key, value);
    else if (key == "solver.linear_tol") cfg.solver.linear_tol = parse_real(key, value);
    else throw ConfigError(key, "unknown key");
}

} // namespace

std::string_view to_string(Strategy s) { return s == Strategy::uniform ? "uniform" : "doerfler"; }

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RunConfig::validate() const
{
    const auto names = example_names();
    if (std::find(names.begin(), names.end(), example) == names.end()) {
        throw ConfigError("example", "unknown example '" + example + "'");
    }
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p", "must be a finite real > 1");
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta", "must lie in (0, 1]");
    if (coarse_n < 1) throw ConfigError("coarse_n", "must be at least 1");
    if (max_cycles < 1) throw ConfigError("max_cycles", "must be at least 1");
    if (max_dofs < 1) throw ConfigError("max_dofs", "must be at least 1");
    if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
    if (output_dir.find_first_of(",#\n") != std::string::npos || trim(output_dir) != output_dir) {
        throw ConfigError("output_dir", "must not contain ',', '#', line breaks or surrounding blanks");
    }
    if (sample_density < 1) throw ConfigError("sample_density", "must be at least 1");
    if (!(solver.pdas_shift > 0.0)) throw ConfigError("solver.pdas_shift", "must be positive");
    if (solver.max_outer < 1) throw ConfigError("solver.max_outer", "must be positive");
    if (!(solver.linear_tol > 0.0)) throw ConfigError("solver.linear_tol", "must be positive");
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(std::string(line), "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "solver") throw ConfigError(section, "unknown section");
            continue;
        }

        std::size_t item_pos = 0;
        while (item_pos <= line.size()) {
            std::size_t comma = line.find(',', item_pos);
            if (comma == std::string_view::npos) comma = line.size();
            const std::string_view item = trim(line.substr(item_pos, comma - item_pos));
            item_pos = comma + 1;
            if (item.empty()) continue;

            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw ConfigError(std::string(item), "expected key=value");
            std::string key(trim(item.substr(0, eq)));
            const std::string_view value = trim(item.substr(eq + 1));
            if (key.empty()) throw ConfigError(std::string(item), "empty key");
            if (!section.empty()) key = section + "." + key;
            if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
            assign(cfg, key, value);
        }
    }
    cfg.validate();
    return cfg;
}

std::string serialize(const RunConfig& cfg)
{
    std::string out;
    auto line = [&](const std::string& key, const std::string& value) { out += key + " = " + value + "\n"; };
    line("example", cfg.example);
    line("p", format_double(cfg.p));
    line("strategy", std::string(to_string(cfg.strategy)));
    line("beta", format_double(cfg.beta));
    line("coarse_n", std::to_string(cfg.coarse_n));
    line("max_cycles", std::to_string(cfg.max_cycles));
    line("max_dofs", std::to_string(cfg.max_dofs));
    line("output_dir", cfg.output_dir);
    line("include_boundary_flux", cfg.include_boundary_flux ? "true" : "false");
    line("sample_density", std::to_string(cfg.sample_density));
    line("example2_literal_sign", cfg.example2_literal_sign ? "true" : "false");
    out += "\n[solver]\n";
    line("pdas_shift", format_double(cfg.solver.pdas_shift));
    line("max_outer", std::to_string(cfg.solver.max_outer));
    line("linear_tol", format_double(cfg.solver.linear_tol));
    return out;
}

} // namespace signorini
