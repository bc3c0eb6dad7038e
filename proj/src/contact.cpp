#include "signorini/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace signorini {

ContactReport extract_contact(const ViSolution& sol, const std::vector<BoundaryNode>& walk)
{
    const Mesh& mesh = *sol.u.mesh;
    const auto& u = sol.u.coefficients;
    ContactReport report;
    if (walk.empty()) {
        report.condition_ah = true;
        return report;
    }

    std::vector<char> contact(walk.size());
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Index v = walk[i].vertex;
        contact[i] = sol.is_active(v) ? 1 : 0;
        if (contact[i]) report.contact_vertices.push_back(v);
        if ((std::abs(u[v]) <= 1e-12) != static_cast<bool>(contact[i])) report.cross_check_mismatches.push_back(v);
    }

    std::size_t begin = 0;
    double loop_start_arc = 0.0;
    while (begin < walk.size()) {
        std::size_t end = begin;
        while (end < walk.size() && walk[end].loop == walk[begin].loop) ++end;
        const std::size_t len = end - begin;
        const Point first = mesh.vertex(walk[begin].vertex);
        const Point last = mesh.vertex(walk[end - 1].vertex);
        const double loop_length = walk[end - 1].arc + distance(last, first) - walk[begin].arc;
        loop_start_arc = walk[begin].arc;
        report.perimeter += loop_length;

        auto pos = [&](std::size_t k) { return begin + (k % len); };
        const auto in_contact = static_cast<std::size_t>(
            std::count(contact.begin() + static_cast<std::ptrdiff_t>(begin),
                        contact.begin() + static_cast<std::ptrdiff_t>(end), 1));

        if (in_contact == len) {
            report.components.push_back({begin, len, true});
        }
        else if (in_contact > 0) {
            // Start right after a non-contact vertex so runs never wrap mid-way.
            std::size_t start = 0;
            while (contact[pos(start)]) ++start;
            for (std::size_t k = 1; k <= len; ++k) {
                const std::size_t i = pos(start + k - 1);
                const std::size_t j = pos(start + k);
                if (contact[j] && !contact[i]) report.components.push_back({j, 0, false});
                if (contact[j]) ++report.components.back().count;
            }
            for (std::size_t i = begin; i < end; ++i) {
                const std::size_t j = (i + 1 < end) ? i + 1 : begin;
                if (contact[i] == contact[j]) continue;
                const Point a = mesh.vertex(walk[i].vertex);
                const Point b = mesh.vertex(walk[j].vertex);
                double arc = walk[i].arc + 0.5 * distance(a, b);
                if (arc >= loop_start_arc + loop_length) arc -= loop_length;
                report.critical_points.push_back({arc, 0.5 * (a + b)});
            }
        }

        if (len >= 3) {
            for (std::size_t k = 0; k < len; ++k) {
                const std::size_t i = begin + k;
                if (!contact[i]) continue;
                const int free_neighbours = !contact[pos(k + len - 1)] + !contact[pos(k + 1)];
                if (free_neighbours == 2) report.singleton_violations.push_back(walk[i].vertex);
                if (walk[i].corner && free_neighbours == 1) report.corner_violations.push_back(walk[i].vertex);
            }
        }
        begin = end;
    }

    report.n_h = report.critical_points.size();
    const bool thick = std::all_of(report.components.begin(), report.components.end(),
                                   [](const ContactComponent& c) { return c.count >= 2; });
    report.condition_ah = report.singleton_violations.empty() && report.corner_violations.empty() && thick;
    return report;
}

DriftResult critical_point_drift(const ContactReport& report, const std::vector<double>& exact_arcs)
{
    DriftResult result;
    if (report.critical_points.size() != exact_arcs.size()) {
        result.distance = std::numeric_limits<double>::infinity();
        result.count_mismatch = true;
        return result;
    }
    const double period = report.perimeter;
    auto dist = [period](double a, double b) {
        const double d = std::abs(a - b);
        return period > 0.0 ? std::min(d, period - d) : d;
    };
    auto directed = [&](auto&& from, auto&& to) {
        double worst = 0.0;
        for (double a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (double b : to) best = std::min(best, dist(a, b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    std::vector<double> reported;
    for (const auto& c : report.critical_points) reported.push_back(c.arc);
    result.distance = std::max(directed(reported, exact_arcs), directed(exact_arcs, reported));
    return result;
}

} // namespace signorini
