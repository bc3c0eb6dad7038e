#include "signorini/estimator.hpp"

#include "signorini/errors.hpp"
#include "signorini/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace signorini {

double discrete_laplacian(const FeFunction&, Index) { return 0.0; }

std::vector<double> IndicatorField::scaled_element_values() const
{
    double peak = 0.0;
    for (const auto& e : per_element) peak = std::max({peak, e.eta_k, e.eta_j});
    std::vector<double> v(per_element.size(), 0.0);
    if (peak == 0.0) return v;
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = std::pow(per_element[k].eta_k / peak, p) + 0.5 * std::pow(per_element[k].eta_j / peak, p);
    }
    return v;
}

IndicatorField element_indicators(const FeFunction& u, const std::vector<char>& active,
                                  const ScalarField& f, double p, const EstimatorOptions& opts)
{
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("estimator exponent must be finite and > 1");
    const Mesh& mesh = *u.mesh;
    const std::size_t nt = mesh.triangle_count();

    std::vector<Point> grad(nt);
    parallel_for(nt, [&](std::size_t t) { grad[t] = u.gradient_in(t); });

    // Normal jump of grad U across each edge; constant along the edge.
    const auto& edges = mesh.edges();
    std::vector<double> jump(edges.size(), 0.0);
    parallel_for(edges.size(), [&](std::size_t e) {
        const Edge& edge = edges[e];
        const Index t0 = edge.owners[0];
        int k0 = 0;
        while (mesh.triangle_edge(t0, k0) != e) ++k0;
        const Point n = mesh.scaled_normal(t0, k0);
        const double len = std::hypot(n.x, n.y);
        if (edge.is_boundary()) {
            const bool contact = active[edge.v[0]] && active[edge.v[1]];
            if (contact && !opts.include_boundary_flux) return;
            jump[e] = dot(grad[t0], n) / len;
        }
        else {
            jump[e] = dot(grad[t0] - grad[edge.owners[1]], n) / len;
        }
        if (!std::isfinite(jump[e])) throw NonFiniteData("gradient jump");
    });

    const LineRule& line = gauss_line_rule5();
    IndicatorField ind;
    ind.p = p;
    ind.per_element.resize(nt);

    const auto residual_norms = lp_quadrature_norms(
        ElementField([&](Index t, const Point& x, const Barycentric& b) {
            return -discrete_laplacian(u, t) + u.value_in(t, b) - f(x);
        }),
        mesh, p);

    parallel_for(nt, [&](std::size_t t) {
        const double h = mesh.diameter(t);
        std::array<double, 15> values{};
        std::array<double, 15> weights{};
        std::size_t m = 0;
        for (int k = 0; k < 3; ++k) {
            const Index e = mesh.triangle_edge(t, k);
            const Point n = mesh.scaled_normal(t, k);
            const double len = std::hypot(n.x, n.y);
            for (std::size_t q = 0; q < line.points.size(); ++q) {
                values[m] = jump[e];
                weights[m] = line.weights[q] * len;
                ++m;
            }
        }
        ind.per_element[t].eta_k = h * h * residual_norms[t];
        ind.per_element[t].eta_j = std::pow(h, 1.0 + 1.0 / p) * scaled_pnorm(values, weights, p);
    });

    ind.global_p_power = 0.0;
    for (const auto& e : ind.per_element) ind.global_p_power += std::pow(e.eta_k, p) + 0.5 * std::pow(e.eta_j, p);
    ind.global = global_estimate(ind);
    return ind;
}

IndicatorField element_indicators(const ViSolution& sol, const ScalarField& f, double p,
                                  const EstimatorOptions& opts)
{
    std::vector<char> active(sol.u.mesh->vertex_count(), 0);
    for (Index v : sol.active_set) active[v] = 1;
    return element_indicators(sol.u, active, f, p, opts);
}

double global_estimate(const IndicatorField& ind)
{
    double peak = 0.0;
    for (const auto& e : ind.per_element) peak = std::max({peak, e.eta_k, e.eta_j});
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& e : ind.per_element) {
        sum += std::pow(e.eta_k / peak, ind.p) + 0.5 * std::pow(e.eta_j / peak, ind.p);
    }
    return peak * std::pow(sum, 1.0 / ind.p);
}

} // namespace signorini
