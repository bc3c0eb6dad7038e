#include "signorini/interpolant.hpp"

#include "signorini/errors.hpp"
#include "signorini/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace signorini {

namespace {

void append_lattice(std::vector<Barycentric>& out, int m)
{
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            const double b1 = static_cast<double>(i) / m;
            const double b2 = static_cast<double>(j) / m;
            out.push_back({1.0 - b1 - b2, b1, b2});
        }
    }
}

void append_subtriangle_rule(std::vector<Barycentric>& out, const Barycentric& a, const Barycentric& b,
                             const Barycentric& c)
{
    for (const auto& q : triangle_rule(error_degree).points) {
        Barycentric p{};
        for (int k = 0; k < 3; ++k) p[k] = q[0] * a[k] + q[1] * b[k] + q[2] * c[k];
        out.push_back(p);
    }
}

double gap(const ScalarField& z, const FeFunction& iz, Index t, const Barycentric& b)
{
    const double v = iz.value_in(t, b) - z(map_to_physical(*iz.mesh, t, b));
    if (!std::isfinite(v)) throw NonFiniteData("interpolated function at a sample point");
    return v;
}

// Compass search for the maximum of I z - z over the triangle in (b1, b2) coordinates.
double refine_maximum(const ScalarField& z, const FeFunction& iz, Index t, Barycentric best,
                      double value, double step)
{
    static constexpr double directions[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
    int evaluations = 0;
    while (step > 1e-13 && evaluations < 2000) {
        bool improved = false;
        for (const auto& d : directions) {
            const double b1 = best[1] + step * d[0];
            const double b2 = best[2] + step * d[1];
            if (b1 < 0.0 || b2 < 0.0 || b1 + b2 > 1.0) continue;
            const Barycentric trial{1.0 - b1 - b2, b1, b2};
            const double v = gap(z, iz, t, trial);
            ++evaluations;
            if (v > value) {
                value = v;
                best = trial;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    return value;
}

std::vector<double> nodal_overshoot(const Mesh& mesh, const std::vector<double>& element_max)
{
    std::vector<double> r(mesh.vertex_count(), 0.0);
    for (Index i = 0; i < r.size(); ++i) {
        for (Index t : mesh.vertex_patch(i)) r[i] = std::max(r[i], element_max[t]);
    }
    return r;
}

void require_sign(const ScalarField& z, const Mesh& mesh, const SampleSet& samples, double sign)
{
    for (Index t = 0; t < mesh.triangle_count(); ++t) {
        for (const auto& b : samples.points) {
            const Point x = map_to_physical(mesh, t, b);
            const double v = z(x);
            if (!std::isfinite(v)) throw NonFiniteData("interpolated function at a sample point");
            if (sign * v < -1e-12) {
                const std::string where = "(" + std::to_string(x.x) + ", " + std::to_string(x.y) + ")";
                if (sign > 0) throw NegativeInput("z = " + std::to_string(v) + " at " + where);
                throw PositiveInput("z = " + std::to_string(v) + " at " + where);
            }
        }
    }
}

} // namespace

SampleSet make_sample_set(int density, bool local_search)
{
    if (density < 1) throw std::invalid_argument("sample density must be >= 1");
    SampleSet s;
    s.density = density;
    s.local_search = local_search;
    append_lattice(s.points, 2 * density);
    const int m = density;
    auto node = [m](int i, int j) {
        const double b1 = static_cast<double>(i) / m;
        const double b2 = static_cast<double>(j) / m;
        return Barycentric{1.0 - b1 - b2, b1, b2};
    };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; i + j < m; ++j) {
            append_subtriangle_rule(s.points, node(i, j), node(i + 1, j), node(i, j + 1));
            if (i + j + 2 <= m) append_subtriangle_rule(s.points, node(i + 1, j), node(i + 1, j + 1), node(i, j + 1));
        }
    }
    return s;
}

FeFunction lagrange(const ScalarField& z, const Mesh& mesh) { return interpolate(mesh, z); }

std::vector<double> element_overshoot(const ScalarField& z, const FeFunction& iz, const SampleSet& samples)
{
    const Mesh& mesh = *iz.mesh;
    std::vector<double> element_max(mesh.triangle_count(), 0.0);
    parallel_for(mesh.triangle_count(), [&](std::size_t t) {
        double best = -std::numeric_limits<double>::infinity();
        Barycentric arg{};
        for (const auto& b : samples.points) {
            const double v = gap(z, iz, t, b);
            if (v > best) {
                best = v;
                arg = b;
            }
        }
        if (samples.local_search) best = refine_maximum(z, iz, t, arg, best, 0.5 / samples.density);
        element_max[t] = best;
    });
    return element_max;
}

FeFunction one_sided(const ScalarField& z, const Mesh& mesh, const SampleSet& samples)
{
    FeFunction iz = lagrange(z, mesh);
    const auto r = nodal_overshoot(mesh, element_overshoot(z, iz, samples));
    for (Index i = 0; i < r.size(); ++i) iz.coefficients[i] -= r[i];
    return iz;
}

FeFunction bilateral(const ScalarField& z, const Mesh& mesh, const SampleSet& samples)
{
    require_sign(z, mesh, samples, 1.0);
    const FeFunction below = one_sided(z, mesh, samples);
    // A P1 function is nonnegative on a patch iff its nodal values on the patch are.
    std::vector<double> c(mesh.vertex_count());
    for (Index i = 0; i < c.size(); ++i) {
        bool nonnegative = true;
        for (Index t : mesh.vertex_patch(i)) {
            for (Index j : mesh.triangle(t).v) nonnegative = nonnegative && below.coefficients[j] >= 0.0;
        }
        c[i] = nonnegative ? below.coefficients[i] : 0.0;
    }
    return FeFunction(mesh, std::move(c));
}

FeFunction mirrored_bilateral(const ScalarField& z, const Mesh& mesh, const SampleSet& samples)
{
    require_sign(z, mesh, samples, -1.0);
    FeFunction result = bilateral([&z](const Point& x) { return -z(x); }, mesh, samples);
    for (double& c : result.coefficients) c = -c;
    return result;
}

} // namespace signorini
