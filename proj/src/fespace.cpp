#include "signorini/fespace.hpp"

#include "signorini/errors.hpp"
#include "signorini/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace signorini {

namespace {

void add_s21(QuadratureRule& rule, double w, double a)
{
    const double b = 1.0 - 2.0 * a;
    for (const Barycentric& p : {Barycentric{a, a, b}, Barycentric{a, b, a}, Barycentric{b, a, a}}) {
        rule.points.push_back(p);
        rule.weights.push_back(w);
    }
}

void add_s111(QuadratureRule& rule, double w, double a, double b)
{
    const double c = 1.0 - a - b;
    for (const Barycentric& p : {Barycentric{a, b, c}, Barycentric{b, a, c}, Barycentric{a, c, b},
                                 Barycentric{c, a, b}, Barycentric{b, c, a}, Barycentric{c, b, a}}) {
        rule.points.push_back(p);
        rule.weights.push_back(w);
    }
}

QuadratureRule make_rule(int degree)
{
    QuadratureRule rule;
    rule.degree = degree;
    switch (degree) {
    case 1:
        rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        rule.weights.push_back(1.0);
        break;
    case 4:
        add_s21(rule, 0.22338158967801146570, 0.44594849091596488632);
        add_s21(rule, 0.10995174365532186764, 0.09157621350977074346);
        break;
    case 8:
        rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        rule.weights.push_back(0.14431560767778716825);
        add_s21(rule, 0.095091634267284624794, 0.45929258829272315603);
        add_s21(rule, 0.10321737053471825028, 0.17056930775176020662);
        add_s21(rule, 0.032458497623198080311, 0.050547228317030975458);
        add_s111(rule, 0.027230314174434994265, 0.0083947774099576053372, 0.26311282963463811342);
        break;
    default:
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
    }
    return rule;
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw NonFiniteData(std::string(what) + " evaluated to a non-finite value");
}

} // namespace

const QuadratureRule& triangle_rule(int degree)
{
    static const QuadratureRule r1 = make_rule(1);
    static const QuadratureRule r4 = make_rule(4);
    static const QuadratureRule r8 = make_rule(8);
    switch (degree) {
    case 1: return r1;
    case 4: return r4;
    case 8: return r8;
    default: throw std::invalid_argument("unsupported quadrature degree " + std::to_string(degree));
    }
}

const LineRule& gauss_line_rule5()
{
    static const LineRule rule = [] {
        const double x1 = 0.53846931010568309104;
        const double x2 = 0.90617984593866399280;
        const double w0 = 128.0 / 225.0;
        const double w1 = 0.47862867049936646804;
        const double w2 = 0.23692688505618908751;
        LineRule r;
        r.points = {0.5 * (1.0 - x2), 0.5 * (1.0 - x1), 0.5, 0.5 * (1.0 + x1), 0.5 * (1.0 + x2)};
        r.weights = {0.5 * w2, 0.5 * w1, 0.5 * w0, 0.5 * w1, 0.5 * w2};
        return r;
    }();
    return rule;
}

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::vector<std::size_t> row_ptr, std::vector<Index> cols)
    : row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(cols_.size(), 0.0)
{
    if (row_ptr_.size() != rows + 1 || row_ptr_.back() != cols_.size()) {
        throw std::invalid_argument("SparseMatrix: inconsistent row pointer");
    }
}

std::size_t SparseMatrix::position(Index i, Index j) const
{
    const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) throw std::out_of_range("SparseMatrix: entry outside pattern");
    return static_cast<std::size_t>(it - cols_.begin());
}

double SparseMatrix::value(Index i, Index j) const
{
    const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    const std::size_t n = rows();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
        y[i] = s;
    }
}

std::vector<double> SparseMatrix::diagonal() const
{
    std::vector<double> d(rows(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i) d[i] = value(i, i);
    return d;
}

double SparseMatrix::asymmetry() const
{
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < rows(); ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            scale = std::max(scale, std::abs(values_[k]));
            worst = std::max(worst, std::abs(values_[k] - value(cols_[k], i)));
        }
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

// ---------------------------------------------------------------------------
// FeFunction

FeFunction::FeFunction(const Mesh& m, std::vector<double> c) : mesh(&m), coefficients(std::move(c))
{
    if (coefficients.size() != m.vertex_count()) {
        throw std::invalid_argument("FeFunction: coefficient count differs from vertex count");
    }
}

double FeFunction::value_in(Index t, const Barycentric& b) const
{
    const auto& v = mesh->triangle(t).v;
    return b[0] * coefficients[v[0]] + b[1] * coefficients[v[1]] + b[2] * coefficients[v[2]];
}

Point FeFunction::gradient_in(Index t) const
{
    const auto g = barycentric_gradients(*mesh, t);
    const auto& v = mesh->triangle(t).v;
    Point grad{};
    for (int k = 0; k < 3; ++k) grad = grad + coefficients[v[k]] * g[k];
    return grad;
}

std::array<Point, 3> barycentric_gradients(const Mesh& mesh, Index t)
{
    const double scale = -1.0 / (2.0 * mesh.area(t));
    return {scale * mesh.scaled_normal(t, 0), scale * mesh.scaled_normal(t, 1),
            scale * mesh.scaled_normal(t, 2)};
}

Point map_to_physical(const Mesh& mesh, Index t, const Barycentric& b)
{
    const auto& v = mesh.triangle(t).v;
    return b[0] * mesh.vertex(v[0]) + b[1] * mesh.vertex(v[1]) + b[2] * mesh.vertex(v[2]);
}

// ---------------------------------------------------------------------------
// Assembly

SystemOperator assemble(const Mesh& mesh, const ScalarField& f)
{
    const std::size_t nv = mesh.vertex_count();
    const std::size_t nt = mesh.triangle_count();

    // Symbolic pass: the row of vertex i holds every vertex sharing a triangle with it.
    std::vector<std::size_t> row_ptr(nv + 1, 0);
    std::vector<Index> cols;
    std::vector<Index> scratch;
    for (Index i = 0; i < nv; ++i) {
        scratch.clear();
        for (Index t : mesh.vertex_patch(i)) {
            for (Index j : mesh.triangle(t).v) scratch.push_back(j);
        }
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        cols.insert(cols.end(), scratch.begin(), scratch.end());
        row_ptr[i + 1] = cols.size();
    }
    SystemOperator sys{SparseMatrix(nv, std::move(row_ptr), std::move(cols)), std::vector<double>(nv, 0.0)};

    const QuadratureRule& rule = triangle_rule(assembly_degree);
    std::vector<std::array<double, 9>> local_matrix(nt);
    std::vector<std::array<double, 3>> local_load(nt);
    parallel_for(nt, [&](std::size_t t) {
        const double area = mesh.area(t);
        const auto g = barycentric_gradients(mesh, t);
        auto& a = local_matrix[t];
        auto& l = local_load[t];
        a.fill(0.0);
        l.fill(0.0);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[3 * i + j] = area * dot(g[i], g[j]);
        }
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto& b = rule.points[q];
            const double w = rule.weights[q] * area;
            const double fq = f(map_to_physical(mesh, t, b));
            require_finite(fq, "load function");
            for (int i = 0; i < 3; ++i) {
                l[i] += w * fq * b[i];
                for (int j = 0; j < 3; ++j) a[3 * i + j] += w * b[i] * b[j];
            }
        }
    });

    auto values = sys.matrix.values();
    for (Index t = 0; t < nt; ++t) {
        const auto& v = mesh.triangle(t).v;
        for (int i = 0; i < 3; ++i) {
            sys.load[v[i]] += local_load[t][i];
            for (int j = 0; j < 3; ++j) values[sys.matrix.position(v[i], v[j])] += local_matrix[t][3 * i + j];
        }
    }
    return sys;
}

double evaluate(const FeFunction& u, const Point& x)
{
    const Mesh& mesh = *u.mesh;
    for (Index t = 0; t < mesh.triangle_count(); ++t) {
        const auto& v = mesh.triangle(t).v;
        const Point a = mesh.vertex(v[0]);
        const Point b = mesh.vertex(v[1]);
        const Point c = mesh.vertex(v[2]);
        const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        const double l1 = ((x.x - a.x) * (c.y - a.y) - (c.x - a.x) * (x.y - a.y)) / det;
        const double l2 = ((b.x - a.x) * (x.y - a.y) - (x.x - a.x) * (b.y - a.y)) / det;
        const double l0 = 1.0 - l1 - l2;
        constexpr double tol = -1e-12;
        if (l0 >= tol && l1 >= tol && l2 >= tol) return u.value_in(t, {l0, l1, l2});
    }
    throw PointOutsideDomain("(" + std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
}

FeFunction interpolate(const Mesh& mesh, const ScalarField& z)
{
    std::vector<double> c(mesh.vertex_count());
    for (Index i = 0; i < c.size(); ++i) {
        c[i] = z(mesh.vertex(i));
        require_finite(c[i], "interpolated function");
    }
    return FeFunction(mesh, std::move(c));
}

// ---------------------------------------------------------------------------
// L^p norms

double scaled_pnorm(std::span<const double> values, std::span<const double> weights, double p)
{
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * std::pow(std::abs(values[i]) / peak, p);
    return peak * std::pow(sum, 1.0 / p);
}

namespace {

struct Samples {
    std::vector<double> values;
    std::vector<double> weights;
};

Samples sample_element_field(const ElementField& g, const Mesh& mesh, double p)
{
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("L^p norm needs finite p >= 1");
    const QuadratureRule& rule = triangle_rule(error_degree);
    const std::size_t nq = rule.points.size();
    Samples s;
    s.values.resize(mesh.triangle_count() * nq);
    s.weights.resize(s.values.size());
    parallel_for(mesh.triangle_count(), [&](std::size_t t) {
        const double area = mesh.area(t);
        for (std::size_t q = 0; q < nq; ++q) {
            const auto& b = rule.points[q];
            const double v = g(t, map_to_physical(mesh, t, b), b);
            require_finite(v, "L^p integrand");
            s.values[t * nq + q] = v;
            s.weights[t * nq + q] = rule.weights[q] * area;
        }
    });
    return s;
}

ElementField lift(const ScalarField& g)
{
    return [&g](Index, const Point& x, const Barycentric&) { return g(x); };
}

} // namespace

double lp_quadrature_norm(const ElementField& g, const Mesh& mesh, double p)
{
    const Samples s = sample_element_field(g, mesh, p);
    return scaled_pnorm(s.values, s.weights, p);
}

double lp_quadrature_norm(const ScalarField& g, const Mesh& mesh, double p)
{
    return lp_quadrature_norm(lift(g), mesh, p);
}

std::vector<double> lp_quadrature_norms(const ElementField& g, const Mesh& mesh, double p)
{
    const Samples s = sample_element_field(g, mesh, p);
    const std::size_t nq = triangle_rule(error_degree).points.size();
    std::vector<double> norms(mesh.triangle_count());
    for (std::size_t t = 0; t < norms.size(); ++t) {
        norms[t] = scaled_pnorm(std::span(s.values).subspan(t * nq, nq),
                                std::span(s.weights).subspan(t * nq, nq), p);
    }
    return norms;
}

std::vector<double> lp_quadrature_norms(const ScalarField& g, const Mesh& mesh, double p)
{
    return lp_quadrature_norms(lift(g), mesh, p);
}

} // namespace signorini
