#include "signorini/bench.hpp"

#include "signorini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace signorini {

namespace {

constexpr int spline_degree = 9;

// Gaussian elimination with partial pivoting on a dense 10x10 system.
std::array<double, 10> solve10(std::array<std::array<double, 10>, 10> a, std::array<double, 10> b)
{
    constexpr int n = 10;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw SingularSystem("spline endpoint system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::array<double, 10> x{};
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

double falling_factorial(int j, int k)
{
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= j - i;
    return f;
}

// k-th derivative in t of a degree-9 Bernstein polynomial on [0, 1].
double bernstein_derivative(std::array<double, 10> c, double t, int k)
{
    int n = spline_degree;
    for (int d = 0; d < k; ++d) {
        for (int i = 0; i < n; ++i) c[i] = n * (c[i + 1] - c[i]);
        --n;
    }
    for (int level = n; level > 0; --level) {
        for (int i = 0; i < level; ++i) c[i] = (1.0 - t) * c[i] + t * c[i + 1];
    }
    return c[0];
}

// Right-hand side of the endpoint conditions: value 1 at 0, everything else 0.
std::array<double, 10> endpoint_rhs()
{
    std::array<double, 10> b{};
    b[0] = 1.0;
    return b;
}

} // namespace

// ---------------------------------------------------------------------------
// Spline

double SplinePsi::value(double s) const { return derivative(s, 0); }

double SplinePsi::derivative(double s, int order) const
{
    if (s < 0.0 || s >= support) return 0.0;
    double result = 0.0;
    for (int j = spline_degree; j >= order; --j) {
        result = result * s + falling_factorial(j, order) * coefficients[j];
    }
    return result;
}

SplinePsi build_psi(double support)
{
    std::array<std::array<double, 10>, 10> a{};
    for (int k = 0; k < 5; ++k) {
        // psi^(k)(0) = k! c_k
        a[k][k] = falling_factorial(k, k);
        // psi^(k)(L) = sum_j j!/(j-k)! c_j L^(j-k)
        for (int j = k; j <= spline_degree; ++j) a[5 + k][j] = falling_factorial(j, k) * std::pow(support, j - k);
    }
    SplinePsi psi;
    psi.support = support;
    psi.coefficients = solve10(a, endpoint_rhs());
    return psi;
}

std::array<double, 10> build_psi_bernstein(double support)
{
    std::array<std::array<double, 10>, 10> a{};
    for (int i = 0; i <= spline_degree; ++i) {
        std::array<double, 10> unit{};
        unit[i] = 1.0;
        for (int k = 0; k < 5; ++k) {
            const double chain = std::pow(support, -k);
            a[k][i] = chain * bernstein_derivative(unit, 0.0, k);
            a[5 + k][i] = chain * bernstein_derivative(unit, 1.0, k);
        }
    }
    return solve10(a, endpoint_rhs());
}

double evaluate_bernstein(const std::array<double, 10>& coefficients, double support, double s)
{
    if (s < 0.0 || s >= support) return 0.0;
    return bernstein_derivative(coefficients, s / support, 0);
}

// ---------------------------------------------------------------------------
// Examples

ManufacturedSolution example1()
{
    const SplinePsi psi = build_psi(0.45);
    struct Polar {
        double r, cos_t, sin_t, s3, c3;
    };
    auto polar = [](const Point& x) {
        const double dx = x.x - 0.5;
        const double r = std::hypot(dx, x.y);
        Polar p{r, 1.0, 0.0, 0.0, 1.0};
        if (r == 0.0) return p;
        const double theta = std::acos(std::clamp(dx / r, -1.0, 1.0));
        p.cos_t = std::cos(theta);
        p.sin_t = std::sin(theta);
        p.s3 = std::sin(1.5 * theta);
        p.c3 = std::cos(1.5 * theta);
        return p;
    };

    ManufacturedSolution ms;
    ms.name = "example1";
    ms.domain = Domain::unit_square;
    ms.u = [psi, polar](const Point& x) {
        const Polar p = polar(x);
        return -10.0 * psi.value(p.r) * std::pow(p.r, 1.5) * p.s3;
    };
    ms.grad_u = [psi, polar](const Point& x) {
        const Polar p = polar(x);
        if (p.r == 0.0) return Point{0.0, 0.0};
        const double sr = std::sqrt(p.r);
        const double du_dr = -10.0 * (psi.derivative(p.r, 1) * p.r * sr + 1.5 * psi.value(p.r) * sr) * p.s3;
        const double du_dt = -15.0 * psi.value(p.r) * sr * p.c3;  // (1/r) du/dtheta
        return Point{du_dr * p.cos_t - du_dt * p.sin_t, du_dr * p.sin_t + du_dt * p.cos_t};
    };
    // -Lap(psi h) for the harmonic h = -r^{3/2} sin(3 theta/2) reduces to
    // sin(3 theta/2) r^{1/2} (4 psi' + r psi'').
    ms.f = [psi, polar](const Point& x) {
        const Polar p = polar(x);
        if (p.r == 0.0) return 0.0;
        const double sr = std::sqrt(p.r);
        const double minus_lap =
            10.0 * p.s3 * sr * (4.0 * psi.derivative(p.r, 1) + p.r * psi.derivative(p.r, 2));
        return minus_lap - 10.0 * psi.value(p.r) * p.r * sr * p.s3;
    };
    ms.exact_critical_arcs = {0.05, 0.5};
    ms.exact_free_intervals = {{0.05, 0.5}};
    return ms;
}

ManufacturedSolution example2(double b, bool literal_sign)
{
    ManufacturedSolution ms;
    ms.name = "example2";
    ms.domain = Domain::l_shape;
    const double sign = literal_sign ? 1.0 : -1.0;
    ms.f = [b, sign](const Point& x) {
        // The 1/r term is unbounded at the corner unless w'(0) = 0; evaluation
        // is capped at r = 1e-8.
        const double r = std::max(std::hypot(x.x, x.y), 1e-8);
        const double two_pi = 2.0 * std::numbers::pi;
        const double phase = two_pi * (r - b) * (r - b);
        const double w = std::sin(phase) - 0.5;
        const double k = 2.0 * two_pi * (r - b);
        const double dw = std::cos(phase) * k;
        const double d2w = -std::sin(phase) * k * k + 2.0 * two_pi * std::cos(phase);
        return sign * (d2w + dw / r) + w;
    };
    return ms;
}

ScalarField example2_w(double b)
{
    return [b](const Point& x) {
        const double r = std::hypot(x.x, x.y);
        return std::sin(2.0 * std::numbers::pi * (r - b) * (r - b)) - 0.5;
    };
}

ManufacturedSolution constant_one()
{
    ManufacturedSolution ms;
    ms.name = "constant_one";
    ms.domain = Domain::unit_square;
    ms.u = [](const Point&) { return 1.0; };
    ms.grad_u = [](const Point&) { return Point{0.0, 0.0}; };
    ms.f = [](const Point&) { return 1.0; };
    return ms;
}

std::vector<std::string> example_names() { return {"example1", "example2", "constant_one"}; }

std::optional<ManufacturedSolution> find_example(const std::string& name, bool example2_literal_sign)
{
    if (name == "example1") return example1();
    if (name == "example2") return example2(0.91, example2_literal_sign);
    if (name == "constant_one") return constant_one();
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Errors and rates

SignedErrors signed_lp_errors(const FeFunction& u_h, const ManufacturedSolution& ms, double p)
{
    if (!ms.u) throw NoExactSolution(ms.name);
    const ScalarField& u = *ms.u;
    const Mesh& mesh = *u_h.mesh;
    auto error = [&](Index t, const Point& x, const Barycentric& b) { return u(x) - u_h.value_in(t, b); };
    SignedErrors e;
    e.pos = lp_quadrature_norm(
        ElementField([&](Index t, const Point& x, const Barycentric& b) { return std::max(error(t, x, b), 0.0); }),
        mesh, p);
    e.neg = lp_quadrature_norm(
        ElementField([&](Index t, const Point& x, const Barycentric& b) { return std::min(error(t, x, b), 0.0); }),
        mesh, p);
    e.total = lp_quadrature_norm(ElementField(error), mesh, p);
    return e;
}

EocResult eoc(const std::vector<std::array<double, 2>>& values)
{
    if (values.size() < 2) throw DegenerateInput("need at least two points");
    for (const auto& [x, e] : values) {
        if (!(x > 0.0) || !(e > 0.0)) throw DegenerateInput("values must be positive");
    }
    EocResult result;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double dx = std::log(values[i][0] / values[i - 1][0]);
        if (dx == 0.0) throw DegenerateInput("repeated abscissa");
        result.pairwise.push_back(std::log(values[i][1] / values[i - 1][1]) / dx);
    }
    const std::size_t first = values.size() > 4 ? values.size() - 4 : 0;
    const auto m = static_cast<double>(values.size() - first);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = first; i < values.size(); ++i) {
        sx += std::log(values[i][0]);
        sy += std::log(values[i][1]);
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = first; i < values.size(); ++i) {
        const double dx = std::log(values[i][0]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(values[i][1]) - my);
    }
    if (sxx == 0.0) throw DegenerateInput("repeated abscissa");
    result.tail_slope = sxy / sxx;
    return result;
}

double manufactured_residual(const ManufacturedSolution& ms, const std::vector<Point>& points, double h)
{
    if (!ms.u) throw NoExactSolution(ms.name);
    const ScalarField& u = *ms.u;
    double worst = 0.0;
    for (const Point& x : points) {
        const double center = u(x);
        const double lap = (u({x.x + h, x.y}) + u({x.x - h, x.y}) + u({x.x, x.y + h}) + u({x.x, x.y - h}) -
                            4.0 * center) / (h * h);
        const double f = ms.f(x);
        worst = std::max(worst, std::abs(-lap + center - f) / std::max(std::abs(f), 1.0));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Interpolation targets

std::vector<std::string> target_function_names() { return {"bump", "paraboloid", "centered_paraboloid"}; }

std::optional<ScalarField> find_target_function(const std::string& name)
{
    constexpr double pi = std::numbers::pi;
    if (name == "bump") return ScalarField([](const Point& x) { return std::sin(pi * x.x) * std::sin(pi * x.y) + 1.0; });
    if (name == "paraboloid") return ScalarField([](const Point& x) { return x.x * x.x + x.y * x.y; });
    if (name == "centered_paraboloid") {
        return ScalarField([](const Point& x) { return (x.x - 0.5) * (x.x - 0.5) + (x.y - 0.5) * (x.y - 0.5); });
    }
    return std::nullopt;
}

std::vector<InterpolationLevel> interpolation_study(const ScalarField& z, int levels, int coarse_n, double q,
                                                    const SampleSet& samples)
{
    if (levels < 1 || coarse_n < 1) throw DegenerateInput("need at least one level and coarse_n >= 1");
    std::vector<InterpolationLevel> rows;
    for (int k = 0; k < levels; ++k) {
        InterpolationLevel row;
        row.n = coarse_n << k;
        const Mesh mesh = make_structured_mesh(Domain::unit_square, row.n);
        row.h_max = mesh.h_max();
        auto error = [&](const FeFunction& v) {
            return lp_quadrature_norm(
                ElementField([&](Index t, const Point& x, const Barycentric& b) { return z(x) - v.value_in(t, b); }),
                mesh, q);
        };
        row.lagrange = error(lagrange(z, mesh));
        row.one_sided = error(one_sided(z, mesh, samples));
        row.bilateral = error(bilateral(z, mesh, samples));
        rows.push_back(row);
    }
    return rows;
}

} // namespace signorini
