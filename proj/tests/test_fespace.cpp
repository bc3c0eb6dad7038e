#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "signorini/cg.hpp"
#include "signorini/errors.hpp"
#include "signorini/fespace.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace signorini;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// integral of x^a y^b over the reference triangle (0,0), (1,0), (0,1)
double reference_monomial(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

Mesh reference_triangle() { return Mesh({{0, 0}, {1, 0}, {0, 1}}, {Triangle{{1, 2, 0}}}); }

} // namespace

TEST_CASE("triangle rules integrate monomials up to their degree")
{
    for (int degree : {1, 4, 8}) {
        const QuadratureRule& rule = triangle_rule(degree);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
        for (int a = 0; a <= degree; ++a) {
            for (int b = 0; a + b <= degree; ++b) {
                double q = 0.0;
                for (std::size_t i = 0; i < rule.points.size(); ++i) {
                    // barycentric (l0, l1, l2) of vertices (0,0), (1,0), (0,1)
                    const double x = rule.points[i][1];
                    const double y = rule.points[i][2];
                    q += rule.weights[i] * std::pow(x, a) * std::pow(y, b);
                }
                INFO("degree " << degree << " monomial x^" << a << " y^" << b);
                CHECK(0.5 * q == doctest::Approx(reference_monomial(a, b)).epsilon(1e-14));
            }
        }
    }
    CHECK(triangle_rule(4).points.size() == 6);
    CHECK(triangle_rule(8).points.size() == 16);
    CHECK_THROWS(triangle_rule(5));
}

TEST_CASE("five-point Gauss rule is exact to degree 9")
{
    const LineRule& rule = gauss_line_rule5();
    for (int k = 0; k <= 9; ++k) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) q += rule.weights[i] * std::pow(rule.points[i], k);
        CHECK(q == doctest::Approx(1.0 / (k + 1)).epsilon(1e-15));
    }
}

TEST_CASE("load of f = 1 sums to the area")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 1);
    const SystemOperator sys = assemble(m, [](const Point&) { return 1.0; });
    double sum = 0.0;
    for (double v : sys.load) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reference triangle row sums are area / 3")
{
    const Mesh m = reference_triangle();
    const SystemOperator sys = assemble(m, [](const Point&) { return 0.0; });
    for (Index i = 0; i < 3; ++i) {
        double row = 0.0;
        for (Index j = 0; j < 3; ++j) row += sys.matrix.value(i, j);
        CHECK(row == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    }
}

TEST_CASE("two-triangle square matches the hand-assembled matrix")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 1);
    // vertices in lattice order (0,0), (1,0), (0,1), (1,1); diagonal (1,0)-(0,1)
    REQUIRE(m.vertex(3).x == 1.0);
    REQUIRE(m.vertex(3).y == 1.0);
    const double expected[4][4] = {
        {13.0 / 12, -11.0 / 24, -11.0 / 24, 0.0},
        {-11.0 / 24, 7.0 / 6, 1.0 / 12, -11.0 / 24},
        {-11.0 / 24, 1.0 / 12, 7.0 / 6, -11.0 / 24},
        {0.0, -11.0 / 24, -11.0 / 24, 13.0 / 12},
    };
    const SystemOperator sys = assemble(m, [](const Point&) { return 1.0; });
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) CHECK(sys.matrix.value(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-15));
    }
}

TEST_CASE("assembled operator is symmetric, positive definite and reproduces integrals of hats")
{
    for (Domain d : {Domain::unit_square, Domain::l_shape}) {
        const Mesh m = make_structured_mesh(d, 5);
        const SystemOperator sys = assemble(m, [](const Point&) { return 1.0; });
        CHECK(sys.matrix.rows() == m.vertex_count());
        CHECK(sys.matrix.asymmetry() <= 1e-13);
        // stiffness rows sum to zero, so A 1 = int phi_i = load of f = 1
        std::vector<double> ones(m.vertex_count(), 1.0), y(m.vertex_count());
        sys.matrix.multiply(ones, y);
        for (Index i = 0; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(sys.load[i]).epsilon(1e-13));
        std::mt19937 rng(1);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> x(m.vertex_count());
            for (double& v : x) v = g(rng);
            sys.matrix.multiply(x, y);
            double q = 0.0;
            for (Index i = 0; i < x.size(); ++i) q += x[i] * y[i];
            CHECK(q > 0.0);
        }
    }
}

TEST_CASE("non-finite data is rejected")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 2);
    CHECK_THROWS_AS(assemble(m, [](const Point& x) { return x.x > 0.7 ? std::nan("") : 1.0; }), NonFiniteData);
    CHECK_THROWS_AS(assemble(m, [](const Point&) { return std::numeric_limits<double>::infinity(); }), NonFiniteData);
    CHECK_THROWS_AS(lp_quadrature_norm(ScalarField([](const Point&) { return std::nan(""); }), m, 2.0), NonFiniteData);
}

TEST_CASE("Galerkin consistency for linear u with f = u")
{
    // -Lap u + u = u in the domain; the natural boundary term (grad u . n, v)
    // is added to the load by hand.
    const Mesh m = make_structured_mesh(Domain::l_shape, 6);
    auto u = [](const Point& x) { return 0.3 + 2.0 * x.x - 1.5 * x.y; };
    const Point grad{2.0, -1.5};
    SystemOperator sys = assemble(m, u);
    for (Index t = 0; t < m.triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            if (!m.edges()[m.triangle_edge(t, k)].is_boundary()) continue;
            // flux (grad u . n) |e| shared equally by the edge endpoints
            const double flux = dot(grad, m.scaled_normal(t, k));
            sys.load[m.triangle(t).v[(k + 1) % 3]] += 0.5 * flux;
            sys.load[m.triangle(t).v[(k + 2) % 3]] += 0.5 * flux;
        }
    }
    std::vector<double> x(m.vertex_count(), 0.0);
    std::vector<char> fixed(m.vertex_count(), 0);
    const CgResult r = solve_cg(sys.matrix, sys.load, x, fixed, 1e-14);
    CHECK(r.converged);
    for (Index i = 0; i < m.vertex_count(); ++i) CHECK(std::abs(x[i] - u(m.vertex(i))) <= 1e-10);
}

TEST_CASE("point evaluation")
{
    const Mesh m = make_structured_mesh(Domain::l_shape, 3);
    const FeFunction one(m, std::vector<double>(m.vertex_count(), 1.0));
    const FeFunction lin = interpolate(m, [](const Point& x) { return x.x + x.y; });
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        const Point p{coord(rng), coord(rng)};
        if (p.x > 0.0 && p.y < 0.0) {
            CHECK_THROWS_AS(evaluate(lin, p), PointOutsideDomain);
            continue;
        }
        CHECK(evaluate(one, p) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(evaluate(lin, p) - (p.x + p.y)) <= 1e-14);
        ++checked;
    }
    for (Index v = 0; v < m.vertex_count(); ++v) CHECK(evaluate(lin, m.vertex(v)) == lin.coefficients[v]);
    CHECK_THROWS_AS(evaluate(lin, {2.0, 0.0}), PointOutsideDomain);
    CHECK_THROWS_AS(evaluate(lin, {0.5, -0.5}), PointOutsideDomain);
}

TEST_CASE("P1 functions are continuous across shared edges")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 4);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> c(m.vertex_count());
    for (double& v : c) v = val(rng);
    const FeFunction u(m, c);
    for (const Edge& e : m.edges()) {
        if (e.is_boundary()) continue;
        const Point mid = 0.5 * (m.vertex(e.v[0]) + m.vertex(e.v[1]));
        double values[2];
        for (int s = 0; s < 2; ++s) {
            const Index t = e.owners[s];
            const auto& tv = m.triangle(t).v;
            Barycentric b{};
            for (int k = 0; k < 3; ++k) b[k] = (tv[k] == e.v[0] || tv[k] == e.v[1]) ? 0.5 : 0.0;
            values[s] = u.value_in(t, b);
            CHECK(distance(map_to_physical(m, t, b), mid) <= 1e-15);
        }
        CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-15));
    }
}

TEST_CASE("L^p quadrature norms")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 4);
    for (double p : {1.0, 2.0, 4.0, 32.0}) {
        CHECK(lp_quadrature_norm(ScalarField([](const Point&) { return -2.5; }), m, p) ==
              doctest::Approx(2.5).epsilon(1e-14));
    }
    const ScalarField x = [](const Point& q) { return q.x; };
    CHECK(lp_quadrature_norm(x, m, 2.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(lp_quadrature_norm(x, m, 4.0) == doctest::Approx(std::pow(0.2, 0.25)).epsilon(1e-14));

    // homogeneity and monotonicity
    const ScalarField g = [](const Point& q) { return std::sin(3 * q.x) * std::cos(2 * q.y); };
    const double base = lp_quadrature_norm(g, m, 4.0);
    CHECK(lp_quadrature_norm(ScalarField([&](const Point& q) { return -3.0 * g(q); }), m, 4.0) ==
          doctest::Approx(3.0 * base).epsilon(1e-13));
    CHECK(lp_quadrature_norm(ScalarField([&](const Point& q) { return 0.5 * g(q); }), m, 4.0) <= base);

    // elementwise norms recombine into the global one
    const auto local = lp_quadrature_norms(g, m, 4.0);
    double s = 0.0;
    for (double v : local) s += std::pow(v, 4.0);
    CHECK(std::pow(s, 0.25) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("max-scaled norms survive extreme magnitudes")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 2);
    CHECK(lp_quadrature_norm(ScalarField([](const Point&) { return 1e-20; }), m, 32.0) ==
          doctest::Approx(1e-20).epsilon(1e-13));
    CHECK(lp_quadrature_norm(ScalarField([](const Point&) { return 1e20; }), m, 32.0) ==
          doctest::Approx(1e20).epsilon(1e-13));
    const std::vector<double> v = {1e-30, 2e-30};
    const std::vector<double> w = {0.5, 0.5};
    CHECK(scaled_pnorm(v, w, 32.0) == doctest::Approx(std::pow(0.5 + 0.5 * std::pow(2.0, 32.0), 1.0 / 32) * 1e-30));
}
