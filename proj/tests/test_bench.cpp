#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "signorini/bench.hpp"
#include "signorini/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace signorini;

TEST_CASE("psi endpoint conditions")
{
    const SplinePsi psi = build_psi();
    CHECK(psi.value(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(psi.derivative(0.0, k)) <= 1e-10);
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(psi.derivative(0.45, k)) <= 1e-10 * std::pow(20.0, k));
    CHECK(psi.value(0.45) == 0.0);
    CHECK(psi.value(0.6) == 0.0);
    CHECK(psi.value(-0.1) == 0.0);
    // monotone decreasing between the endpoints
    for (double s = 0.01; s < 0.45; s += 0.01) CHECK(psi.value(s) < psi.value(s - 0.01));
}

TEST_CASE("monomial and Bernstein constructions agree")
{
    const SplinePsi psi = build_psi();
    const auto bern = build_psi_bernstein();
    for (int i = 0; i <= 100; ++i) {
        const double s = 0.45 * i / 100.0;
        CHECK(std::abs(psi.value(s) - evaluate_bernstein(bern, 0.45, s)) <= 1e-10);
    }
    const double mid = psi.value(0.225);
    CHECK(std::abs(mid - evaluate_bernstein(bern, 0.45, 0.225)) <= 1e-10);
    MESSAGE("psi(0.225) = " << mid);
    // the first five Bernstein coefficients are 1 and the last five 0
    for (int k = 0; k < 5; ++k) CHECK(bern[k] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 5; k < 10; ++k) CHECK(std::abs(bern[k]) <= 1e-12);
}

TEST_CASE("Example 1 point values")
{
    const ManufacturedSolution ms = example1();
    const SplinePsi psi = build_psi();
    const ScalarField& u = *ms.u;
    CHECK(u({0.3, 0.0}) == doctest::Approx(10 * psi.value(0.2) * std::pow(0.2, 1.5)).epsilon(1e-12));
    CHECK(u({0.3, 0.0}) > 0.0);
    CHECK(std::abs(u({0.7, 0.0})) <= 1e-15);
    for (double x : {0.0, 0.01, 0.03, 0.05}) CHECK(u({x, 0.0}) == 0.0);
    CHECK(u({0.5, 0.5}) == 0.0);
    CHECK(ms.exact_critical_arcs == std::vector<double>{0.05, 0.5});
}

TEST_CASE("Example 1 satisfies the PDE and the gradient formula")
{
    const ManufacturedSolution ms = example1();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> c(0.0, 1.0);
    std::vector<Point> points;
    while (points.size() < 100) {
        const Point x{c(rng), c(rng)};
        // stay clear of the singular centre and of the domain edges
        if (std::hypot(x.x - 0.5, x.y) < 0.02 || x.y < 0.01) continue;
        points.push_back(x);
    }
    CHECK(manufactured_residual(ms, points) <= 1e-4);

    const double h = 1e-6;
    for (const Point& x : points) {
        const Point g = (*ms.grad_u)(x);
        const double gx = ((*ms.u)({x.x + h, x.y}) - (*ms.u)({x.x - h, x.y})) / (2 * h);
        const double gy = ((*ms.u)({x.x, x.y + h}) - (*ms.u)({x.x, x.y - h})) / (2 * h);
        CHECK(std::abs(g.x - gx) <= 1e-6 * std::max(1.0, std::abs(gx)));
        CHECK(std::abs(g.y - gy) <= 1e-6 * std::max(1.0, std::abs(gy)));
    }
}

TEST_CASE("Example 1 boundary sign conditions")
{
    const ManufacturedSolution ms = example1();
    // 50 points per side, with the outward normal of each side
    const std::array<std::pair<Point, Point>, 4> sides{{
        {{0, 0}, {0, -1}}, {{1, 0}, {1, 0}}, {{1, 1}, {0, 1}}, {{0, 1}, {-1, 0}}}};
    const std::array<Point, 4> dirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < 50; ++i) {
            const double t = (i + 0.5) / 50.0;
            const Point x = sides[s].first + t * dirs[s];
            if (s == 0 && std::abs(x.x - 0.5) < 1e-9) continue;
            const double u = (*ms.u)(x);
            const Point g = (*ms.grad_u)(x);
            const double dn = g.x * sides[s].second.x + g.y * sides[s].second.y;
            INFO("side " << s << " at (" << x.x << ", " << x.y << ")");
            CHECK(u >= -1e-12);
            CHECK(u * dn <= 1e-8);
            CHECK(std::abs(u * dn) <= 1e-8);
        }
    }
}

TEST_CASE("Example 2 data")
{
    const ScalarField w = example2_w();
    CHECK(w({0.91, 0.0}) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(w({0.0, -0.91}) == doctest::Approx(-0.5).epsilon(1e-14));
    const double r = 0.91 + 0.5;
    CHECK(w({r / std::sqrt(2.0), r / std::sqrt(2.0)}) == doctest::Approx(0.5).epsilon(1e-12));

    const ManufacturedSolution lit = example2();
    const ManufacturedSolution flipped = example2(0.91, false);
    CHECK(lit.domain == Domain::l_shape);
    CHECK_FALSE(lit.u.has_value());
    for (const Point& x : std::vector<Point>{{0, 0}, {1e-12, 0}, {1e-9, -1e-9}, {-1e-7, 0}}) {
        CHECK(std::isfinite(lit.f(x)));
        CHECK(std::isfinite(flipped.f(x)));
    }
    // with the opposite sign, -Lap w + w = f, checked by finite differences
    ManufacturedSolution check = flipped;
    check.u = w;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<Point> points;
    while (points.size() < 100) {
        const Point x{c(rng), c(rng)};
        if ((x.x > 0 && x.y < 0) || std::hypot(x.x, x.y) < 0.05) continue;
        points.push_back(x);
        // f_literal + f_flipped = 2 w
        CHECK(lit.f(x) + flipped.f(x) == doctest::Approx(2 * w(x)).epsilon(1e-10));
    }
    CHECK(manufactured_residual(check, points) <= 1e-4);
}

TEST_CASE("signed error parts")
{
    const ManufacturedSolution ms = example1();
    const Mesh m = make_structured_mesh(Domain::unit_square, 16);
    const FeFunction iu = lagrange(*ms.u, m);
    for (double p : {2.0, 4.0, 32.0}) {
        const SignedErrors e = signed_lp_errors(iu, ms, p);
        CHECK(std::pow(e.pos, p) + std::pow(e.neg, p) == doctest::Approx(std::pow(e.total, p)).epsilon(1e-12));
        CHECK(e.total > 0.0);
    }

    // pushing U down by a hat function only adds to the positive part
    FeFunction low = iu;
    const Index centre = 8 * 17 + 8;
    low.coefficients[centre] -= 0.5;
    const SignedErrors base = signed_lp_errors(iu, ms, 4.0);
    const SignedErrors e = signed_lp_errors(low, ms, 4.0);
    CHECK(e.pos > base.pos + 1e-3);
    CHECK(e.neg <= base.neg + 1e-15);

    const ManufacturedSolution one = constant_one();
    const SignedErrors zero = signed_lp_errors(lagrange(*one.u, m), one, 4.0);
    CHECK(zero.total == 0.0);

    CHECK_THROWS_AS(signed_lp_errors(iu, example2(), 4.0), NoExactSolution);
}

TEST_CASE("convergence rates")
{
    const EocResult two = eoc({{0.1, 0.1}, {0.05, 0.025}});
    REQUIRE(two.pairwise.size() == 1);
    CHECK(two.pairwise[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(two.tail_slope == doctest::Approx(2.0).epsilon(1e-12));

    const EocResult flat = eoc({{1, 3}, {0.5, 3}, {0.25, 3}});
    for (double r : flat.pairwise) CHECK(r == 0.0);
    CHECK(std::abs(flat.tail_slope) <= 1e-15);

    std::vector<std::array<double, 2>> power;
    for (int k = 0; k < 7; ++k) {
        const double h = std::pow(0.5, k) / 3.0;
        power.push_back({h, std::pow(h, 1.5625)});
    }
    CHECK(eoc(power).tail_slope == doctest::Approx(1.5625).epsilon(1e-6));

    // against DOFs the slope is negative
    const EocResult dofs = eoc({{100, 1e-2}, {400, 2.5e-3}, {1600, 6.25e-4}});
    CHECK(dofs.tail_slope == doctest::Approx(-1.0).epsilon(1e-12));

    // only the last four points enter the least-squares tail
    const EocResult tail = eoc({{1, 5}, {0.5, 1}, {0.25, 0.25}, {0.125, 0.0625}, {0.0625, 0.015625}});
    CHECK(tail.tail_slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tail.pairwise.size() == 4);

    CHECK_THROWS_AS(eoc({{1, 1}}), DegenerateInput);
    CHECK_THROWS_AS(eoc({{1, 1}, {0.5, 0}}), DegenerateInput);
    CHECK_THROWS_AS(eoc({{1, 1}, {-0.5, 1}}), DegenerateInput);
    CHECK_THROWS_AS(eoc({{1, 1}, {1, 0.5}}), DegenerateInput);
}

TEST_CASE("interpolation study bookkeeping")
{
    const auto rows = interpolation_study(*find_target_function("paraboloid"), 2, 3, 1.3, make_sample_set(2));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 3);
    CHECK(rows[1].n == 6);
    CHECK(rows[1].h_max == doctest::Approx(std::sqrt(2.0) / 6));
    CHECK_FALSE(find_target_function("nope").has_value());
    CHECK_FALSE(find_example("nope").has_value());
}
