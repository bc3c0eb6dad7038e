#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "signorini/errors.hpp"
#include "signorini/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace signorini;

namespace {

std::size_t boundary_edge_count(const Mesh& m)
{
    return std::count_if(m.edges().begin(), m.edges().end(), [](const Edge& e) { return e.is_boundary(); });
}

Index find_vertex(const Mesh& m, Point p)
{
    for (Index i = 0; i < m.vertex_count(); ++i) {
        if (distance(m.vertex(i), p) < 1e-14) return i;
    }
    return invalid_index;
}

MarkSet random_marks(const Mesh& m, std::mt19937& rng, double fraction)
{
    std::bernoulli_distribution pick(fraction);
    MarkSet marks;
    for (Index t = 0; t < m.triangle_count(); ++t) {
        if (pick(rng)) marks.marked.push_back(t);
    }
    if (marks.empty()) marks.marked.push_back(0);
    return marks;
}

} // namespace

TEST_CASE("structured unit square counts")
{
    const Mesh m1 = make_structured_mesh(Domain::unit_square, 1);
    CHECK(m1.vertex_count() == 4);
    CHECK(m1.triangle_count() == 2);
    CHECK(boundary_edge_count(m1) == 4);

    const Mesh m8 = make_structured_mesh(Domain::unit_square, 8);
    CHECK(m8.vertex_count() == 81);
    CHECK(m8.triangle_count() == 128);
    CHECK(m8.h_max() == doctest::Approx(std::sqrt(2.0) / 8).epsilon(1e-15));
    CHECK(m8.total_area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m8.is_conforming());
}

TEST_CASE("structured L-shape")
{
    const Mesh m = make_structured_mesh(Domain::l_shape, 2);
    CHECK(m.triangle_count() == 24);
    CHECK(m.total_area() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(m.is_conforming());
    // the removed quadrant holds no vertex in its interior
    for (const Point& p : m.vertices()) CHECK_FALSE((p.x > 1e-12 && p.y < -1e-12));
}

TEST_CASE("refinement edge is the longest edge on the coarse mesh")
{
    for (Domain d : {Domain::unit_square, Domain::l_shape}) {
        const Mesh m = make_structured_mesh(d, 3);
        for (Index t = 0; t < m.triangle_count(); ++t) {
            const auto& v = m.triangle(t).v;
            const double ref = distance(m.vertex(v[0]), m.vertex(v[1]));
            CHECK(ref == doctest::Approx(m.diameter(t)).epsilon(1e-15));
            CHECK(m.area(t) > 0.0);
        }
    }
}

TEST_CASE("vertex patches")
{
    const Mesh m1 = make_structured_mesh(Domain::unit_square, 1);
    CHECK(m1.vertex_patch(find_vertex(m1, {0.0, 0.0})).size() == 1);
    CHECK(m1.vertex_patch(find_vertex(m1, {1.0, 0.0})).size() == 2);  // on the diagonal

    const Mesh m2 = make_structured_mesh(Domain::unit_square, 2);
    CHECK(m2.vertex_patch(find_vertex(m2, {0.5, 0.5})).size() == 6);
    CHECK(m2.vertex_patch(find_vertex(m2, {0.5, 0.0})).size() == 3);
    CHECK(m2.vertex_patch(find_vertex(m2, {0.0, 0.5})).size() == 3);

    // every patch triangle has the vertex as a corner, and nothing else does
    for (Index v = 0; v < m2.vertex_count(); ++v) {
        std::set<Index> patch(m2.vertex_patch(v).begin(), m2.vertex_patch(v).end());
        for (Index t = 0; t < m2.triangle_count(); ++t) {
            const auto& tv = m2.triangle(t).v;
            const bool corner = std::find(tv.begin(), tv.end(), v) != tv.end();
            CHECK(corner == (patch.count(t) == 1));
        }
    }
}

TEST_CASE("boundary walk")
{
    SUBCASE("n = 1 square")
    {
        const auto walk = make_structured_mesh(Domain::unit_square, 1).boundary_walk();
        REQUIRE(walk.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(walk[i].arc == doctest::Approx(static_cast<double>(i)).epsilon(1e-15));
            CHECK(walk[i].corner);
        }
    }
    SUBCASE("n = 2 square starts at the origin and runs counterclockwise")
    {
        const Mesh m = make_structured_mesh(Domain::unit_square, 2);
        const auto walk = m.boundary_walk();
        REQUIRE(walk.size() == 8);
        CHECK(std::count_if(walk.begin(), walk.end(), [](const BoundaryNode& b) { return b.corner; }) == 4);
        CHECK(distance(m.vertex(walk[0].vertex), {0.0, 0.0}) == 0.0);
        CHECK(distance(m.vertex(walk[1].vertex), {0.5, 0.0}) == 0.0);
        CHECK(walk[7].arc == doctest::Approx(3.5));
    }
    SUBCASE("n = 1 L-shape")
    {
        const auto walk = make_structured_mesh(Domain::l_shape, 1).boundary_walk();
        CHECK(walk.size() == 8);
        CHECK(std::count_if(walk.begin(), walk.end(), [](const BoundaryNode& b) { return b.corner; }) == 6);
        CHECK(walk.back().arc == doctest::Approx(7.0));
    }
}

TEST_CASE("bisection examples")
{
    const Mesh m = make_structured_mesh(Domain::unit_square, 1);

    const Mesh both = bisect_refine(m, mark_all(m));
    CHECK(both.triangle_count() == 4);
    CHECK(both.vertex_count() == 5);
    CHECK(both.is_conforming());

    const Mesh one = bisect_refine(m, MarkSet{{0}});
    CHECK(one.triangle_count() == 4);
    CHECK(one.is_conforming());

    const Mesh none = bisect_refine(m, MarkSet{});
    CHECK(none.vertex_count() == m.vertex_count());
    CHECK(none.triangle_count() == m.triangle_count());
    for (Index t = 0; t < m.triangle_count(); ++t) CHECK(none.triangle(t).v == m.triangle(t).v);

    CHECK_THROWS_AS(bisect_refine(m, MarkSet{{7}}), std::out_of_range);
}

TEST_CASE("uniform double sweep doubles n")
{
    Mesh m = make_structured_mesh(Domain::unit_square, 4);
    for (int k = 0; k < 3; ++k) {
        const double h = m.h_max();
        m = refine_sweeps(m, mark_all(m), 2);
        CHECK(m.h_max() == doctest::Approx(h / 2).epsilon(1e-14));
    }
    CHECK(m.vertex_count() == 33 * 33);
    CHECK(m.triangle_count() == 2 * 32 * 32);
}

TEST_CASE("random refinement keeps conformity, area, shape and diameters")
{
    std::mt19937 rng(7);
    for (Domain d : {Domain::unit_square, Domain::l_shape}) {
        Mesh m = make_structured_mesh(d, 2);
        const double area = m.total_area();
        const double angle0 = m.min_angle_degrees();
        for (int round = 0; round < 10; ++round) {
            const MarkSet marks = random_marks(m, rng, 0.3);
            const Mesh fine = bisect_refine(m, marks);
            REQUIRE(fine.is_conforming());
            CHECK(fine.total_area() == doctest::Approx(area).epsilon(1e-12));
            // every marked triangle was bisected: it is no longer a triangle of the fine mesh
            const auto& parent = fine.history()->triangle_parent;
            for (Index t : marks.marked) CHECK(std::count(parent.begin(), parent.end(), t) >= 2);
            for (Index t = 0; t < fine.triangle_count(); ++t) {
                CHECK(fine.diameter(t) <= m.diameter(parent[t]) * (1 + 1e-14));
            }
            m = fine;
        }
        CHECK(m.min_angle_degrees() >= angle0 / 2);
        if (d == Domain::unit_square) CHECK(m.min_angle_degrees() >= 20.0);
    }
}

TEST_CASE("prolongation reproduces linear functions")
{
    Mesh m = make_structured_mesh(Domain::l_shape, 2);
    std::vector<double> values;
    for (const Point& p : m.vertices()) values.push_back(2.0 * p.x - 3.0 * p.y + 1.0);
    std::mt19937 rng(3);
    const Mesh fine = refine_sweeps(m, random_marks(m, rng, 0.4), 2);
    const auto fine_values = prolongate(fine, values);
    REQUIRE(fine_values.size() == fine.vertex_count());
    for (Index i = 0; i < fine.vertex_count(); ++i) {
        const Point& p = fine.vertex(i);
        CHECK(fine_values[i] == doctest::Approx(2.0 * p.x - 3.0 * p.y + 1.0).epsilon(1e-14));
    }
}

TEST_CASE("topology validation")
{
    // clockwise triangle
    CHECK_THROWS_AS(Mesh({{0, 0}, {0, 1}, {1, 0}}, {Triangle{{0, 1, 2}}}), MeshTopologyError);
    // three triangles sharing one edge
    CHECK_THROWS_AS(Mesh({{0, 0}, {1, 0}, {0.5, 1}, {0.5, -1}, {0.5, 2}},
                         {Triangle{{0, 1, 2}}, Triangle{{1, 0, 3}}, Triangle{{0, 1, 4}}}),
                    MeshTopologyError);
    // degenerate
    CHECK_THROWS_AS(Mesh({{0, 0}, {1, 0}, {2, 0}}, {Triangle{{0, 1, 2}}}), MeshTopologyError);
    CHECK_THROWS_AS(make_structured_mesh(Domain::unit_square, 0), std::invalid_argument);
}

TEST_CASE("hanging node is not conforming")
{
    // Square split into a left triangle and two right triangles that share a
    // midpoint on the diagonal the left triangle does not know about.
    std::vector<Point> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    std::vector<Triangle> t = {Triangle{{0, 2, 3}}, Triangle{{0, 1, 4}}, Triangle{{1, 2, 4}}};
    bool conforming = true;
    try {
        conforming = Mesh(v, t).is_conforming();
    }
    catch (const MeshTopologyError&) {
        conforming = false;
    }
    CHECK_FALSE(conforming);
}
