#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace signorini {

using Index = std::size_t;
inline constexpr Index invalid_index = std::numeric_limits<Index>::max();

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double distance(Point a, Point b);

enum class Domain { unit_square, l_shape };

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view name);

/// Triangle with its refinement edge stored first: (v[0], v[1]) is the
/// refinement edge and v[2] is the newest vertex. Positively oriented.
struct Triangle {
    std::array<Index, 3> v{};
};

/// Undirected edge with one (boundary) or two (interior) owner triangles.
struct Edge {
    std::array<Index, 2> v{};
    std::array<Index, 2> owners{invalid_index, invalid_index};

    bool is_boundary() const { return owners[1] == invalid_index; }
};

struct BoundaryNode {
    Index vertex = 0;
    double arc = 0.0;
    bool corner = false;
    std::size_t loop = 0;
};

/// Provenance of a mesh produced by bisection: the endpoints of the edge each
/// new vertex bisects and the source triangle of every output triangle.
struct RefinementHistory {
    std::size_t parent_vertex_count = 0;
    std::vector<std::array<Index, 2>> new_vertex_parents;
    std::vector<Index> triangle_parent;
};

/// Set of triangle indices selected for refinement.
struct MarkSet {
    std::vector<Index> marked;

    bool empty() const { return marked.empty(); }
    std::size_t size() const { return marked.size(); }
};

/// Conforming triangulation. Immutable once built; refinement returns a new mesh.
class Mesh {
public:
    /// Builds topology and validates it; throws MeshTopologyError on
    /// non-manifold edges, degenerate or clockwise triangles, or a boundary
    /// that does not decompose into closed loops.
    Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
         std::optional<RefinementHistory> history = std::nullopt);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t triangle_count() const { return triangles_.size(); }

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Point& vertex(Index i) const { return vertices_[i]; }
    const Triangle& triangle(Index t) const { return triangles_[t]; }

    /// Edge index of local edge k of triangle t (the edge opposite v[k]).
    Index triangle_edge(Index t, int k) const { return triangle_edges_[t][k]; }

    /// Boundary vertices in walk order, one loop after another.
    const std::vector<Index>& boundary_loop() const { return boundary_loop_; }
    /// Start offsets of each loop in boundary_loop(), plus the end sentinel.
    const std::vector<std::size_t>& loop_offsets() const { return loop_offsets_; }
    bool is_boundary_vertex(Index v) const { return boundary_position_[v] != invalid_index; }
    bool is_corner(Index v) const { return corner_[v]; }

    const std::optional<RefinementHistory>& history() const { return history_; }

    double area(Index t) const;
    double diameter(Index t) const;
    double h_max() const;
    double total_area() const;
    /// Smallest interior angle over all triangles, in degrees.
    double min_angle_degrees() const;
    /// Outward unit normal of local edge k of triangle t, scaled by its length.
    Point scaled_normal(Index t, int k) const;

    /// Triangles that have v as a corner (support of the hat function at v).
    std::span<const Index> vertex_patch(Index v) const;

    /// Ordered boundary traversal with arc length and corner flags. Each loop
    /// starts at its lexicographically smallest (y, x) vertex, walked with the
    /// domain on the left.
    std::vector<BoundaryNode> boundary_walk() const;

    /// Verifies edge ownership and the absence of hanging nodes; returns false
    /// on any violation.
    bool is_conforming() const;

private:
    void build_topology();
    void build_boundary();

    std::vector<Point> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::array<Index, 3>> triangle_edges_;
    std::vector<std::size_t> patch_offsets_;
    std::vector<Index> patch_triangles_;
    std::vector<Index> boundary_loop_;
    std::vector<std::size_t> loop_offsets_;
    std::vector<Index> boundary_position_;
    std::vector<bool> corner_;
    std::optional<RefinementHistory> history_;
};

/// Structured mesh with n subdivisions per unit edge, each square split along
/// its (1,0)-(0,1) diagonal. Refinement edges are seeded on longest edges.
Mesh make_structured_mesh(Domain domain, int n);

/// Newest-vertex bisection of every marked triangle plus the closure needed
/// to keep the mesh conforming. An empty mark set returns an identical mesh.
Mesh bisect_refine(const Mesh& mesh, const MarkSet& marks);

/// Bisects the marked triangles, then bisects their children `sweeps - 1`
/// more times. Two sweeps halve the diameter of each marked element.
Mesh refine_sweeps(const Mesh& mesh, const MarkSet& marks, int sweeps);

/// Transfers nodal values to a mesh produced by bisect_refine of `coarse`.
std::vector<double> prolongate(const Mesh& fine, std::span<const double> coarse_values);

MarkSet mark_all(const Mesh& mesh);

} // namespace signorini
