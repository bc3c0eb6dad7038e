#include "signorini/mesh.hpp"

#include "signorini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_map>

namespace signorini {

namespace {

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

double signed_area(const Point& a, const Point& b, const Point& c)
{
    return 0.5 * cross(b - a, c - a);
}

std::uint64_t edge_key(Index a, Index b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

bool lex_less(const Point& a, const Point& b)
{
    return a.y < b.y || (a.y == b.y && a.x < b.x);
}

// Rotates the vertex triple so the longest edge becomes the refinement edge.
Triangle seed_longest_edge(const std::vector<Point>& vertices, std::array<Index, 3> v)
{
    int best = 0;
    double best_len = -1.0;
    for (int k = 0; k < 3; ++k) {
        const double len = distance(vertices[v[k]], vertices[v[(k + 1) % 3]]);
        if (len > best_len * (1.0 + 1e-12)) {
            best_len = len;
            best = k;
        }
    }
    return Triangle{{v[best], v[(best + 1) % 3], v[(best + 2) % 3]}};
}

} // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(Domain d)
{
    return d == Domain::unit_square ? "unit_square" : "l_shape";
}

std::optional<Domain> parse_domain(std::string_view name)
{
    if (name == "unit_square") return Domain::unit_square;
    if (name == "l_shape") return Domain::l_shape;
    return std::nullopt;
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           std::optional<RefinementHistory> history)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      history_(std::move(history))
{
    build_topology();
    build_boundary();
}

void Mesh::build_topology()
{
    const std::size_t nv = vertices_.size();
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& v = triangles_[t].v;
        for (Index i : v) {
            if (i >= nv) {
                throw MeshTopologyError("triangle " + std::to_string(t) +
                                        " references missing vertex " + std::to_string(i));
            }
        }
        if (!(signed_area(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]) > 0.0)) {
            throw MeshTopologyError("triangle " + std::to_string(t) +
                                    " is degenerate or clockwise");
        }
    }

    std::unordered_map<std::uint64_t, Index> lookup;
    lookup.reserve(triangles_.size() * 2);
    triangle_edges_.assign(triangles_.size(), {});
    edges_.clear();
    edges_.reserve(triangles_.size() * 3 / 2 + 8);
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& v = triangles_[t].v;
        for (int k = 0; k < 3; ++k) {
            const Index a = v[(k + 1) % 3];
            const Index b = v[(k + 2) % 3];
            auto [it, inserted] = lookup.try_emplace(edge_key(a, b), edges_.size());
            if (inserted) {
                Edge e;
                e.v = {std::min(a, b), std::max(a, b)};
                e.owners[0] = t;
                edges_.push_back(e);
            }
            else {
                Edge& e = edges_[it->second];
                if (e.owners[1] != invalid_index) {
                    throw MeshTopologyError("edge (" + std::to_string(a) + ", " +
                                            std::to_string(b) + ") has more than two owners");
                }
                e.owners[1] = t;
            }
            triangle_edges_[t][k] = it->second;
        }
    }

    patch_offsets_.assign(nv + 1, 0);
    for (const auto& tri : triangles_) {
        for (Index i : tri.v) ++patch_offsets_[i + 1];
    }
    for (std::size_t i = 0; i < nv; ++i) patch_offsets_[i + 1] += patch_offsets_[i];
    patch_triangles_.assign(patch_offsets_.back(), 0);
    std::vector<std::size_t> fill(patch_offsets_.begin(), patch_offsets_.end() - 1);
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        for (Index i : triangles_[t].v) patch_triangles_[fill[i]++] = t;
    }
}

void Mesh::build_boundary()
{
    const std::size_t nv = vertices_.size();
    std::vector<Index> next(nv, invalid_index);
    std::vector<Index> prev(nv, invalid_index);
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            if (!edges_[triangle_edges_[t][k]].is_boundary()) continue;
            const Index a = triangles_[t].v[(k + 1) % 3];
            const Index b = triangles_[t].v[(k + 2) % 3];
            if (next[a] != invalid_index || prev[b] != invalid_index) {
                throw MeshTopologyError("boundary is not a union of simple closed loops at vertex " +
                                        std::to_string(next[a] != invalid_index ? a : b));
            }
            next[a] = b;
            prev[b] = a;
        }
    }

    for (Index i = 0; i < nv; ++i) {
        if ((next[i] == invalid_index) != (prev[i] == invalid_index)) {
            throw MeshTopologyError("open boundary chain at vertex " + std::to_string(i));
        }
    }

    boundary_position_.assign(nv, invalid_index);
    corner_.assign(nv, false);
    boundary_loop_.clear();
    loop_offsets_.assign(1, 0);
    std::vector<bool> seen(nv, false);
    for (;;) {
        Index start = invalid_index;
        for (Index i = 0; i < nv; ++i) {
            if (next[i] == invalid_index || seen[i]) continue;
            if (start == invalid_index || lex_less(vertices_[i], vertices_[start])) start = i;
        }
        if (start == invalid_index) break;
        Index cur = start;
        do {
            seen[cur] = true;
            boundary_position_[cur] = boundary_loop_.size();
            boundary_loop_.push_back(cur);
            cur = next[cur];
        } while (cur != start);
        loop_offsets_.push_back(boundary_loop_.size());
    }

    for (Index v : boundary_loop_) {
        const Point din = vertices_[v] - vertices_[prev[v]];
        const Point dout = vertices_[next[v]] - vertices_[v];
        const double scale = std::hypot(din.x, din.y) * std::hypot(dout.x, dout.y);
        corner_[v] = std::abs(cross(din, dout)) > 1e-10 * scale || dot(din, dout) < 0.0;
    }
}

double Mesh::area(Index t) const
{
    const auto& v = triangles_[t].v;
    return signed_area(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]);
}

double Mesh::diameter(Index t) const
{
    const auto& v = triangles_[t].v;
    return std::max({distance(vertices_[v[0]], vertices_[v[1]]),
                     distance(vertices_[v[1]], vertices_[v[2]]),
                     distance(vertices_[v[2]], vertices_[v[0]])});
}

double Mesh::h_max() const
{
    double h = 0.0;
    for (Index t = 0; t < triangles_.size(); ++t) h = std::max(h, diameter(t));
    return h;
}

double Mesh::total_area() const
{
    double a = 0.0;
    for (Index t = 0; t < triangles_.size(); ++t) a += area(t);
    return a;
}

double Mesh::min_angle_degrees() const
{
    double worst = 180.0;
    for (const auto& tri : triangles_) {
        for (int k = 0; k < 3; ++k) {
            const Point p = vertices_[tri.v[k]];
            const Point a = vertices_[tri.v[(k + 1) % 3]] - p;
            const Point b = vertices_[tri.v[(k + 2) % 3]] - p;
            const double angle = std::atan2(std::abs(cross(a, b)), dot(a, b));
            worst = std::min(worst, angle * 180.0 / std::numbers::pi);
        }
    }
    return worst;
}

Point Mesh::scaled_normal(Index t, int k) const
{
    const auto& v = triangles_[t].v;
    const Point d = vertices_[v[(k + 2) % 3]] - vertices_[v[(k + 1) % 3]];
    return {d.y, -d.x};
}

std::span<const Index> Mesh::vertex_patch(Index v) const
{
    return {patch_triangles_.data() + patch_offsets_[v], patch_offsets_[v + 1] - patch_offsets_[v]};
}

std::vector<BoundaryNode> Mesh::boundary_walk() const
{
    std::vector<BoundaryNode> walk;
    walk.reserve(boundary_loop_.size());
    double arc = 0.0;
    for (std::size_t loop = 0; loop + 1 < loop_offsets_.size(); ++loop) {
        const std::size_t begin = loop_offsets_[loop];
        const std::size_t end = loop_offsets_[loop + 1];
        for (std::size_t i = begin; i < end; ++i) {
            const Index v = boundary_loop_[i];
            if (i > begin) arc += distance(vertices_[boundary_loop_[i - 1]], vertices_[v]);
            walk.push_back({v, arc, corner_[v], loop});
        }
        arc += distance(vertices_[boundary_loop_[end - 1]], vertices_[boundary_loop_[begin]]);
    }
    return walk;
}

bool Mesh::is_conforming() const
{
    for (const auto& e : edges_) {
        if (e.owners[0] == invalid_index) return false;
    }
    // A hanging node shows up as a boundary vertex lying inside a boundary edge.
    for (const auto& e : edges_) {
        if (!e.is_boundary()) continue;
        const Point a = vertices_[e.v[0]];
        const Point b = vertices_[e.v[1]];
        const Point d = b - a;
        const double len2 = dot(d, d);
        for (Index v : boundary_loop_) {
            if (v == e.v[0] || v == e.v[1]) continue;
            const Point w = vertices_[v] - a;
            const double s = dot(w, d) / len2;
            if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
            if (std::abs(cross(d, w)) <= 1e-12 * len2) return false;
        }
    }
    return true;
}

Mesh make_structured_mesh(Domain domain, int n)
{
    if (n < 1) throw std::invalid_argument("make_structured_mesh: n must be >= 1");

    // Lattice of (cells+1)^2 points; the L-shape uses [-1,1]^2 with 2n cells per side.
    const bool lshape = domain == Domain::l_shape;
    const int cells = lshape ? 2 * n : n;
    auto coordinate = [&](int i) {
        return lshape ? static_cast<double>(i - n) / n : static_cast<double>(i) / n;
    };
    // L-shape removes the closed quadrant [0,1]x[-1,0] except its boundary with the rest.
    auto cell_kept = [&](int i, int j) { return !(lshape && i >= n && j < n); };
    auto point_kept = [&](int i, int j) { return !(lshape && i > n && j < n); };

    std::vector<Point> vertices;
    std::vector<Index> id((cells + 1) * (cells + 1), invalid_index);
    for (int j = 0; j <= cells; ++j) {
        for (int i = 0; i <= cells; ++i) {
            if (!point_kept(i, j)) continue;
            id[j * (cells + 1) + i] = vertices.size();
            vertices.push_back({coordinate(i), coordinate(j)});
        }
    }

    std::vector<Triangle> triangles;
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            if (!cell_kept(i, j)) continue;
            const Index v00 = id[j * (cells + 1) + i];
            const Index v10 = id[j * (cells + 1) + i + 1];
            const Index v01 = id[(j + 1) * (cells + 1) + i];
            const Index v11 = id[(j + 1) * (cells + 1) + i + 1];
            triangles.push_back(seed_longest_edge(vertices, {v00, v10, v01}));
            triangles.push_back(seed_longest_edge(vertices, {v10, v11, v01}));
        }
    }
    return Mesh(std::move(vertices), std::move(triangles));
}

Mesh bisect_refine(const Mesh& mesh, const MarkSet& marks)
{
    const auto& edges = mesh.edges();
    std::vector<bool> marked(edges.size(), false);
    std::vector<Index> work;
    auto mark_edge = [&](Index e) {
        if (!marked[e]) {
            marked[e] = true;
            work.push_back(e);
        }
    };
    for (Index t : marks.marked) {
        if (t >= mesh.triangle_count()) {
            throw std::out_of_range("bisect_refine: mark " + std::to_string(t) + " out of range");
        }
        mark_edge(mesh.triangle_edge(t, 2));
    }
    // Closure: any triangle with a marked edge must have its refinement edge marked.
    while (!work.empty()) {
        const Index e = work.back();
        work.pop_back();
        for (Index t : edges[e].owners) {
            if (t != invalid_index) mark_edge(mesh.triangle_edge(t, 2));
        }
    }

    std::vector<Point> vertices = mesh.vertices();
    RefinementHistory history;
    history.parent_vertex_count = mesh.vertex_count();
    std::vector<Index> midpoint(edges.size(), invalid_index);
    for (Index e = 0; e < edges.size(); ++e) {
        if (!marked[e]) continue;
        midpoint[e] = vertices.size();
        const Point a = vertices[edges[e].v[0]];
        const Point b = vertices[edges[e].v[1]];
        vertices.push_back(0.5 * (a + b));
        history.new_vertex_parents.push_back(edges[e].v);
    }

    std::vector<Triangle> triangles;
    triangles.reserve(mesh.triangle_count() + 4 * marks.size());
    for (Index t = 0; t < mesh.triangle_count(); ++t) {
        const auto [v0, v1, v2] = mesh.triangle(t).v;
        auto emit = [&](Index a, Index b, Index c) {
            triangles.push_back(Triangle{{a, b, c}});
            history.triangle_parent.push_back(t);
        };
        const Index ref = mesh.triangle_edge(t, 2);
        if (!marked[ref]) {
            emit(v0, v1, v2);
            continue;
        }
        const Index m = midpoint[ref];
        const Index e1 = mesh.triangle_edge(t, 1); // (v2, v0)
        const Index e0 = mesh.triangle_edge(t, 0); // (v1, v2)
        if (marked[e1]) {
            emit(m, v2, midpoint[e1]);
            emit(v0, m, midpoint[e1]);
        }
        else {
            emit(v2, v0, m);
        }
        if (marked[e0]) {
            emit(m, v1, midpoint[e0]);
            emit(v2, m, midpoint[e0]);
        }
        else {
            emit(v1, v2, m);
        }
    }
    return Mesh(std::move(vertices), std::move(triangles), std::move(history));
}

Mesh refine_sweeps(const Mesh& mesh, const MarkSet& marks, int sweeps)
{
    if (sweeps < 1) throw std::invalid_argument("refine_sweeps: sweeps must be >= 1");
    std::vector<bool> selected(mesh.triangle_count(), false);
    for (Index t : marks.marked) selected.at(t) = true;

    Mesh current = bisect_refine(mesh, marks);
    RefinementHistory composed = *current.history();
    for (int s = 1; s < sweeps && !marks.empty(); ++s) {
        MarkSet next;
        for (Index t = 0; t < current.triangle_count(); ++t) {
            if (selected[composed.triangle_parent[t]]) next.marked.push_back(t);
        }
        Mesh refined = bisect_refine(current, next);
        const auto& step = *refined.history();
        composed.new_vertex_parents.insert(composed.new_vertex_parents.end(),
                                           step.new_vertex_parents.begin(),
                                           step.new_vertex_parents.end());
        std::vector<Index> parents(step.triangle_parent.size());
        for (std::size_t t = 0; t < parents.size(); ++t) {
            parents[t] = composed.triangle_parent[step.triangle_parent[t]];
        }
        composed.triangle_parent = std::move(parents);
        current = Mesh(refined.vertices(), refined.triangles(), composed);
    }
    return current;
}

std::vector<double> prolongate(const Mesh& fine, std::span<const double> coarse_values)
{
    if (!fine.history()) throw std::invalid_argument("prolongate: mesh has no refinement history");
    const auto& h = *fine.history();
    if (coarse_values.size() != h.parent_vertex_count) {
        throw std::invalid_argument("prolongate: coefficient count does not match the parent mesh");
    }
    std::vector<double> values(coarse_values.begin(), coarse_values.end());
    values.reserve(fine.vertex_count());
    for (const auto& [a, b] : h.new_vertex_parents) values.push_back(0.5 * (values[a] + values[b]));
    return values;
}

MarkSet mark_all(const Mesh& mesh)
{
    MarkSet marks;
    marks.marked.resize(mesh.triangle_count());
    for (Index t = 0; t < mesh.triangle_count(); ++t) marks.marked[t] = t;
    return marks;
}

} // namespace signorini
