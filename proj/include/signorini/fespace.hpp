#pragma once

#include "signorini/mesh.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace signorini {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;
using Barycentric = std::array<double, 3>;

/// Field evaluated element by element, for integrands that mix a callable with
/// finite-element data (the triangle index lets the caller pick the local piece).
using ElementField = std::function<double(Index triangle, const Point& x, const Barycentric& b)>;

/// Symmetric rule on the reference triangle. Weights sum to 1, so an integral
/// over K is |K| * sum_q w_q g(x_q).
struct QuadratureRule {
    int degree = 0;
    std::vector<Barycentric> points;
    std::vector<double> weights;
};

/// Supported degrees: 1 (centroid), 4 (6 points) and 8 (16 points).
const QuadratureRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0, 1] with weights summing to 1.
struct LineRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Five-point Gauss rule, exact for polynomials up to degree 9.
const LineRule& gauss_line_rule5();

inline constexpr int assembly_degree = 4;
inline constexpr int error_degree = 8;

/// Compressed sparse row matrix.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::vector<std::size_t> row_ptr, std::vector<Index> cols);

    std::size_t rows() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
    std::size_t nonzeros() const { return cols_.size(); }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const Index> cols() const { return cols_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Entry (i, j), zero outside the pattern.
    double value(Index i, Index j) const;
    /// Position of (i, j) in the value array; throws if outside the pattern.
    std::size_t position(Index i, Index j) const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> diagonal() const;
    /// Largest |a_ij - a_ji| relative to the largest |a_ij|.
    double asymmetry() const;

private:
    std::vector<std::size_t> row_ptr_;
    std::vector<Index> cols_;
    std::vector<double> values_;
};

/// Nodal coefficients of a P1 function on a mesh. The mesh must outlive it.
struct FeFunction {
    const Mesh* mesh = nullptr;
    std::vector<double> coefficients;

    FeFunction() = default;
    FeFunction(const Mesh& m, std::vector<double> c);

    double value_in(Index t, const Barycentric& b) const;
    Point gradient_in(Index t) const;
};

/// Gradients of the three barycentric coordinates of triangle t.
std::array<Point, 3> barycentric_gradients(const Mesh& mesh, Index t);
Point map_to_physical(const Mesh& mesh, Index t, const Barycentric& b);

/// Matrix of a(u, v) = (grad u, grad v) + (u, v) and load l(v) = (f, v).
struct SystemOperator {
    SparseMatrix matrix;
    std::vector<double> load;
};

/// Assembles stiffness + mass and the load with the degree-4 rule.
/// Throws NonFiniteData if f is NaN or infinite at a quadrature point.
SystemOperator assemble(const Mesh& mesh, const ScalarField& f);

/// Point evaluation; throws PointOutsideDomain if no triangle contains the
/// point (barycentric tolerance 1e-12).
double evaluate(const FeFunction& u, const Point& x);

FeFunction interpolate(const Mesh& mesh, const ScalarField& z);

/// (sum_K |K| sum_q w_q |g(x_q)|^p)^(1/p) with the degree-8 rule. Evaluated
/// with max-scaling so large p neither overflows nor underflows.
double lp_quadrature_norm(const ScalarField& g, const Mesh& mesh, double p);
double lp_quadrature_norm(const ElementField& g, const Mesh& mesh, double p);

/// Elementwise L^p norms with the degree-8 rule.
std::vector<double> lp_quadrature_norms(const ScalarField& g, const Mesh& mesh, double p);
std::vector<double> lp_quadrature_norms(const ElementField& g, const Mesh& mesh, double p);

/// Scaled p-norm of weighted samples: (sum_i w_i |v_i|^p)^(1/p).
double scaled_pnorm(std::span<const double> values, std::span<const double> weights, double p);

} // namespace signorini
