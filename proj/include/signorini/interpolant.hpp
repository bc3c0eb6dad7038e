#pragma once

#include "signorini/fespace.hpp"

#include <vector>

namespace signorini {

/// Points used to approximate patch maxima of I z - z. The same barycentric
/// pattern is used on every element: the lattice of the m-fold subdivided
/// element (vertices and sub-edge midpoints included) plus the degree-8
/// quadrature points of each sub-triangle.
struct SampleSet {
    int density = 2;
    std::vector<Barycentric> points;
    /// Refine each element maximum by a bounded compass search started at the
    /// best sample.
    bool local_search = true;
};

SampleSet make_sample_set(int density = 2, bool local_search = true);

/// Nodal (Lagrange) interpolant. Throws NonFiniteData on non-finite vertex values.
FeFunction lagrange(const ScalarField& z, const Mesh& mesh);

/// Interpolant bounded above by z: nodal values z(x_i) - R_i with
/// R_i = max(0, max over the vertex patch of (I z - z)). Lies below z.
FeFunction one_sided(const ScalarField& z, const Mesh& mesh, const SampleSet& samples);

/// Bilateral interpolant: the one-sided nodal value where the one-sided
/// interpolant is nonnegative on the whole vertex patch, zero otherwise.
/// Throws NegativeInput if z < -1e-12 at any sample point.
FeFunction bilateral(const ScalarField& z, const Mesh& mesh, const SampleSet& samples);

/// -bilateral(-z) for z <= 0; throws PositiveInput if z > 1e-12 at a sample.
FeFunction mirrored_bilateral(const ScalarField& z, const Mesh& mesh, const SampleSet& samples);

/// Elementwise maximum of I z - z over the sample set (with optional local search).
std::vector<double> element_overshoot(const ScalarField& z, const FeFunction& iz, const SampleSet& samples);

} // namespace signorini
