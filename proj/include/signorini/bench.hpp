#pragma once

#include "signorini/interpolant.hpp"
#include "signorini/vi_solver.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace signorini {

/// Degree-9 cutoff on [0, support]: psi(0) = 1, psi^(k)(0) = 0 for k = 1..4,
/// psi^(k)(support) = 0 for k = 0..4, and psi = 0 outside [0, support).
struct SplinePsi {
    std::array<double, 10> coefficients{};  ///< monomial coefficients in s
    double support = 0.45;

    double value(double s) const;
    double derivative(double s, int order) const;
};

/// Solves the 10x10 endpoint-condition system in the monomial basis.
/// Throws SingularSystem if elimination meets a zero pivot.
SplinePsi build_psi(double support = 0.45);

/// The same spline from the endpoint system written in the Bernstein basis on
/// [0, support]; returns the Bernstein coefficients.
std::array<double, 10> build_psi_bernstein(double support = 0.45);
double evaluate_bernstein(const std::array<double, 10>& coefficients, double support, double s);

struct ManufacturedSolution {
    std::string name;
    Domain domain = Domain::unit_square;
    std::optional<ScalarField> u;
    std::optional<VectorField> grad_u;
    ScalarField f;
    /// Arc-length coordinates (from the walk start) of the boundary points
    /// where contact status changes, when known.
    std::vector<double> exact_critical_arcs;
    /// Arc intervals of the non-contact part of the boundary, when known.
    std::vector<std::array<double, 2>> exact_free_intervals;
};

/// u = 10 psi(r) * (-r^{3/2} sin(3 theta / 2)) about (0.5, 0) on the unit square,
/// with f = -Lap u + u in closed form.
ManufacturedSolution example1();

/// Re-entrant corner data on the L-shape: w = sin(2 pi (r - b)^2) - 0.5 with
/// f = Lap w + w (literal_sign) or f = -Lap w + w.
ManufacturedSolution example2(double b = 0.91, bool literal_sign = true);
/// The radial profile w of Example 2, centred at the re-entrant corner.
ScalarField example2_w(double b = 0.91);

/// u = 1, f = 1 on the unit square: every constraint inactive, zero residual.
ManufacturedSolution constant_one();

/// Looks up "example1", "example2" or "constant_one".
std::optional<ManufacturedSolution> find_example(const std::string& name, bool example2_literal_sign = true);
std::vector<std::string> example_names();

struct SignedErrors {
    double pos = 0.0;    ///< ||max(u - U, 0)||_{L^p}
    double neg = 0.0;    ///< ||min(u - U, 0)||_{L^p}
    double total = 0.0;  ///< ||u - U||_{L^p}
};

/// Degree-8 quadrature of the signed parts of u - U. Throws NoExactSolution
/// when the example has no exact solution.
SignedErrors signed_lp_errors(const FeFunction& u_h, const ManufacturedSolution& ms, double p);

struct EocResult {
    std::vector<double> pairwise;  ///< slope of log(error) against log(x) between neighbours
    double tail_slope = 0.0;       ///< least-squares slope over the last (up to) 4 points
};

/// Convergence rates from (x, error) pairs where x is a mesh size or a DOF
/// count. Throws DegenerateInput for fewer than 2 points, nonpositive values
/// or repeated x.
EocResult eoc(const std::vector<std::array<double, 2>>& values);

/// Largest relative mismatch of -Lap u + u = f at the given points, with a
/// 5-point finite-difference Laplacian of step h.
double manufactured_residual(const ManufacturedSolution& ms, const std::vector<Point>& points, double h = 1e-4);

/// Smooth targets for interpolation studies on the unit square:
/// "bump" sin(pi x) sin(pi y) + 1, "paraboloid" x^2 + y^2 and
/// "centered_paraboloid" (x - 1/2)^2 + (y - 1/2)^2.
std::optional<ScalarField> find_target_function(const std::string& name);
std::vector<std::string> target_function_names();

struct InterpolationLevel {
    int n = 0;
    double h_max = 0.0;
    double lagrange = 0.0;    ///< ||z - I z||_{L^q}
    double one_sided = 0.0;   ///< ||z - Pi z||_{L^q}
    double bilateral = 0.0;   ///< ||z - bilateral(z)||_{L^q}
};

/// L^q interpolation errors on structured unit-square meshes with
/// n = coarse_n * 2^k, k = 0 .. levels-1.
std::vector<InterpolationLevel> interpolation_study(const ScalarField& z, int levels, int coarse_n, double q,
                                                    const SampleSet& samples);

} // namespace signorini
