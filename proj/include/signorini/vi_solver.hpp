#pragma once

#include "signorini/fespace.hpp"

#include <span>
#include <vector>

namespace signorini {

struct SolverConfig {
    double pdas_shift = 1.0;  ///< c in the active-set update U_i - c * lambda_i < 0
    int max_outer = 100;
    double linear_tol = 1e-14;

    /// Throws std::invalid_argument unless every field is positive.
    void validate() const;

    bool operator==(const SolverConfig&) const = default;
};

/// Discrete solution of the variational inequality with U >= 0 on the boundary.
struct ViSolution {
    FeFunction u;
    /// Sorted boundary vertices held at U_i = 0.
    std::vector<Index> active_set;
    /// lambda_i = (A u - F)_i on boundary rows, zero on interior rows.
    std::vector<double> multipliers;
    int iterations = 0;
    bool converged = false;
    /// Energy 1/2 a(U,U) - l(U) of every primal-feasible iterate, in order.
    std::vector<double> energy_history;

    bool is_active(Index v) const;
};

/// Largest violation of each optimality condition. Pass means stationarity,
/// primal and dual feasibility within tol * ||F|| and complementarity within
/// tol * ||F||^2.
struct KktReport {
    double stationarity = 0.0;
    double primal_feasibility = 0.0;
    double dual_feasibility = 0.0;
    double complementarity = 0.0;
    double load_norm = 0.0;
    bool pass = false;
};

double quadratic_energy(const SystemOperator& sys, std::span<const double> u);

/// Primal-dual active set iteration. Each outer step solves the reduced
/// system with the active boundary values eliminated (Jacobi-PCG) and updates
/// active <- { boundary i : U_i - c lambda_i < 0 }. Stops when two consecutive
/// active sets agree. If max_outer is reached the last iterate is returned
/// with converged = false. Throws LinearSolveFailure if an inner solve fails.
ViSolution solve_vi(const SystemOperator& sys, const Mesh& mesh, const SolverConfig& cfg = {},
                    std::span<const Index> initial_active = {});

KktReport kkt_check(const ViSolution& sol, const SystemOperator& sys, double tol = 1e-10);

/// Brute force over every subset of boundary vertices, with dense Cholesky
/// solves. Throws OracleTooLarge above 14 boundary vertices.
ViSolution oracle_enumerate(const SystemOperator& sys, const Mesh& mesh);

inline constexpr std::size_t oracle_max_boundary = 14;

} // namespace signorini
