#include "signorini/vi_solver.hpp"

#include "signorini/cg.hpp"
#include "signorini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace signorini {

namespace {

double euclidean_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> residual(const SystemOperator& sys, std::span<const double> u)
{
    std::vector<double> r(u.size());
    sys.matrix.multiply(u, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= sys.load[i];
    return r;
}

// Multipliers lambda = A u - F restricted to boundary rows.
std::vector<double> boundary_multipliers(const SystemOperator& sys, const Mesh& mesh,
                                         std::span<const double> u)
{
    auto r = residual(sys, u);
    for (Index i = 0; i < r.size(); ++i) {
        if (!mesh.is_boundary_vertex(i)) r[i] = 0.0;
    }
    return r;
}

// Dense Cholesky factorization in place; returns false if not positive definite.
bool cholesky(std::vector<double>& a, std::size_t n)
{
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        d = std::sqrt(d);
        a[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / d;
        }
    }
    return true;
}

void cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& b)
{
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
        b[i] = s / l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
        b[i] = s / l[i * n + i];
    }
}

} // namespace

void SolverConfig::validate() const
{
    if (!(pdas_shift > 0.0)) throw std::invalid_argument("pdas_shift must be positive");
    if (max_outer <= 0) throw std::invalid_argument("max_outer must be positive");
    if (!(linear_tol > 0.0)) throw std::invalid_argument("linear_tol must be positive");
}

bool ViSolution::is_active(Index v) const
{
    return std::binary_search(active_set.begin(), active_set.end(), v);
}

double quadratic_energy(const SystemOperator& sys, std::span<const double> u)
{
    std::vector<double> au(u.size());
    sys.matrix.multiply(u, au);
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e += 0.5 * u[i] * au[i] - sys.load[i] * u[i];
    return e;
}

ViSolution solve_vi(const SystemOperator& sys, const Mesh& mesh, const SolverConfig& cfg,
                    std::span<const Index> initial_active)
{
    cfg.validate();
    const std::size_t n = mesh.vertex_count();
    if (sys.matrix.rows() != n || sys.load.size() != n) {
        throw std::invalid_argument("solve_vi: operator size differs from mesh vertex count");
    }
    const auto& boundary = mesh.boundary_loop();
    const double feasibility_tol = 1e-12 * std::max(1.0, euclidean_norm(sys.load));

    std::vector<char> active(n, 0);
    for (Index v : initial_active) {
        if (!mesh.is_boundary_vertex(v)) {
            throw std::invalid_argument("solve_vi: initial active vertex " + std::to_string(v) +
                                        " is not on the boundary");
        }
        active[v] = 1;
    }

    ViSolution sol;
    std::vector<double> u(n, 0.0);
    for (int outer = 1; outer <= cfg.max_outer; ++outer) {
        const CgResult cg = solve_cg(sys.matrix, sys.load, u, active, cfg.linear_tol);
        if (!cg.converged) {
            throw LinearSolveFailure("CG stopped at relative residual " + std::to_string(cg.relative_residual) +
                                     " after " + std::to_string(cg.iterations) + " iterations");
        }
        const auto lambda = boundary_multipliers(sys, mesh, u);
        sol.iterations = outer;

        bool feasible = true;
        for (Index v : boundary) feasible = feasible && u[v] >= -feasibility_tol;
        if (feasible) sol.energy_history.push_back(quadratic_energy(sys, u));

        bool changed = false;
        for (Index v : boundary) {
            const char next = (u[v] - cfg.pdas_shift * lambda[v] < 0.0) ? 1 : 0;
            changed = changed || next != active[v];
            active[v] = next;
        }
        if (!changed) {
            sol.converged = true;
            break;
        }
    }

    // The last solve used the previous active set; report the set U was computed with
    // when converged (they coincide) and the updated guess otherwise.
    for (Index v : boundary) {
        if (active[v]) sol.active_set.push_back(v);
    }
    std::sort(sol.active_set.begin(), sol.active_set.end());
    sol.multipliers = boundary_multipliers(sys, mesh, u);
    sol.u = FeFunction(mesh, std::move(u));
    return sol;
}

KktReport kkt_check(const ViSolution& sol, const SystemOperator& sys, double tol)
{
    const Mesh& mesh = *sol.u.mesh;
    const auto& u = sol.u.coefficients;
    if (u.size() != sys.load.size()) throw std::invalid_argument("kkt_check: size mismatch");
    const auto r = residual(sys, u);

    KktReport report;
    report.load_norm = euclidean_norm(sys.load);
    for (Index i = 0; i < u.size(); ++i) {
        if (!mesh.is_boundary_vertex(i)) {
            report.stationarity = std::max(report.stationarity, std::abs(r[i]));
            continue;
        }
        report.primal_feasibility = std::max(report.primal_feasibility, -u[i]);
        report.dual_feasibility = std::max(report.dual_feasibility, -r[i]);
        report.complementarity = std::max(report.complementarity, std::abs(u[i] * r[i]));
    }
    const double s = report.load_norm;
    report.pass = report.stationarity <= tol * s && report.primal_feasibility <= tol * s &&
                  report.dual_feasibility <= tol * s && report.complementarity <= tol * s * s;
    return report;
}

ViSolution oracle_enumerate(const SystemOperator& sys, const Mesh& mesh)
{
    const auto& boundary = mesh.boundary_loop();
    if (boundary.size() > oracle_max_boundary) {
        throw OracleTooLarge(std::to_string(boundary.size()) + " boundary vertices (limit " +
                             std::to_string(oracle_max_boundary) + ")");
    }
    const std::size_t n = mesh.vertex_count();
    const double tol = 1e-12 * std::max(1.0, euclidean_norm(sys.load));

    std::vector<double> dense(n * n, 0.0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) dense[i * n + j] = sys.matrix.value(i, j);
    }

    const std::size_t subsets = std::size_t{1} << boundary.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<char> fixed(n, 0);
        for (std::size_t k = 0; k < boundary.size(); ++k) {
            if (mask & (std::size_t{1} << k)) fixed[boundary[k]] = 1;
        }
        std::vector<Index> free;
        for (Index i = 0; i < n; ++i) {
            if (!fixed[i]) free.push_back(i);
        }
        const std::size_t m = free.size();
        std::vector<double> reduced(m * m);
        std::vector<double> rhs(m);
        for (std::size_t a = 0; a < m; ++a) {
            rhs[a] = sys.load[free[a]];
            for (std::size_t b = 0; b < m; ++b) reduced[a * m + b] = dense[free[a] * n + free[b]];
        }
        if (!cholesky(reduced, m)) throw SingularSystem("oracle: reduced matrix is not positive definite");
        cholesky_solve(reduced, m, rhs);
        std::vector<double> u(n, 0.0);
        for (std::size_t a = 0; a < m; ++a) u[free[a]] = rhs[a];

        std::vector<double> lambda(n, 0.0);
        for (Index v : boundary) {
            double s = -sys.load[v];
            for (Index j = 0; j < n; ++j) s += dense[v * n + j] * u[j];
            lambda[v] = s;
        }
        bool valid = true;
        for (Index v : boundary) {
            valid = valid && (fixed[v] ? lambda[v] >= -tol : u[v] >= -tol);
        }
        if (!valid) continue;

        ViSolution sol;
        for (Index v : boundary) {
            if (fixed[v]) sol.active_set.push_back(v);
            else lambda[v] = 0.0;
        }
        std::sort(sol.active_set.begin(), sol.active_set.end());
        sol.multipliers = std::move(lambda);
        sol.iterations = static_cast<int>(mask + 1);
        sol.converged = true;
        sol.u = FeFunction(mesh, std::move(u));
        return sol;
    }
    throw SingularSystem("oracle: no subset satisfies the optimality conditions");
}

} // namespace signorini
