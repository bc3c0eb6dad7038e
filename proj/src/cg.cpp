#include "signorini/cg.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace signorini {

namespace {

double dot_product(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

CgResult solve_cg(const SparseMatrix& a, std::span<const double> b, std::span<double> x,
                  std::span<const char> fixed, double tol, int max_iterations)
{
    const std::size_t n = a.rows();
    if (max_iterations <= 0) max_iterations = static_cast<int>(std::max<std::size_t>(1000, 4 * n));

    std::vector<double> rhs(n), inv_diag(n), r(n), z(n), p(n), q(n), absx(n), floor_terms(n);
    const auto diag = a.diagonal();
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = fixed[i] ? 0.0 : b[i];
        inv_diag[i] = fixed[i] ? 0.0 : 1.0 / diag[i];
        if (fixed[i]) x[i] = 0.0;
    }
    const double rhs_norm = std::sqrt(dot_product(rhs, rhs));
    CgResult result;
    if (rhs_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        result.converged = true;
        return result;
    }

    auto apply = [&](std::span<const double> in, std::span<double> out) {
        a.multiply(in, out);
        for (std::size_t i = 0; i < n; ++i) {
            if (fixed[i]) out[i] = 0.0;
        }
    };
    auto true_residual = [&] {
        apply(x, q);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
        return std::sqrt(dot_product(r, r));
    };
    // Size of the rounding error committed when forming b - A x.
    auto roundoff_floor = [&] {
        const auto vals = a.values();
        const auto cols = a.cols();
        const auto ptr = a.row_ptr();
        for (std::size_t i = 0; i < n; ++i) {
            double s = std::abs(rhs[i]);
            if (!fixed[i]) {
                for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += std::abs(vals[k] * x[cols[k]]);
            }
            floor_terms[i] = s;
        }
        return 32.0 * std::numeric_limits<double>::epsilon() * std::sqrt(dot_product(floor_terms, floor_terms));
    };

    double res = true_residual();
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot_product(r, z);
    for (int it = 0; it < max_iterations; ++it) {
        if (res <= tol * rhs_norm) {
            res = true_residual();
            if (res <= tol * rhs_norm || res <= roundoff_floor()) {
                result.converged = true;
                result.iterations = it;
                result.relative_residual = res / rhs_norm;
                return result;
            }
            // Restart from the true residual.
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            p = z;
            rz = dot_product(r, z);
        }
        apply(p, q);
        const double pq = dot_product(p, q);
        if (!(pq > 0.0)) break;
        const double alpha = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        res = std::sqrt(dot_product(r, r));
        if (res <= tol * rhs_norm) continue;
        if ((it + 1) % 200 == 0) {
            // The recursive residual can stall above tolerance at round-off level.
            const double actual = true_residual();
            if (actual <= roundoff_floor()) {
                result.converged = true;
                result.iterations = it + 1;
                result.relative_residual = actual / rhs_norm;
                return result;
            }
            res = actual;
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = dot_product(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    result.iterations = max_iterations;
    result.relative_residual = true_residual() / rhs_norm;
    result.converged = result.relative_residual <= tol || result.relative_residual * rhs_norm <= roundoff_floor();
    return result;
}

} // namespace signorini
