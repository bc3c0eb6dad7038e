#pragma once

#include "signorini/fespace.hpp"

#include <span>

namespace signorini {

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients on the rows and columns of A not
/// flagged in `fixed`; fixed entries of x are held at zero. x is the initial
/// guess on entry. Stops at ||b - Ax|| <= tol ||b|| or, when that is below
/// round-off, once the true residual reaches the round-off floor of A x.
CgResult solve_cg(const SparseMatrix& a, std::span<const double> b, std::span<double> x,
                  std::span<const char> fixed, double tol, int max_iterations = 0);

} // namespace signorini
