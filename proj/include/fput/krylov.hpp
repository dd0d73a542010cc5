#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace fput {

using LinearMap = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct GmresResult {
    bool converged = false;
    int iterations = 0;
    double relative_residual = 1.0;
};

/// Restarted GMRES(m) with right preconditioning: solves A x = b, starting
/// from the given x. `precond` applies an approximate inverse of A.
GmresResult gmres(const LinearMap& A, const LinearMap& precond, const std::vector<double>& b,
                  std::vector<double>& x, double rel_tol, int restart, int max_iter);

}  // namespace fput
