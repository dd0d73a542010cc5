#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fput/continuum.hpp"
#include "fput/grid.hpp"
#include "fput/potential.hpp"

namespace fput {

struct FrontOptions {
    double phase_x = 0.0;       // enforce R(phase_x) = 1/2
    double tol_residual = 1e-10;
    double tol_step = 1e-12;
    int max_newton = 40;
    int max_halvings = 8;
    double krylov_tol = 1e-10;
    int krylov_restart = 50;
    int krylov_max_iter = 1500;
    double eps0 = 0.5;
};

struct FrontSolution {
    double epsilon = 0.0;
    ContinuumSolution background;  // R0 on the same grid
    GridProfile R;                 // R_eps
    GridProfile S;                 // -R_eps'
    GridProfile W;                 // R_eps - R0
    double residual_fp = 0.0;      // sup |R - a_eps * Phi'(R)|
    double residual_tent = 0.0;    // sup |Lambda * R' + R - Lambda * Phi'(R)|
    double phase_multiplier = 0.0; // bordering coefficient, O(tail mass) at convergence
    int iterations = 0;
    int krylov_iterations = 0;
    double h1_dist_to_R0 = 0.0;
    double phase_x = 0.0;
    std::string warning;

    const Grid& grid() const { return R.grid; }
    /// R_eps and S_eps at arbitrary x: R0 from the ODE, W band-limited (zero outside [-L, L]).
    double evaluate(double x) const;
    double evaluate_S(double x) const;
};

/// L = max(40, 20 / min(mu-, mu+, 1)) from the pole rates and the smallest
/// power-of-two N with h <= min(0.05, eps/4).
Grid auto_grid(double eps, const Potential& p);
/// One grid serving every eps of a sweep.
Grid auto_grid(const std::vector<double>& eps_list, const Potential& p);

/// F1 = (a_0 - a_eps) * Phi'(R0), obtained as a smooth multiplier applied to R0'.
/// Throws ErrorKind::truncation when |F1| exceeds 1e-4 at an end of the grid.
GridProfile background_term(double eps, const Potential& p, const ContinuumSolution& R0);
/// Same quantity through the kernel split b * (Phi'(R0) - step) + B. Gibbs
/// ringing from the step limits it to about 1e-3 near x = 0; kept as a cross-check.
GridProfile background_term_split(double eps, const Potential& p, const ContinuumSolution& R0);

/// F(eps, W) = W + F1 - a_eps * (Phi'(R0 + W) - Phi'(R0)).
GridProfile residual(double eps, const Potential& p, const ContinuumSolution& R0, const GridProfile& W);

/// Sup norm of Lambda * R' + R - Lambda * Phi'(R), evaluated through the tent-kernel
/// formulation independently of the fixed-point operator.
double tent_residual(double eps, const Potential& p, const ContinuumSolution& R0, const GridProfile& W);

/// Newton-Krylov solve for W. The phase condition enters as a bordered row;
/// the matching column lives where the periodic wrap violates translation
/// invariance. Inner solves use GMRES right-preconditioned by the continuum
/// linearization. `init` is a starting W on the grid of R0.
FrontSolution solve_front(double eps, const Potential& p, const ContinuumSolution& R0,
                          const std::optional<GridProfile>& init = std::nullopt,
                          const FrontOptions& options = {});

/// Solves the smallest eps from W = 0 and warm-starts each next eps from the previous solution.
std::vector<FrontSolution> continuation_sweep(const Potential& p, const std::vector<double>& eps_list,
                                              const std::optional<Grid>& grid = std::nullopt,
                                              const FrontOptions& options = {});

/// Sup norm of S - a_eps * (Phi''(R) S).
double derivative_consistency(const FrontSolution& sol, const Potential& p);

}  // namespace fput
