#pragma once

#include "fput/grid.hpp"
#include "fput/potential.hpp"

namespace fput {

/// Continuum front R0: R0' + R0 = Phi'(R0), R0(-inf) = 1, R0(+inf) = 0, R0(0) = 1/2.
struct ContinuumSolution {
    Potential potential;
    GridProfile profile;     // R0
    GridProfile derivative;  // R0' = Phi'(R0) - R0
    double p_minus = 0.0;    // Phi''(1)
    double p_plus = 0.0;     // Phi''(0)

    /// R0 at an arbitrary x, integrated from the nearest grid node.
    double evaluate(double x) const;
};

/// Integrates outward from x = 0 with an adaptive Dormand-Prince 5(4) pair
/// (absolute and relative tolerance 1e-12), landing exactly on every node.
/// Throws ErrorKind::domain_too_small when R0(-L) or R0(L) is further than
/// 1e-8 from its asymptotic state; the message suggests a sufficient L.
ContinuumSolution solve_R0(const Potential& p, double L, std::size_t N);
ContinuumSolution solve_R0(const Potential& p, const Grid& grid);

/// P = Phi''(R0) on the grid.
GridProfile linearization_profile(const Potential& p, const ContinuumSolution& sol);

/// Sup over the interior nodes of |R0' + R0 - Phi'(R0)| with R0' from an
/// eighth-order central difference of the stored profile.
double continuum_residual(const ContinuumSolution& sol);

namespace detail {
/// Single adaptive integration of R' = Phi'(R) - R from (x0, r0) to x1.
double integrate_ode(const Potential& p, double x0, double r0, double x1, double tol = 1e-12);
}  // namespace detail

}  // namespace fput
