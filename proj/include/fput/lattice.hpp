#pragma once

#include <cstddef>
#include <vector>

#include "fput/front_solver.hpp"
#include "fput/potential.hpp"

namespace fput {

/// Ghost closure of the finite chain. `dirichlet` pins the outer springs at
/// the asymptotic states with zero ghost velocities; `free_ends` removes the
/// outer springs (zero ghost force and zero ghost velocity).
enum class Closure { dirichlet, free_ends };

/// Relative displacements r_n = q_{n+1} - q_n of the chain
/// r'' = Delta Phi'(r) + gamma Delta r'.
struct LatticeState {
    std::vector<double> r;
    std::vector<double> v;  // dr/dt
    double t = 0.0;
    double gamma = 10.0;
    double left = 1.0;   // ghost r_{-1}
    double right = 0.0;  // ghost r_M
    Closure closure = Closure::dirichlet;
};

/// Affine map from a normalized front to a raw chain:
/// r = r_plus + (r_minus - r_plus) R(eps (n - speed t)), eps = speed / gamma.
struct FrontScaling {
    double r_minus = 1.0;
    double r_plus = 0.0;
    double speed = 1.0;

    static FrontScaling from(const FrontConstants& c) { return {c.r_minus, c.r_plus, c.c}; }
};

/// Piecewise cubic Hermite table of R and S = -R' built from the solver nodes;
/// constant continuation outside the grid.
class ProfileTable {
public:
    explicit ProfileTable(const FrontSolution& sol);
    double R(double x) const;
    double S(double x) const;
    double epsilon() const { return eps_; }

private:
    double x0_ = 0.0, h_ = 1.0, eps_ = 0.0;
    std::vector<double> r_, s_;
};

/// Heaviside data: r_n = left for n < M/2, right otherwise. v vanishes except
/// v_{M/2} = speed (left - right), the particle-velocity jump of a front with
/// that speed. With speed = 0 the step splits into two waves instead.
LatticeState init_chain_step(std::size_t M, double gamma, double left = 1.0, double right = 0.0,
                             double speed = 0.0);
/// r_n = r_plus + (r_minus - r_plus) R(eps (n - M/2)), v_n = (r_minus - r_plus) eps speed S(...),
/// with gamma = speed / eps.
LatticeState init_chain(std::size_t M, const FrontSolution& sol, const FrontScaling& scaling = {});

/// Semi-implicit Euler: (I - dt gamma Delta) v+ = v + dt Delta Phi'(r), then r+ = r + dt v+.
/// Throws ErrorKind::blow_up on a non-finite update.
void step_imex(LatticeState& state, double dt, const Potential& p);

/// Default step min(0.05, 0.5 / max Phi'').
double default_time_step(const Potential& p);

/// E = sum_n P_n^2 / 2 + sum_n Phi(r_n), with particle velocities P reconstructed
/// from v_n = P_{n+1} - P_n and zero total momentum. This is the dissipated energy
/// of the free-ends chain.
double chain_energy(const LatticeState& state, const Potential& p);

struct Trajectory {
    std::vector<double> times;                    // snapshot times
    std::vector<std::vector<double>> snapshots;   // r at those times
    std::vector<double> crossing_times;           // every step
    std::vector<double> crossing_positions;       // site coordinate of the mid-level crossing
    double level = 0.5;
    double max_boundary_drift = 0.0;              // max |r_0 - left|, |r_{M-1} - right|
    LatticeState final_state;
};

/// Time-steps to T, recording a snapshot every `output_every` steps (and at t = 0)
/// and the mid-level crossing after every step.
Trajectory run(LatticeState state, double T, double dt, std::size_t output_every, const Potential& p);

struct SpeedFit {
    double c_fit = 0.0;
    double r2 = 0.0;
    std::size_t samples = 0;
};

/// Least-squares slope of the crossing position in time after discarding the first 20%.
SpeedFit measure_front_speed(const Trajectory& traj);

/// Max over snapshots of the min-over-shift sup distance between the normalized
/// snapshot and the sampled profile R(eps (n - s)).
double compare_profile(const Trajectory& traj, const FrontSolution& sol, const FrontScaling& scaling = {});
/// Per-snapshot distances behind compare_profile.
std::vector<double> profile_distances(const Trajectory& traj, const FrontSolution& sol,
                                      const FrontScaling& scaling = {});

}  // namespace fput
