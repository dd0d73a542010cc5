#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fput/front_solver.hpp"
#include "fput/grid.hpp"
#include "fput/spectral.hpp"

namespace fput {

struct DecayReport {
    double lambda_fit_minus = 0.0;  // S ~ exp(+lambda x) as x -> -inf
    double lambda_fit_plus = 0.0;   // S ~ exp(-lambda x) as x -> +inf
    double mu_pred_minus = 0.0;
    double mu_pred_plus = 0.0;
    std::pair<double, double> window_minus{0.0, 0.0};
    std::pair<double, double> window_plus{0.0, 0.0};
    std::size_t samples_minus = 0, samples_plus = 0;
    double r2_minus = 0.0, r2_plus = 0.0;
    double fit_r2 = 0.0;  // min of both
    double rel_err_minus = 0.0, rel_err_plus = 0.0;
    /// max/min of S exp(-mu- x) and S exp(mu+ x) over the windows.
    double bound_ratio_minus = 0.0, bound_ratio_plus = 0.0;
};

/// Least-squares fit of log S on the windows 1e-10 max S < S < 1e-3 max S,
/// |x| <= L - 2, on either side of the maximum. Throws ErrorKind::resolution
/// when a window holds fewer than 8 nodes.
DecayReport fit_decay_rates(const GridProfile& S, double mu_pred_minus, double mu_pred_plus);
DecayReport fit_decay_rates(const FrontSolution& sol, const PoleData& minus, const PoleData& plus);

struct MonotonicityResult {
    bool monotone = false;
    double min_S = 0.0;
};
/// Monotone iff min S >= -1e-8.
MonotonicityResult monotonicity_check(const GridProfile& S);

/// (int (a-b)^2 + (a'-b')^2)^(1/2) by the trapezoid rule and spectral derivatives.
double h1_distance(const GridProfile& a, const GridProfile& b);

/// |h sum S - 1|.
double normalization_check(const GridProfile& S);

struct ReportItem {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

ReportItem check_at_most(std::string name, double value, double threshold);
ReportItem check_at_least(std::string name, double value, double threshold);

/// Solver contract checks for one converged front.
std::vector<ReportItem> front_report(const FrontSolution& sol, const Potential& p);

}  // namespace fput
