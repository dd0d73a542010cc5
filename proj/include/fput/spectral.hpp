#pragma once

#include <vector>

#include "fput/grid.hpp"

namespace fput {

/// sin(z)/z with a Taylor branch for |z| < 1e-2.
cplx sinc(cplx z);
/// Tent-kernel symbol sinc^2(eps pi k).
cplx tent_symbol(double eps, cplx k);

/// a_eps^(k) = sinc^2(eps pi k) / (1 + 2 pi i k sinc^2(eps pi k)); eps = 0 gives 1/(1 + 2 pi i k).
/// Throws ErrorKind::pole_proximity when the denominator modulus drops below 1e-14.
cplx symbol_a(double eps, cplx k);

/// sign * sinc^2 / (1 - mu sinc^2 + 2 pi i k sinc^2), sign = +1 for the p_+ family
/// and -1 for the p_- family. mu = 0, sign = +1 reproduces symbol_a.
cplx symbol_a_mu(double eps, double mu, cplx k, int sign = 1);

/// (1 - Lambda) / (2 pi i k (1 + 2 pi i k Lambda)), regular at k = 0. Applied to
/// R0' it gives (a_0 - a_eps) * Phi'(R0), because Phi'(R0) = (1 + d/dx) R0.
cplx background_symbol(double eps, cplx k);

/// (1 - Lambda) / (2 pi i k), regular at k = 0. Applied to f' it gives f - Lambda * f.
cplx tent_defect_symbol(double eps, cplx k);

struct DValue {
    cplx value;
    cplx derivative;
};

/// D(z) = eps z^2 - eps mu sin^2 z + 2 i z sin^2 z and its analytic derivative.
DValue denominator_D(double eps, double mu, cplx z);

/// A(z) = eps sin^2 z / D(z), the symbol family in the scaled variable z = eps pi k.
cplx scaled_symbol(double eps, double mu, cplx z);

struct PoleData {
    cplx z_eps;
    double mu_rate = 0.0;       // decay rate of the associated tail
    double nu_prefactor = 0.0;  // 2 i sin^2(z) / D'(z)
    int newton_iters = 0;
    double residual = 0.0;      // |D(z_eps)|
    int family = +1;            // +1: mu < 1 (right tail), -1: mu > 1 (left tail)
};

/// Newton iteration on D from z0 = i eps (1 - mu) / 2 with step halving on
/// residual growth. Throws ErrorKind::pole_search after 50 iterations and
/// ErrorKind::out_of_ball when |z_eps| >= 0.9 pi.
PoleData find_pole(double eps, double mu);

/// Leading-pole approximation B(z) = eps sin^2(z_eps) / (D'(z_eps) (z - z_eps)).
cplx pole_part(double eps, double mu, const PoleData& pole, cplx z);

/// Series coefficients of the slow-damping expansion obtained by expanding D
/// about the continuum root: mu_rate = |1-p| - sgn(1-p) c_mu eps^2 + O(eps^4),
/// nu = 1 - c_nu eps^2 + O(eps^4).
double series_mu_coefficient(double p);
double series_nu_coefficient(double p);
/// Coefficients quoted with the decay-rate theorem: (1+p)(1-p)^2/12 and (1+p)(1-p)/12.
double reference_mu_coefficient(double p);
double reference_nu_coefficient(double p);

struct PhysicalKernels {
    GridProfile a_eps;  // inverse transform of a_eps^
    GridProfile b;      // a_0 - a_eps
    GridProfile B;      // B(x) = int_x^inf b
};

/// Requires angular Nyquist pi/h >= 8/eps (ErrorKind::resolution otherwise).
PhysicalKernels kernel_physical(double eps, const Grid& grid);

struct SymbolBoundsRow {
    double eps;
    double sup_diff;            // sup |a_eps - a_0| over the sampled strip
    double sup_weighted_diff;   // sup |(a_eps - a_0)(1 + |k|^(1-s))|
    double tail_constant;       // sup |z A(z)| / eps over |Re z| >= 0.8 pi on the same lines
    double bulk_constant;       // sup |A - B| / eps^2 over |z| <= 0.8 pi
};

struct SymbolBoundsReport {
    std::vector<SymbolBoundsRow> rows;
    double order_diff = 0.0;           // log-log slope of sup_diff in eps
    double order_weighted = 0.0;       // log-log slope of the weighted variant
    double max_bulk_ratio = 0.0;       // max ratio of bulk constants for consecutive eps
    double max_tail_ratio = 0.0;
    double s = 0.5;
    double eta_minus = 0.0, eta_plus = 0.0;
    std::vector<double> mus;
};

/// Samples the symbol estimates. `eta_minus`, `eta_plus` are the strip
/// half-widths in exponential-weight units (lines Im k = eta / (2 pi));
/// `mus` lists the shift parameters used for the bulk and tail constants.
SymbolBoundsReport verify_symbol_bounds(const std::vector<double>& eps_list, double eta_minus,
                                        double eta_plus, double s, const std::vector<double>& mus);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fput
