#include "fput/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fput/error.hpp"

namespace fput {

namespace detail {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

double integrate_ode(const Potential& p, double x0, double r0, double x1, double tol) {
    auto f = [&](double r) { return p.dphi(r) - r; };
    const double span = x1 - x0;
    if (span == 0.0) return r0;
    const double dir = span > 0 ? 1.0 : -1.0;
    double x = x0, r = r0;
    double step = std::min(std::abs(span), 0.01);
    double k1 = f(r);
    int guard = 0;
    while (dir * (x1 - x) > 0.0) {
        if (++guard > 1000000) throw Error(ErrorKind::domain, "ODE integration did not terminate");
        double hs = std::min(step, dir * (x1 - x));
        const double hsd = dir * hs;
        const double k2 = f(r + hsd * a21 * k1);
        const double k3 = f(r + hsd * (a31 * k1 + a32 * k2));
        const double k4 = f(r + hsd * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(r + hsd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(r + hsd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double rn = r + hsd * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(rn);
        const double err = std::abs(hsd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double scale = tol + tol * std::max(std::abs(r), std::abs(rn));
        const double ratio = err / scale;
        if (ratio <= 1.0) {
            x = (hs == dir * (x1 - x)) ? x1 : x + hsd;
            r = rn;
            k1 = k7;  // first-same-as-last
        }
        const double fac = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        step = hs * fac;
    }
    return r;
}

}  // namespace detail

ContinuumSolution solve_R0(const Potential& p, double L, std::size_t N) {
    return solve_R0(p, Grid{L, N});
}

ContinuumSolution solve_R0(const Potential& p, const Grid& grid) {
    grid.check();
    if (std::abs(p.dphi(0.0)) > 1e-12 || std::abs(p.dphi(1.0) - 1.0) > 1e-12)
        throw Error(ErrorKind::validation, "continuum front needs a normalized potential (Phi'(0)=0, Phi'(1)=1)");
    for (int j = 1; j < 256; ++j) {
        const double r = j / 256.0;
        if (!(p.dphi(r) - r < 0.0))
            throw Error(ErrorKind::validation, "Phi'(R) - R must be negative on (0,1) (strict convexity)");
    }

    ContinuumSolution sol;
    sol.potential = p;
    sol.p_minus = p.ddphi(1.0);
    sol.p_plus = p.ddphi(0.0);
    const std::size_t n = grid.N;
    const std::size_t c = grid.center();
    std::vector<double> r(n);
    r[c] = 0.5;
    for (std::size_t j = c + 1; j < n; ++j) r[j] = detail::integrate_ode(p, grid.x(j - 1), r[j - 1], grid.x(j));
    for (std::size_t j = c; j-- > 0;) r[j] = detail::integrate_ode(p, grid.x(j + 1), r[j + 1], grid.x(j));

    const double miss_left = std::abs(r.front() - 1.0);
    const double miss_right = std::abs(r.back());
    if (miss_left > 1e-8 || miss_right > 1e-8) {
        const double rate_left = sol.p_minus - 1.0;
        double rate_right = 1.0 - sol.p_plus;
        double suggest = grid.L;
        if (rate_left > 0) suggest = std::max(suggest, std::log(1e9) / rate_left);
        if (rate_right > 0) suggest = std::max(suggest, std::log(1e9) / rate_right);
        std::ostringstream os;
        os << "R0 misses its asymptotic states by " << std::max(miss_left, miss_right) << " at L=" << grid.L
           << "; try L >= " << std::ceil(1.25 * suggest);
        throw Error(ErrorKind::domain_too_small, os.str());
    }

    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = p.dphi(r[j]) - r[j];
    sol.profile = GridProfile{grid, std::move(r)};
    sol.derivative = GridProfile{grid, std::move(d)};
    return sol;
}

double ContinuumSolution::evaluate(double x) const {
    const Grid& g = profile.grid;
    const double pos = (x + g.L) / g.h();
    long j = std::lround(pos);
    j = std::clamp(j, 0L, static_cast<long>(g.N) - 1);
    return detail::integrate_ode(potential, g.x(static_cast<std::size_t>(j)), profile.values[static_cast<std::size_t>(j)], x);
}

GridProfile linearization_profile(const Potential& p, const ContinuumSolution& sol) {
    GridProfile out{sol.profile.grid, std::vector<double>(sol.profile.size())};
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] = p.ddphi(sol.profile.values[j]);
    return out;
}

double continuum_residual(const ContinuumSolution& sol) {
    // eighth-order central difference weights for the first derivative
    static constexpr double w[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    const auto& r = sol.profile.values;
    const double h = sol.profile.grid.h();
    double res = 0.0;
    for (std::size_t j = 4; j + 4 < r.size(); ++j) {
        double dr = 0.0;
        for (int k = 0; k < 4; ++k) dr += w[k] * (r[j + k + 1] - r[j - k - 1]);
        dr /= h;
        res = std::max(res, std::abs(dr + r[j] - sol.potential.dphi(r[j])));
    }
    return res;
}

}  // namespace fput
