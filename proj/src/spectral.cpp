#include "fput/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fput/error.hpp"

namespace fput {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// 1 - sinc^2(w), with a series branch to avoid cancellation
cplx one_minus_sinc2(cplx w) {
    if (std::abs(w) < 1e-2) {
        const cplx w2 = w * w;
        return w2 * (1.0 / 3.0 - w2 * (2.0 / 45.0 - w2 / 315.0));
    }
    const cplx s = sinc(w);
    return 1.0 - s * s;
}

void check_denominator(cplx den, const char* what) {
    if (std::abs(den) < 1e-14) {
        std::ostringstream os;
        os << what << " evaluated at a pole (|denominator| = " << std::abs(den) << ")";
        throw Error(ErrorKind::pole_proximity, os.str());
    }
}

void check_family(double eps, double mu) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::domain, "eps must be positive");
    if (!(mu >= 0.0 && mu < 4.0) || mu == 1.0) throw Error(ErrorKind::domain, "mu must lie in [0,4) and differ from 1");
}

}  // namespace

cplx sinc(cplx z) {
    if (std::abs(z) < 1e-2) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
    }
    return std::sin(z) / z;
}

cplx tent_symbol(double eps, cplx k) {
    const cplx s = sinc(eps * kPi * k);
    return s * s;
}

cplx symbol_a(double eps, cplx k) {
    return symbol_a_mu(eps, 0.0, k, +1);
}

cplx symbol_a_mu(double eps, double mu, cplx k, int sign) {
    const cplx lam = tent_symbol(eps, k);
    const cplx den = 1.0 - mu * lam + 2.0 * kPi * kI * k * lam;
    check_denominator(den, "modified symbol");
    return static_cast<double>(sign) * lam / den;
}

cplx background_symbol(double eps, cplx k) {
    if (k == 0.0) return 0.0;
    const cplx ik = 2.0 * kPi * kI * k;
    const cplx lam = tent_symbol(eps, k);
    const cplx den = ik * (1.0 + ik * lam);
    return one_minus_sinc2(eps * kPi * k) / den;
}

cplx tent_defect_symbol(double eps, cplx k) {
    if (k == 0.0) return 0.0;
    return one_minus_sinc2(eps * kPi * k) / (2.0 * kPi * kI * k);
}

DValue denominator_D(double eps, double mu, cplx z) {
    const cplx s = std::sin(z);
    const cplx s2 = s * s;
    const cplx sin2z = std::sin(2.0 * z);
    const cplx value = eps * z * z - eps * mu * s2 + 2.0 * kI * z * s2;
    const cplx deriv = 2.0 * eps * z - eps * mu * sin2z + 2.0 * kI * s2 + 2.0 * kI * z * sin2z;
    return {value, deriv};
}

cplx scaled_symbol(double eps, double mu, cplx z) {
    const cplx s = sinc(z);
    const cplx s2 = s * s;
    const cplx den = eps - eps * mu * s2 + 2.0 * kI * z * s2;
    check_denominator(den, "scaled symbol");
    return eps * s2 / den;
}

PoleData find_pole(double eps, double mu) {
    check_family(eps, mu);
    PoleData out;
    out.family = mu < 1.0 ? +1 : -1;
    cplx z = kI * (eps * (1.0 - mu) / 2.0);
    DValue d = denominator_D(eps, mu, z);
    int polish = 0;
    int it = 0;
    for (; it < 50; ++it) {
        if (std::abs(d.value) <= 1e-13) {
            // a couple of extra quadratic steps land on the rounding floor
            if (++polish > 2) break;
        }
        if (d.derivative == 0.0) break;
        cplx step = d.value / d.derivative;
        cplx trial = z - step;
        DValue dt = denominator_D(eps, mu, trial);
        for (int halve = 0; halve < 10 && std::abs(dt.value) > std::abs(d.value); ++halve) {
            step *= 0.5;
            trial = z - step;
            dt = denominator_D(eps, mu, trial);
        }
        if (std::abs(dt.value) > std::abs(d.value) && polish > 0) break;  // at the rounding floor
        z = trial;
        d = dt;
    }
    out.newton_iters = it;
    out.residual = std::abs(d.value);
    if (!(out.residual <= 1e-13)) {
        std::ostringstream os;
        os << "Newton on D did not converge for eps=" << eps << ", mu=" << mu << " (|D|=" << out.residual << ")";
        throw Error(ErrorKind::pole_search, os.str());
    }
    if (!(std::abs(z) < 0.9 * kPi)) {
        std::ostringstream os;
        os << "zero of D at |z|=" << std::abs(z) << " lies outside the ball |z| < 0.9 pi";
        throw Error(ErrorKind::out_of_ball, os.str());
    }
    out.z_eps = z;
    const cplx rate = (out.family > 0 ? -2.0 : 2.0) * kI * z / eps;
    out.mu_rate = rate.real();
    const cplx s = std::sin(z);
    out.nu_prefactor = (2.0 * kI * s * s / d.derivative).real();
    return out;
}

cplx pole_part(double eps, double mu, const PoleData& pole, cplx z) {
    const DValue d = denominator_D(eps, mu, pole.z_eps);
    const cplx s = std::sin(pole.z_eps);
    return eps * s * s / (d.derivative * (z - pole.z_eps));
}

double series_mu_coefficient(double p) { return (1.0 - p) * (1.0 - p) / 12.0; }
double series_nu_coefficient(double p) { return (1.0 - p) / 6.0; }
double reference_mu_coefficient(double p) { return (1.0 + p) * (1.0 - p) * (1.0 - p) / 12.0; }
double reference_nu_coefficient(double p) { return (1.0 + p) * (1.0 - p) / 12.0; }

PhysicalKernels kernel_physical(double eps, const Grid& grid) {
    grid.check();
    if (!(eps > 0.0)) throw Error(ErrorKind::domain, "kernel_physical needs eps > 0");
    if (grid.angular_nyquist() < 8.0 / eps) {
        std::ostringstream os;
        os << "angular Nyquist " << grid.angular_nyquist() << " below 8/eps=" << 8.0 / eps;
        throw Error(ErrorKind::resolution, os.str());
    }
    const Spectral sp(grid);
    const double inv_h = 1.0 / grid.h();
    auto transform = [&](auto&& symbol) {
        std::vector<cplx> c = sp.sample(symbol);
        // x_0 = -L contributes the phase exp(-2 pi i k_m L) = (-1)^m
        for (std::size_t m = 0; m < c.size(); ++m) c[m] *= (m % 2 ? -inv_h : inv_h);
        return sp.inverse(c);
    };
    PhysicalKernels out;
    out.a_eps = GridProfile{grid, transform([&](double k) { return symbol_a(eps, k); })};
    out.b = GridProfile{grid, transform([&](double k) { return symbol_a(0.0, k) - symbol_a(eps, k); })};
    std::vector<double> B(grid.N, 0.0);
    const double h = grid.h();
    for (std::size_t j = grid.N - 1; j-- > 0;) B[j] = B[j + 1] + 0.5 * h * (out.b.values[j] + out.b.values[j + 1]);
    out.B = GridProfile{grid, std::move(B)};
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) throw Error(ErrorKind::insufficient_data, "log-log fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

SymbolBoundsReport verify_symbol_bounds(const std::vector<double>& eps_list, double eta_minus,
                                        double eta_plus, double s, const std::vector<double>& mus) {
    if (eps_list.size() < 2) throw Error(ErrorKind::configuration, "symbol check needs at least two eps values");
    if (!(s > 0.0 && s < 1.0)) throw Error(ErrorKind::configuration, "weight exponent s must lie in (0,1)");
    if (!(eta_minus > 0.0) || !(eta_plus > 0.0)) throw Error(ErrorKind::configuration, "strip half-widths must be positive");

    SymbolBoundsReport rep;
    rep.s = s;
    rep.eta_minus = eta_minus;
    rep.eta_plus = eta_plus;
    rep.mus = mus;
    constexpr int kSamples = 2048;
    const double etas[5] = {-eta_minus, -0.5 * eta_minus, 0.0, 0.5 * eta_plus, eta_plus};

    for (double eps : eps_list) {
        SymbolBoundsRow row{};
        row.eps = eps;
        const double kmin = 1e-3, kmax = 10.0 / eps;
        for (int i = 0; i < kSamples; ++i) {
            const double mag = kmin * std::pow(kmax / kmin, static_cast<double>(i) / (kSamples - 1));
            for (double sgn : {-1.0, 1.0}) {
                for (double eta : etas) {
                    const cplx k(sgn * mag, eta / (2.0 * kPi));
                    const double diff = std::abs(symbol_a(eps, k) - symbol_a(0.0, k));
                    row.sup_diff = std::max(row.sup_diff, diff);
                    row.sup_weighted_diff = std::max(row.sup_weighted_diff, diff * (1.0 + std::pow(std::abs(k), 1.0 - s)));
                }
            }
        }
        for (double mu : mus) {
            const PoleData pole = find_pole(eps, mu);
            for (int i = 0; i < kSamples; ++i) {
                const double re = 0.8 * kPi + (10.0 * kPi - 0.8 * kPi) * i / (kSamples - 1);
                for (double sgn : {-1.0, 1.0})
                    for (double eta : etas) {
                        const cplx z(sgn * re, 0.5 * eps * eta);  // Im k = eta / (2 pi)
                        row.tail_constant = std::max(row.tail_constant, std::abs(z * scaled_symbol(eps, mu, z)) / eps);
                    }
            }
            // G = A - B is holomorphic on the disk, so its sup is attained on the boundary
            for (double radius : {0.4 * kPi, 0.8 * kPi}) {
                for (int i = 0; i < kSamples; ++i) {
                    const cplx z = std::polar(radius, 2.0 * kPi * i / kSamples);
                    const cplx g = scaled_symbol(eps, mu, z) - pole_part(eps, mu, pole, z);
                    row.bulk_constant = std::max(row.bulk_constant, std::abs(g) / (eps * eps));
                }
            }
        }
        rep.rows.push_back(row);
    }

    std::vector<double> e, d, w;
    for (const auto& r : rep.rows) {
        e.push_back(r.eps);
        d.push_back(r.sup_diff);
        w.push_back(r.sup_weighted_diff);
    }
    rep.order_diff = loglog_slope(e, d);
    rep.order_weighted = loglog_slope(e, w);
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        auto ratio = [](double a, double b) { return std::max(a / b, b / a); };
        if (!mus.empty()) {
            rep.max_bulk_ratio = std::max(rep.max_bulk_ratio, ratio(rep.rows[i].bulk_constant, rep.rows[i - 1].bulk_constant));
            rep.max_tail_ratio = std::max(rep.max_tail_ratio, ratio(rep.rows[i].tail_constant, rep.rows[i - 1].tail_constant));
        }
    }
    return rep;
}

}  // namespace fput
