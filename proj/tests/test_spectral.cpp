#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "fput/error.hpp"
#include "fput/spectral.hpp"

using namespace fput;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

// Nontrivial real root y of D(i y) / y^2 = -eps + (eps mu + 2 y) sinh^2(y) / y^2.
double imaginary_root(double eps, double mu) {
    auto f = [&](double y) {
        const double s = std::sinh(y) / y;
        return -eps + (eps * mu + 2.0 * y) * s * s;
    };
    const double y0 = 0.5 * eps * (1.0 - mu);
    double a = 0.5 * y0, b = 1.5 * y0;
    if (a > b) std::swap(a, b);
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 100;
    const auto r = boost::math::tools::toms748_solve(f, a, b, tol, it);
    return 0.5 * (r.first + r.second);
}
}  // namespace

TEST_CASE("sinc branches agree") {
    for (double x : {0.0, 1e-4, 9.9e-3, 1.01e-2, 0.3}) {
        const double ref = x == 0.0 ? 1.0 : std::sin(x) / x;
        CHECK(std::abs(sinc(cplx(x, 0.0)) - ref) <= 1e-15);
    }
    const cplx z(5e-3, 4e-3);
    CHECK(std::abs(sinc(z) - std::sin(z) / z) <= 1e-14);
}

TEST_CASE("tent symbol is the transform of the tent kernel") {
    const double eps = 0.3;
    for (double k : {0.0, 0.4, 1.7, 5.2}) {
        auto re = [&](double x) { return (1.0 - std::abs(x) / eps) / eps * std::cos(2 * pi * k * x); };
        const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(re, -eps, 0.0) +
                         boost::math::quadrature::gauss_kronrod<double, 61>::integrate(re, 0.0, eps);
        CHECK(std::abs(tent_symbol(eps, cplx(k, 0.0)) - q) <= 1e-12);
    }
}

TEST_CASE("symbol identities") {
    for (double eps : {0.05, 0.1, 0.4}) {
        CHECK(std::abs(symbol_a(eps, 0.0) - 1.0) <= 1e-15);
        for (double k : {0.01, 0.37, 2.5, 30.0}) {
            const cplx a = symbol_a(eps, k), am = symbol_a(eps, -k);
            CHECK(std::abs(am - std::conj(a)) <= 1e-15);
            CHECK(std::abs(symbol_a_mu(eps, 0.0, k) - a) <= 1e-15);
            const cplx a0 = 1.0 / (1.0 + 2.0 * pi * I * k);
            const cplx lam = tent_symbol(eps, k);
            CHECK(std::abs(background_symbol(eps, k) * 2.0 * pi * I * k - (a0 - a) * (1.0 + 2.0 * pi * I * k)) <= 1e-13);
            CHECK(std::abs(tent_defect_symbol(eps, k) * 2.0 * pi * I * k - (1.0 - lam)) <= 1e-13);
        }
    }
    CHECK(background_symbol(0.1, 0.0) == cplx(0.0, 0.0));
    CHECK(std::abs(symbol_a(0.0, 0.3) - 1.0 / (1.0 + 2.0 * pi * I * 0.3)) <= 1e-15);
}

TEST_CASE("symbol limits") {
    for (double k : {0.1, 1.0}) {
        const cplx a0 = 1.0 / (1.0 + 2.0 * pi * I * k);
        CHECK(std::abs(symbol_a(1e-5, k) - a0) <= 1e-8);
        for (double mu : {0.0, 0.5, 2.0}) {
            const int sign = mu < 1.0 ? 1 : -1;
            const cplx lim = double(sign) / (1.0 - mu + 2.0 * pi * I * k);
            CHECK(std::abs(symbol_a_mu(1e-5, mu, k, sign) - lim) <= 1e-8);
        }
    }
    for (double mu : {0.0, 0.5, 1.5}) CHECK(std::abs(symbol_a_mu(0.1, mu, 0.0)) == doctest::Approx(1.0 / std::abs(1.0 - mu)));
}

TEST_CASE("denominator values") {
    const DValue at0 = denominator_D(0.1, 0.5, 0.0);
    CHECK(std::abs(at0.value) == 0.0);
    CHECK(std::abs(at0.derivative) == 0.0);
    CHECK(std::abs(denominator_D(0.1, 0.0, pi).value - 0.1 * pi * pi) <= 1e-13);
    // analytic derivative against a central difference
    const cplx z(0.7, 0.2), dz = 1e-6;
    for (double mu : {0.0, 2.0}) {
        const cplx fd = (denominator_D(0.2, mu, z + dz).value - denominator_D(0.2, mu, z - dz).value) / (2.0 * dz);
        CHECK(std::abs(fd - denominator_D(0.2, mu, z).derivative) <= 1e-8);
    }
    // the initial guess is an O(eps^3) residual
    for (double mu : {0.0, 2.0}) {
        std::vector<double> e{0.2, 0.1, 0.05}, r;
        for (double eps : e) r.push_back(std::abs(denominator_D(eps, mu, I * eps * (1.0 - mu) / 2.0).value));
        CHECK(loglog_slope(e, r) >= 2.8);
    }
}

TEST_CASE("frozen pole values") {
    struct Row {
        double p, eps, mu, nu;
    };
    const Row rows[] = {
        {0.0, 0.2, 0.99669523067306, 0.99342521978128},  {0.0, 0.1, 0.99916846709668, 0.99833914377887},
        {0.0, 0.05, 0.99979177943361, 0.99958369755793}, {1.5, 0.2, 0.50083570204242, 1.00334671977804},
        {1.5, 0.1, 0.50020848102120, 1.00083416749417},  {1.5, 0.05, 0.50005209255827, 1.00020838542959},
        {2.0, 0.2, 1.00334895142063, 1.00670680351272},  {2.0, 0.1, 1.00083430653147, 1.00166916881338},
        {2.0, 0.05, 1.00020839411247, 1.00041682295024}, {0.5, 0.1, 0.49979186607126, 0.99916791454169},
    };
    for (const Row& r : rows) {
        const PoleData pd = find_pole(r.eps, r.p);
        CAPTURE(r.p);
        CAPTURE(r.eps);
        CHECK(std::abs(pd.mu_rate - r.mu) <= 1e-12);
        CHECK(std::abs(pd.nu_prefactor - r.nu) <= 1e-12);
        CHECK(pd.family == (r.p < 1.0 ? 1 : -1));
        CHECK(pd.residual <= 1e-15);
        CHECK(std::abs(pd.z_eps.real()) <= 1e-14);
    }
}

TEST_CASE("pole matches a bracketed root on the imaginary axis") {
    for (double mu : {0.0, 0.5, 1.5, 2.0}) {
        for (double eps : {0.3, 0.1, 0.02}) {
            const PoleData pd = find_pole(eps, mu);
            CHECK(std::abs(pd.z_eps.imag() - imaginary_root(eps, mu)) <= 1e-14);
        }
    }
}

TEST_CASE("continuum limit of the rates") {
    for (double mu : {0.0, 0.5, 1.5, 2.0}) {
        const PoleData pd = find_pole(1e-3, mu);
        CHECK(pd.mu_rate == doctest::Approx(std::abs(1.0 - mu)).epsilon(1e-5));
        CHECK(pd.nu_prefactor == doctest::Approx(1.0).epsilon(1e-5));
    }
    CHECK(std::abs(find_pole(0.1, 0.0).mu_rate - 0.9991667) <= 1e-4);
}

TEST_CASE("series coefficients agree with Richardson extrapolation") {
    for (double mu : {0.0, 0.5, 1.5, 2.0}) {
        auto cmu = [&](double eps) {
            const double s = mu < 1.0 ? 1.0 : -1.0;
            return s * (std::abs(1.0 - mu) - find_pole(eps, mu).mu_rate) / (eps * eps);
        };
        auto cnu = [&](double eps) { return (1.0 - find_pole(eps, mu).nu_prefactor) / (eps * eps); };
        auto rich = [](auto f) {
            const double r1 = (4.0 * f(0.05) - f(0.1)) / 3.0, r2 = (4.0 * f(0.025) - f(0.05)) / 3.0;
            return (16.0 * r2 - r1) / 15.0;
        };
        CHECK(rich(cmu) == doctest::Approx(series_mu_coefficient(mu)).epsilon(1e-6).scale(1.0));
        CHECK(rich(cnu) == doctest::Approx(series_nu_coefficient(mu)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("pole part captures the singularity") {
    const double eps = 0.1, mu = 0.0;
    const PoleData pd = find_pole(eps, mu);
    for (double d : {1e-3, 1e-5}) {
        const cplx z = pd.z_eps + cplx(d, d);
        const cplx a = scaled_symbol(eps, mu, z), b = pole_part(eps, mu, pd, z);
        CHECK(std::abs(a - b) <= 1e-6 * std::abs(a) / d);
    }
}

TEST_CASE("symbol on top of the pole is rejected") {
    const PoleData pd = find_pole(0.1, 0.0);
    try {
        (void)symbol_a(0.1, pd.z_eps / (0.1 * pi));
        FAIL("expected pole_proximity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::pole_proximity);
    }
}

TEST_CASE("pole search failure is reported") {
    CHECK_THROWS_AS(find_pole(50.0, 0.0), Error);
}

TEST_CASE("physical kernels") {
    const Grid g{40.0, 4096};
    const PhysicalKernels k = kernel_physical(0.1, g);
    CHECK(std::abs(integrate(g, k.a_eps.values) - 1.0) <= 1e-8);
    CHECK(std::abs(integrate(g, k.b.values)) <= 1e-8);
    // a_eps is close to exp(-x) away from the origin and nearly zero to the left
    const std::size_t j5 = g.center() + static_cast<std::size_t>(5.0 / g.h());
    CHECK(k.a_eps[j5] == doctest::Approx(std::exp(-g.x(j5))).epsilon(0.05));
    const std::size_t jm = g.center() - static_cast<std::size_t>(5.0 / g.h());
    // the left side holds only sampling ringing from the kinks of the tent factor; it shrinks under refinement
    CHECK(std::abs(k.a_eps[jm]) <= 0.1 * k.a_eps[j5]);
    const Grid fine{40.0, 8192};
    const PhysicalKernels kf = kernel_physical(0.1, fine);
    CHECK(std::abs(kf.a_eps[2 * jm]) <= 0.1 * std::abs(k.a_eps[jm]));
    // B is the right tail integral of b
    CHECK(std::abs(k.B.values.back()) <= 1e-6);
    CHECK(std::abs(k.B[0] - integrate(g, k.b.values)) <= 1e-6);
    CHECK_THROWS_AS(kernel_physical(0.01, g), Error);
}

TEST_CASE("symbol bounds sample") {
    const SymbolBoundsReport r = verify_symbol_bounds({0.2, 0.1, 0.05}, 0.5, 0.5, 0.5, {0.0, 2.0});
    REQUIRE(r.rows.size() == 3);
    CHECK(r.order_diff >= 0.9);
    CHECK(r.order_diff <= 1.1);
    CHECK(r.max_tail_ratio <= 2.0);
    CHECK(r.max_bulk_ratio <= 2.0);
    for (const auto& row : r.rows) CHECK(row.sup_weighted_diff >= row.sup_diff);
}

TEST_CASE("loglog slope") {
    CHECK(loglog_slope({1.0, 2.0, 4.0}, {3.0, 12.0, 48.0}) == doctest::Approx(2.0));
}
