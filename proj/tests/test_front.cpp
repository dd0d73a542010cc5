#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "fput/analysis.hpp"
#include "fput/error.hpp"
#include "fput/front_solver.hpp"

using namespace fput;

namespace {
const Potential quad = Potential::polynomial({0.0, 0.0, 1.0});
const Potential hertz = Potential::hertz(1.5);

double sup_on(const GridProfile& g, double cut) {
    double m = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.grid.x(j)) <= cut) m = std::max(m, std::abs(g[j]));
    return m;
}
}  // namespace

TEST_CASE("auto grid") {
    const Grid g = auto_grid(0.1, quad);
    CHECK(g.L >= 40.0);
    CHECK(g.h() <= 0.025 + 1e-15);
    CHECK(g.angular_nyquist() >= 8.0 / 0.1);
    const Grid gs = auto_grid(std::vector<double>{0.05, 0.2}, quad);
    CHECK(gs.h() <= 0.0125 + 1e-15);
}

TEST_CASE("eps zero returns the continuum front") {
    const ContinuumSolution R0 = solve_R0(quad, auto_grid(0.1, quad));
    const FrontSolution sol = solve_front(0.0, quad, R0);
    CHECK(sup_norm(sol.W.values) == 0.0);
    CHECK(sol.h1_dist_to_R0 == 0.0);
    CHECK(sup_norm(residual(0.0, quad, R0, sol.W).values) == 0.0);
}

TEST_CASE("background term") {
    const Grid g = auto_grid(0.05, quad);
    const ContinuumSolution R0 = solve_R0(quad, g);
    const GridProfile zero{g, std::vector<double>(g.N, 0.0)};
    std::vector<double> e{0.2, 0.1, 0.05}, sups;
    for (double eps : e) {
        const GridProfile F1 = background_term(eps, quad, R0);
        sups.push_back(sup_norm(F1.values));
        // W = 0 leaves exactly F1 in the residual
        const GridProfile F = residual(eps, quad, R0, zero);
        for (std::size_t j = 0; j < g.N; ++j) REQUIRE(F[j] == doctest::Approx(F1[j]).epsilon(1e-14).scale(1e-14));
        CHECK(std::abs(F1.values.front()) <= 1e-8);
        CHECK(std::abs(F1.values.back()) <= 1e-8);
        // the kernel split route rings near the step at x = 0 and agrees away from it
        const GridProfile split = background_term_split(eps, quad, R0);
        double far = 0.0;
        for (std::size_t j = 0; j < g.N; ++j)
            if (std::abs(g.x(j)) >= 3.0) far = std::max(far, std::abs(split[j] - F1[j]));
        CHECK(far <= 1e-5);
        CHECK(sup_on(F1, g.L) > 0.0);
    }
    CHECK(loglog_slope(e, sups) >= 0.9);
}

TEST_CASE("background term against tent quadrature") {
    // u = R0 - F1 = a_eps * Phi'(R0) solves u + Lambda * u' = Lambda * Phi'(R0)
    const double eps = 0.1;
    const Grid g = auto_grid(eps, quad);
    const ContinuumSolution R0 = solve_R0(quad, g);
    const GridProfile F1 = background_term(eps, quad, R0);
    const Spectral sp(g);
    const std::vector<double> dF = sp.derivative(F1.values);
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (double x : {-3.3, -0.71, 0.0, 0.05, 0.42, 2.9}) {
        auto f = [&](double y) {
            const double du = sp.interpolate(R0.derivative.values, x - y) - sp.interpolate(dF, x - y);
            return (1.0 - std::abs(y) / eps) / eps * (du - quad.dphi(R0.evaluate(x - y)));
        };
        const double lam = GK::integrate(f, -eps, 0.0, 0, 1e-14) + GK::integrate(f, 0.0, eps, 0, 1e-14);
        const double u = R0.evaluate(x) - sp.interpolate(F1.values, x);
        CHECK(std::abs(u + lam) <= 1e-12);
    }
}

TEST_CASE("contract for the quadratic force") {
    for (double eps : {0.05, 0.1, 0.2}) {
        CAPTURE(eps);
        const Grid g = auto_grid(eps, quad);
        const ContinuumSolution R0 = solve_R0(quad, g);
        const FrontSolution sol = solve_front(eps, quad, R0);
        for (const ReportItem& it : front_report(sol, quad)) {
            CAPTURE(it.name);
            CHECK(it.pass);
        }
        CHECK(sol.residual_fp <= 1e-9 * static_cast<double>(g.N));
        CHECK(sol.warning.empty());
        double lo = 1.0, hi = 0.0;
        for (double r : sol.R.values) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        CHECK(lo >= -1e-8);
        CHECK(hi <= 1.0 + 1e-8);
        CHECK(sol.h1_dist_to_R0 > 0.0);
    }
}

TEST_CASE("translation covariance") {
    const double eps = 0.1;
    const Grid g = auto_grid(eps, quad);
    const ContinuumSolution R0 = solve_R0(quad, g);
    const FrontSolution a = solve_front(eps, quad, R0);
    FrontOptions opt;
    opt.phase_x = 1.0;
    const FrontSolution b = solve_front(eps, quad, R0, std::nullopt, opt);
    CHECK(std::abs(b.evaluate(1.0) - 0.5) <= 1e-9);
    double d = 0.0;
    for (double x = -15.0; x <= 15.0; x += 0.37) d = std::max(d, std::abs(b.evaluate(x + 1.0) - a.evaluate(x)));
    CHECK(d <= 1e-8);
}

TEST_CASE("grid refinement") {
    const double eps = 0.1;
    const Grid g = auto_grid(eps, quad);
    const FrontSolution a = solve_front(eps, quad, solve_R0(quad, g));
    const FrontSolution b = solve_front(eps, quad, solve_R0(quad, Grid{g.L, 2 * g.N}));
    double d = 0.0;
    for (double x = -20.0; x <= 20.0; x += 0.29) d = std::max(d, std::abs(b.evaluate(x) - a.evaluate(x)));
    CHECK(d <= 1e-8);
}

TEST_CASE("hertz contract and consistency control") {
    const double eps = 0.1;
    const Grid g = auto_grid(eps, hertz);
    const FrontSolution sol = solve_front(eps, hertz, solve_R0(hertz, g));
    for (const ReportItem& it : front_report(sol, hertz)) {
        CAPTURE(it.name);
        CHECK(it.pass);
    }
    // the wrong potential breaks S = a_eps * (Phi''(R) S)
    CHECK(derivative_consistency(sol, quad) > 1e-3);
}

TEST_CASE("warning above eps0") {
    const double eps = 0.6;
    const Grid g = auto_grid(eps, quad);
    const FrontSolution sol = solve_front(eps, quad, solve_R0(quad, g));
    CHECK_FALSE(sol.warning.empty());
    CHECK(sol.residual_fp <= 1e-9 * static_cast<double>(g.N));
}

TEST_CASE("continuation sweep") {
    const std::vector<double> eps{0.05, 0.1, 0.2};
    const std::vector<FrontSolution> warm = continuation_sweep(quad, eps);
    REQUIRE(warm.size() == 3);
    int warm_its = 0, cold_its = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        CHECK(warm[i].epsilon == eps[i]);
        CHECK(warm[i].grid() == warm[0].grid());
        warm_its += warm[i].krylov_iterations;
        const FrontSolution cold = solve_front(eps[i], quad, warm[i].background);
        cold_its += cold.krylov_iterations;
        CHECK(sup_norm(cold.W.values) == doctest::Approx(sup_norm(warm[i].W.values)).epsilon(1e-8));
    }
    CHECK(warm_its <= cold_its);
    CHECK_THROWS_AS(continuation_sweep(quad, {0.2, 0.1}), Error);
}
