#include <doctest.h>

#include <cmath>
#include <random>

#include "fput/error.hpp"
#include "fput/potential.hpp"

using namespace fput;

namespace {
const Potential quad = Potential::polynomial({0.0, 0.0, 1.0});
const Potential hertz = Potential::hertz(1.5);
const Potential linear = Potential::polynomial({0.0, 1.0});
}  // namespace

TEST_CASE("hertz evaluation at the ends of the unit interval") {
    const PotentialValue one = hertz.eval(1.0);
    CHECK(one.dphi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.ddphi == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(one.phi == doctest::Approx(0.4).epsilon(1e-14));
    const PotentialValue zero = hertz.eval(0.0);
    CHECK(zero.dphi == 0.0);
    CHECK(zero.ddphi == 0.0);
}

TEST_CASE("quadratic force evaluation") {
    const PotentialValue v = quad.eval(0.5);
    CHECK(v.dphi == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.ddphi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.phi == doctest::Approx(0.125 / 3.0).epsilon(1e-14));
}

TEST_CASE("constant second derivative outside the interval") {
    for (double r : {-3.0, -0.5, 1.5, 4.0}) {
        const double inside = r < 0 ? 0.0 : 1.0;
        CHECK(quad.ddphi(r) == doctest::Approx(quad.ddphi(inside)).epsilon(1e-14));
    }
    // Phi' continues linearly and Phi quadratically
    const double h = 1e-4;
    for (double r : {-2.0, 2.0}) {
        const double fd = (quad.phi(r + h) - quad.phi(r - h)) / (2 * h);
        CHECK(fd == doctest::Approx(quad.dphi(r)).epsilon(1e-9));
    }
    CHECK(quad.dphi(2.0) == doctest::Approx(1.0 + 2.0 * 1.0).epsilon(1e-14));
}

TEST_CASE("non-finite argument is a domain error") {
    try {
        (void)quad.eval(std::nan(""));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("renormalize raw hertz gives speed sqrt 2") {
    const Renormalized rn = renormalize(Potential::hertz(1.5, 0.0, 4.0), 4.0, 0.0);
    CHECK(std::abs(rn.constants.c - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(rn.constants.d) <= 1e-12);
    const double jump_r = rn.constants.r_plus - rn.constants.r_minus;
    const double jump_f = 0.0 - 8.0;
    CHECK(std::abs(rn.constants.c * rn.constants.c * jump_r - jump_f) <= 1e-12);
    CHECK(std::abs(rn.potential.dphi(0.0)) <= 1e-12);
    CHECK(std::abs(rn.potential.dphi(1.0) - 1.0) <= 1e-12);
    CHECK(std::abs(rn.potential.phi(0.0)) <= 1e-12);
    // normalized hertz 3/2 is again the unit hertz law
    for (double r : {0.1, 0.4, 0.9}) CHECK(rn.potential.dphi(r) == doctest::Approx(std::pow(r, 1.5)).epsilon(1e-12));
}

TEST_CASE("renormalize keeps a normalized potential") {
    const Renormalized rn = renormalize(quad, 1.0, 0.0);
    CHECK(std::abs(rn.constants.c - 1.0) <= 1e-12);
    CHECK(std::abs(rn.constants.d) <= 1e-12);
    for (double r : {0.0, 0.3, 0.7, 1.0}) CHECK(std::abs(rn.potential.dphi(r) - r * r) <= 1e-12);
}

TEST_CASE("linear force has unit speed for any states") {
    for (auto [rm, rp] : {std::pair{1.0, 0.0}, std::pair{3.0, -1.0}, std::pair{0.5, 0.2}}) {
        const Renormalized rn = renormalize(linear.with_interval(rp, rm), rm, rp);
        CHECK(std::abs(rn.constants.c - 1.0) <= 1e-12);
    }
}

TEST_CASE("coefficient A for the worked potentials") {
    CHECK(std::abs(coefficient_A(quad, 1.0, 0.0) - 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(coefficient_A(hertz, 1.0, 0.0) - 1.0 / 10.0) <= 1e-12);
    CHECK(std::abs(coefficient_A(linear, 1.0, 0.0)) <= 1e-12);
    CHECK(renormalize(quad, 1.0, 0.0).constants.A == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("sign of A survives renormalization on random convex cubics") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        // Phi' = c1 r + c2 r^2 + c3 r^3 with c1, c2, c3 > 0 is increasing and convex on [0, 2]
        const Potential raw = Potential::polynomial({0.0, 0.1 + u(rng), 0.1 + u(rng), 0.1 + u(rng)}, 0.0, 2.0);
        const double rm = 1.0 + u(rng), rp = 0.5 * u(rng);
        const double a_raw = coefficient_A(raw, rm, rp);
        const Renormalized rn = renormalize(raw, rm, rp);
        CHECK(a_raw > 0.0);
        CHECK(rn.constants.A > 0.0);
        CHECK(coefficient_A(rn.potential, 1.0, 0.0) > 0.0);
        CHECK(validate(rn.potential).ok());
    }
}

TEST_CASE("validation report") {
    const ValidationReport q = validate(quad);
    CHECK(q.ok());
    CHECK(q.holder_beta == doctest::Approx(1.0).epsilon(0.05));
    const ValidationReport h = validate(hertz);
    CHECK(h.ok());
    CHECK(h.holder_beta == doctest::Approx(0.5).epsilon(0.05));
    const ValidationReport concave = validate(Potential::polynomial({0.0, 2.0, -1.0}));
    CHECK(concave.normalized);
    CHECK_FALSE(concave.convex);
    CHECK_FALSE(concave.ok());
}

TEST_CASE("renormalize rejects a concave force") {
    try {
        (void)renormalize(Potential::polynomial({0.0, 2.0, -1.0}), 1.0, 0.0);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}
