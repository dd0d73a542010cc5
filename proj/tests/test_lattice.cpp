#include <doctest.h>

#include <cmath>

#include "fput/error.hpp"
#include "fput/lattice.hpp"

using namespace fput;

namespace {
const Potential quad = Potential::polynomial({0.0, 0.0, 1.0});
const Potential linear = Potential::polynomial({0.0, 1.0});

FrontSolution front(double eps, const Potential& p) {
    return solve_front(eps, p, solve_R0(p, auto_grid(eps, p)));
}
}  // namespace

TEST_CASE("uniform state is a fixed point") {
    LatticeState s = init_chain_step(400, 10.0, 0.3, 0.3);
    const std::vector<double> r0 = s.r;
    for (int k = 0; k < 10; ++k) step_imex(s, 0.05, quad);
    CHECK(s.r == r0);
    CHECK(sup_norm(s.v) == 0.0);
}

TEST_CASE("stationary chain gives no speed") {
    LatticeState s = init_chain_step(400, 10.0, 0.3, 0.3);
    const Trajectory tr = run(s, 5.0, 0.05, 10, quad);
    try {
        (void)measure_front_speed(tr);
        FAIL("expected insufficient_data");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::insufficient_data);
    }
}

TEST_CASE("front initial data") {
    const FrontSolution sol = front(0.1, quad);
    const LatticeState s = init_chain(2000, sol);
    CHECK(s.gamma == doctest::Approx(10.0));
    CHECK(s.r[1000] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(s.r.front() - 1.0) <= 1e-6);
    CHECK(std::abs(s.r.back()) <= 1e-6);
    CHECK_THROWS_AS(init_chain(100, sol), Error);
    const LatticeState st = init_chain_step(400, 10.0);
    CHECK(st.r[199] == 1.0);
    CHECK(st.r[200] == 0.0);
}

TEST_CASE("first order in time") {
    const FrontSolution sol = front(0.1, quad);
    auto final_r = [&](double dt) {
        const Trajectory tr = run(init_chain(400, sol), 2.0, dt, 1000000, quad);
        return tr.final_state.r;
    };
    const auto a = final_r(0.04), b = final_r(0.02), c = final_r(0.01);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        d1 = std::max(d1, std::abs(a[n] - b[n]));
        d2 = std::max(d2, std::abs(b[n] - c[n]));
    }
    const double order = std::log2(d1 / d2);
    CHECK(order >= 0.8);
    CHECK(order <= 1.2);
}

TEST_CASE("free ends dissipate energy") {
    LatticeState s = init_chain_step(200, 5.0, 0.0, 0.0);
    s.closure = Closure::free_ends;
    for (std::size_t n = 0; n < s.r.size(); ++n) s.r[n] = 0.1 * std::sin(0.05 * static_cast<double>(n * n));
    const double dt = 0.05;
    double e = chain_energy(s, linear), worst = -INFINITY;
    for (int k = 0; k < 400; ++k) {
        step_imex(s, dt, linear);
        const double en = chain_energy(s, linear);
        worst = std::max(worst, en - e);
        e = en;
    }
    CHECK(worst <= 1e-10 * dt);
}

TEST_CASE("normalized front travels at unit speed") {
    const FrontSolution sol = front(0.1, quad);
    const Trajectory tr = run(init_chain(2000, sol), 50.0, 0.05, 100, quad);
    const SpeedFit f = measure_front_speed(tr);
    CHECK(f.c_fit == doctest::Approx(1.0).epsilon(0.01));
    CHECK(f.r2 >= 0.9999);
    CHECK(compare_profile(tr, sol) <= 1e-3);
    CHECK(tr.max_boundary_drift <= 1e-6);
}

TEST_CASE("raw hertz front travels at sqrt 2") {
    const Renormalized rn = renormalize(Potential::hertz(1.5, 0.0, 4.0), 4.0, 0.0);
    const FrontScaling sc = FrontScaling::from(rn.constants);
    const FrontSolution sol = front(0.1, rn.potential);
    const Potential raw = Potential::hertz(1.5, 0.0, 4.0);
    const LatticeState s = init_chain(2000, sol, sc);
    CHECK(s.gamma == doctest::Approx(10.0 * std::sqrt(2.0)));
    const Trajectory tr = run(s, 40.0, default_time_step(raw), 100, raw);
    const SpeedFit f = measure_front_speed(tr);
    CHECK(f.c_fit == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    CHECK(compare_profile(tr, sol, sc) <= 1e-3);
}

TEST_CASE("step data relaxes toward the front") {
    const FrontSolution sol = front(0.1, quad);
    const Trajectory tr = run(init_chain_step(2000, 10.0, 1.0, 0.0, 1.0), 60.0, 0.05, 100, quad);
    const std::vector<double> d = profile_distances(tr, sol);
    REQUIRE(d.size() >= 6);
    for (std::size_t i = d.size() - 5; i < d.size(); ++i) CHECK(d[i] < d[i - 1]);
    CHECK(d.back() < 0.1 * d.front());
    CHECK(measure_front_speed(tr).c_fit == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("step data without the velocity jump splits") {
    const Trajectory tr = run(init_chain_step(2000, 10.0), 60.0, 0.05, 100, quad);
    // the right-moving front connects an intermediate state to 0 and is slower
    CHECK(measure_front_speed(tr).c_fit < 0.9);
}
