#include "fput/lattice.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fput/error.hpp"

namespace fput {

namespace {

constexpr std::size_t kMinSites = 200;

void check_sites(std::size_t M) {
    if (M < kMinSites) {
        std::ostringstream os;
        os << "chain needs at least " << kMinSites << " sites, got " << M;
        throw Error(ErrorKind::configuration, os.str());
    }
}

// Descending crossing of `level`, as a fractional site index; NaN if absent.
double crossing(const std::vector<double>& r, double level) {
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
        const double a = r[j] - level, b = r[j + 1] - level;
        if (a >= 0.0 && b < 0.0) return static_cast<double>(j) + a / (a - b);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void hermite(double t, double h, double y0, double d0, double y1, double d1, double& y) {
    const double t2 = t * t, t3 = t2 * t;
    y = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace

ProfileTable::ProfileTable(const FrontSolution& sol)
    : x0_(-sol.grid().L), h_(sol.grid().h()), eps_(sol.epsilon), r_(sol.R.values), s_(sol.S.values) {
    const Spectral sp(sol.grid());
    // S' from the spectral derivative; R' = -S
    std::vector<double> ds = sp.derivative(s_);
    // interleave value/derivative pairs for R and S
    std::vector<double> r(2 * r_.size()), s(2 * s_.size());
    for (std::size_t j = 0; j < r_.size(); ++j) {
        r[2 * j] = r_[j];
        r[2 * j + 1] = -s_[j];
        s[2 * j] = s_[j];
        s[2 * j + 1] = ds[j];
    }
    r_ = std::move(r);
    s_ = std::move(s);
}

double ProfileTable::R(double x) const {
    const std::size_t n = r_.size() / 2;
    const double pos = (x - x0_) / h_;
    if (pos <= 0.0) return r_[0];
    if (pos >= static_cast<double>(n - 1)) return r_[2 * (n - 1)];
    const auto j = static_cast<std::size_t>(pos);
    double y;
    hermite(pos - static_cast<double>(j), h_, r_[2 * j], r_[2 * j + 1], r_[2 * j + 2], r_[2 * j + 3], y);
    return y;
}

double ProfileTable::S(double x) const {
    const std::size_t n = s_.size() / 2;
    const double pos = (x - x0_) / h_;
    if (pos <= 0.0 || pos >= static_cast<double>(n - 1)) return 0.0;
    const auto j = static_cast<std::size_t>(pos);
    double y;
    hermite(pos - static_cast<double>(j), h_, s_[2 * j], s_[2 * j + 1], s_[2 * j + 2], s_[2 * j + 3], y);
    return y;
}

LatticeState init_chain_step(std::size_t M, double gamma, double left, double right, double speed) {
    check_sites(M);
    if (!(gamma > 0.0)) throw Error(ErrorKind::configuration, "damping gamma must be positive");
    LatticeState s;
    s.gamma = gamma;
    s.left = left;
    s.right = right;
    s.r.assign(M, right);
    s.v.assign(M, 0.0);
    for (std::size_t n = 0; n < M / 2; ++n) s.r[n] = left;
    s.v[M / 2] = speed * (left - right);
    return s;
}

LatticeState init_chain(std::size_t M, const FrontSolution& sol, const FrontScaling& sc) {
    check_sites(M);
    if (!(sol.epsilon > 0.0)) throw Error(ErrorKind::configuration, "front initial data needs eps > 0");
    if (!(sc.speed > 0.0)) throw Error(ErrorKind::configuration, "front speed must be positive");
    const ProfileTable table(sol);
    const double eps = sol.epsilon;
    const double jump = sc.r_minus - sc.r_plus;
    LatticeState s;
    s.gamma = sc.speed / eps;
    s.left = sc.r_minus;
    s.right = sc.r_plus;
    s.r.resize(M);
    s.v.resize(M);
    const double nc = static_cast<double>(M / 2);
    for (std::size_t n = 0; n < M; ++n) {
        const double x = eps * (static_cast<double>(n) - nc);
        s.r[n] = sc.r_plus + jump * table.R(x);
        s.v[n] = jump * eps * sc.speed * table.S(x);
    }
    return s;
}

void step_imex(LatticeState& s, double dt, const Potential& p) {
    if (!(dt > 0.0)) throw Error(ErrorKind::configuration, "time step must be positive");
    const std::size_t M = s.r.size();
    if (s.v.size() != M || M < 2) throw Error(ErrorKind::configuration, "inconsistent lattice state sizes");

    const bool pinned = s.closure == Closure::dirichlet;
    const double f_left = pinned ? p.dphi(s.left) : 0.0;
    const double f_right = pinned ? p.dphi(s.right) : 0.0;
    std::vector<double> f(M);
    for (std::size_t n = 0; n < M; ++n) f[n] = p.dphi(s.r[n]);

    // right-hand side v + dt Delta Phi'(r)
    std::vector<double> rhs(M);
    for (std::size_t n = 0; n < M; ++n) {
        const double fl = n == 0 ? f_left : f[n - 1];
        const double fr = n + 1 == M ? f_right : f[n + 1];
        rhs[n] = s.v[n] + dt * (fl - 2.0 * f[n] + fr);
    }

    // Thomas algorithm for (1 + 2a) on the diagonal, -a off it; ghost velocities vanish
    const double a = dt * s.gamma;
    const double diag = 1.0 + 2.0 * a;
    std::vector<double> cp(M);
    cp[0] = -a / diag;
    rhs[0] /= diag;
    for (std::size_t n = 1; n < M; ++n) {
        const double m = diag + a * cp[n - 1];
        cp[n] = -a / m;
        rhs[n] = (rhs[n] + a * rhs[n - 1]) / m;
    }
    for (std::size_t n = M - 1; n-- > 0;) rhs[n] -= cp[n] * rhs[n + 1];

    bool finite = true;
    for (double x : rhs) finite = finite && std::isfinite(x);
    if (!finite) {
        std::ostringstream os;
        os << "lattice blow-up at t=" << s.t << " (max |v| before failure " << sup_norm(s.v) << ")";
        throw Error(ErrorKind::blow_up, os.str());
    }
    s.v = std::move(rhs);
    for (std::size_t n = 0; n < M; ++n) s.r[n] += dt * s.v[n];
    s.t += dt;
}

double default_time_step(const Potential& p) {
    const double m = p.max_ddphi();
    return m > 0.0 ? std::min(0.05, 0.5 / m) : 0.05;
}

double chain_energy(const LatticeState& s, const Potential& p) {
    const std::size_t M = s.r.size();
    std::vector<double> P(M + 1, 0.0);
    for (std::size_t n = 0; n < M; ++n) P[n + 1] = P[n] + s.v[n];
    double mean = 0.0;
    for (double x : P) mean += x;
    mean /= static_cast<double>(M + 1);
    double e = 0.0;
    for (double x : P) e += 0.5 * (x - mean) * (x - mean);
    for (double r : s.r) e += p.phi(r);
    return e;
}

Trajectory run(LatticeState state, double T, double dt, std::size_t output_every, const Potential& p) {
    if (!(T > 0.0) || !(dt > 0.0)) throw Error(ErrorKind::configuration, "run needs T > 0 and dt > 0");
    if (output_every == 0) throw Error(ErrorKind::configuration, "output_every must be positive");
    Trajectory tr;
    tr.level = 0.5 * (state.left + state.right);
    const auto steps = static_cast<std::size_t>(std::llround(std::ceil(T / dt - 1e-9)));
    tr.times.push_back(state.t);
    tr.snapshots.push_back(state.r);
    auto track = [&]() {
        const double c = crossing(state.r, tr.level);
        if (std::isfinite(c)) {
            tr.crossing_times.push_back(state.t);
            tr.crossing_positions.push_back(c);
        }
        tr.max_boundary_drift = std::max({tr.max_boundary_drift, std::abs(state.r.front() - state.left),
                                          std::abs(state.r.back() - state.right)});
    };
    track();
    for (std::size_t k = 1; k <= steps; ++k) {
        step_imex(state, dt, p);
        track();
        if (k % output_every == 0 || k == steps) {
            tr.times.push_back(state.t);
            tr.snapshots.push_back(state.r);
        }
    }
    tr.final_state = std::move(state);
    return tr;
}

SpeedFit measure_front_speed(const Trajectory& tr) {
    if (tr.times.empty()) throw Error(ErrorKind::insufficient_data, "empty trajectory");
    const double t0 = tr.times.front(), t1 = tr.times.back();
    const double cut = t0 + 0.2 * (t1 - t0);
    std::vector<double> t, x;
    for (std::size_t i = 0; i < tr.crossing_times.size(); ++i) {
        if (tr.crossing_times[i] >= cut) {
            t.push_back(tr.crossing_times[i]);
            x.push_back(tr.crossing_positions[i]);
        }
    }
    const auto moved = std::minmax_element(x.begin(), x.end());
    if (t.size() < 10 || *moved.second - *moved.first == 0.0) {
        std::ostringstream os;
        os << "speed fit needs at least 10 moving crossings after the first 20% of the run, got " << t.size();
        throw Error(ErrorKind::insufficient_data, os.str());
    }
    const double n = static_cast<double>(t.size());
    double mt = 0, mx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        mt += t[i];
        mx += x[i];
    }
    mt /= n;
    mx /= n;
    double stt = 0, stx = 0, sxx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        stx += (t[i] - mt) * (x[i] - mx);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    SpeedFit fit;
    fit.samples = t.size();
    fit.c_fit = stx / stt;
    fit.r2 = sxx > 0.0 ? stx * stx / (stt * sxx) : 0.0;
    return fit;
}

std::vector<double> profile_distances(const Trajectory& tr, const FrontSolution& sol, const FrontScaling& sc) {
    const ProfileTable table(sol);
    const double eps = sol.epsilon;
    const double jump = sc.r_minus - sc.r_plus;
    std::vector<double> out;
    std::vector<double> u;
    for (const auto& snap : tr.snapshots) {
        u.resize(snap.size());
        for (std::size_t n = 0; n < snap.size(); ++n) u[n] = (snap[n] - sc.r_plus) / jump;
        double s0 = crossing(u, 0.5);
        if (!std::isfinite(s0)) s0 = static_cast<double>(snap.size() / 2);
        auto dist = [&](double shift) {
            double m = 0.0;
            for (std::size_t n = 0; n < u.size(); ++n)
                m = std::max(m, std::abs(u[n] - table.R(eps * (static_cast<double>(n) - shift))));
            return m;
        };
        const auto best = boost::math::tools::brent_find_minima(dist, s0 - 1.0, s0 + 1.0, 40);
        out.push_back(best.second);
    }
    return out;
}

double compare_profile(const Trajectory& tr, const FrontSolution& sol, const FrontScaling& sc) {
    const std::vector<double> d = profile_distances(tr, sol, sc);
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

}  // namespace fput
