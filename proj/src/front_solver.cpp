#include "fput/front_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fput/error.hpp"
#include "fput/krylov.hpp"
#include "fput/spectral.hpp"

namespace fput {

namespace {

void check_resolution(double eps, const Grid& grid) {
    grid.check();
    if (eps < 0.0 || !std::isfinite(eps)) throw Error(ErrorKind::domain, "eps must be non-negative");
    if (grid.h() > 0.05 + 1e-15) throw Error(ErrorKind::resolution, "grid spacing must not exceed 0.05");
    if (eps > 0.0 && grid.angular_nyquist() < 8.0 / eps) {
        std::ostringstream os;
        os << "grid bandwidth pi/h=" << grid.angular_nyquist() << " below 8/eps=" << 8.0 / eps;
        throw Error(ErrorKind::resolution, os.str());
    }
}

void check_background(const ContinuumSolution& R0, const Grid& grid) {
    if (!(R0.profile.grid == grid)) throw Error(ErrorKind::configuration, "profile grid differs from the R0 grid");
}

std::vector<double> map_values(const std::vector<double>& r, double (Potential::*f)(double) const, const Potential& p) {
    std::vector<double> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = (p.*f)(r[j]);
    return out;
}

// Shared per-(eps, grid) data of the fixed-point operator.
struct Operator {
    double eps;
    const Potential& p;
    const ContinuumSolution& R0;
    Spectral sp;
    std::vector<cplx> ahat;
    std::vector<double> dphi0;
    std::vector<double> F1;

    Operator(double e, const Potential& pot, const ContinuumSolution& r0)
        : eps(e), p(pot), R0(r0), sp(r0.profile.grid) {
        ahat = sp.sample([&](double k) { return symbol_a(eps, k); });
        dphi0 = map_values(R0.profile.values, &Potential::dphi, p);
        F1 = background_term(eps, p, R0).values;
    }

    std::vector<double> total(const std::vector<double>& W) const {
        std::vector<double> r(W.size());
        for (std::size_t j = 0; j < W.size(); ++j) r[j] = R0.profile.values[j] + W[j];
        return r;
    }

    std::vector<double> residual(const std::vector<double>& W) const {
        const std::vector<double> r = total(W);
        std::vector<double> g(W.size());
        for (std::size_t j = 0; j < W.size(); ++j) g[j] = p.dphi(r[j]) - dphi0[j];
        std::vector<double> conv = sp.apply(ahat, g);
        for (std::size_t j = 0; j < W.size(); ++j) conv[j] = W[j] + F1[j] - conv[j];
        return conv;
    }
};

}  // namespace

Grid auto_grid(double eps, const Potential& p) {
    return auto_grid(std::vector<double>{eps}, p);
}

Grid auto_grid(const std::vector<double>& eps_list, const Potential& p) {
    if (eps_list.empty()) throw Error(ErrorKind::configuration, "auto grid needs at least one eps");
    const double pm = p.ddphi(1.0), pp = p.ddphi(0.0);
    double L = 40.0;
    double eps_min = eps_list.front();
    for (double eps : eps_list) {
        if (eps < 0.0) throw Error(ErrorKind::domain, "eps must be non-negative");
        eps_min = std::min(eps_min, eps);
        double mu_m = std::abs(1.0 - pm), mu_p = std::abs(1.0 - pp);
        if (eps > 0.0) {
            mu_m = find_pole(eps, pm).mu_rate;
            mu_p = find_pole(eps, pp).mu_rate;
        }
        L = std::max(L, 20.0 / std::min({mu_m, mu_p, 1.0}));
    }
    const double h_max = eps_min > 0.0 ? std::min(0.05, eps_min / 4.0) : 0.05;
    return make_grid(L, h_max);
}

GridProfile background_term(double eps, const Potential& p, const ContinuumSolution& R0) {
    const Grid& grid = R0.profile.grid;
    check_resolution(eps, grid);
    (void)p;
    const Spectral sp(grid);
    const auto m = sp.sample([&](double k) { return background_symbol(eps, k); });
    GridProfile out{grid, sp.apply(m, R0.derivative.values)};
    const double ends = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
    if (ends > 1e-4) {
        std::ostringstream os;
        os << "background term does not decay (|F1| = " << ends << " at the boundary); try L >= " << 2.0 * grid.L;
        throw Error(ErrorKind::truncation, os.str());
    }
    return out;
}

GridProfile background_term_split(double eps, const Potential& p, const ContinuumSolution& R0) {
    const Grid& grid = R0.profile.grid;
    check_resolution(eps, grid);
    if (eps == 0.0) return GridProfile{grid, std::vector<double>(grid.N, 0.0)};
    const PhysicalKernels k = kernel_physical(eps, grid);
    const Spectral sp(grid);
    std::vector<double> g(grid.N);
    for (std::size_t j = 0; j < grid.N; ++j) {
        const double step = grid.x(j) < 0.0 ? 1.0 : 0.0;
        g[j] = p.dphi(R0.profile.values[j]) - step;
    }
    const auto bhat = sp.sample([&](double kk) { return symbol_a(0.0, kk) - symbol_a(eps, kk); });
    std::vector<double> out = sp.apply(bhat, g);
    for (std::size_t j = 0; j < grid.N; ++j) out[j] += k.B.values[j];
    return GridProfile{grid, std::move(out)};
}

GridProfile residual(double eps, const Potential& p, const ContinuumSolution& R0, const GridProfile& W) {
    check_background(R0, W.grid);
    const Operator op(eps, p, R0);
    return GridProfile{W.grid, op.residual(W.values)};
}

double tent_residual(double eps, const Potential& p, const ContinuumSolution& R0, const GridProfile& W) {
    check_background(R0, W.grid);
    const Grid& grid = W.grid;
    const Spectral sp(grid);
    const std::size_t n = grid.N;
    const std::vector<double> dW = sp.derivative(W.values);
    std::vector<double> r(n), dr(n), force_slope(n);
    for (std::size_t j = 0; j < n; ++j) {
        r[j] = R0.profile.values[j] + W.values[j];
        dr[j] = R0.derivative.values[j] + dW[j];
        force_slope[j] = p.ddphi(r[j]) * dr[j];
    }
    const auto lam = sp.sample([&](double k) { return tent_symbol(eps, k); });
    const auto defect = sp.sample([&](double k) { return tent_defect_symbol(eps, k); });
    const std::vector<double> smooth = sp.apply(lam, dr);
    // Lambda * Phi'(R) = Phi'(R) - (1 - Lambda) * Phi'(R), the last term from (Phi'(R))'
    const std::vector<double> corr = sp.apply(defect, force_slope);
    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        res = std::max(res, std::abs(smooth[j] + r[j] - p.dphi(r[j]) + corr[j]));
    return res;
}

double FrontSolution::evaluate(double x) const {
    const Grid& g = grid();
    double w = 0.0;
    if (x >= -g.L && x <= g.L) w = Spectral(g).interpolate(W.values, x);
    return background.evaluate(x) + w;
}

double FrontSolution::evaluate_S(double x) const {
    const Grid& g = grid();
    const double r0 = background.evaluate(x);
    const double dr0 = background.potential.dphi(r0) - r0;
    double dw = 0.0;
    if (x >= -g.L && x <= g.L) {
        std::vector<double> neg_dw(g.N);
        for (std::size_t j = 0; j < g.N; ++j) neg_dw[j] = S.values[j] + background.derivative.values[j];
        dw = -Spectral(g).interpolate(neg_dw, x);
    }
    return -(dr0 + dw);
}

FrontSolution solve_front(double eps, const Potential& p, const ContinuumSolution& R0,
                          const std::optional<GridProfile>& init, const FrontOptions& opt) {
    const Grid& grid = R0.profile.grid;
    check_resolution(eps, grid);
    if (init) check_background(R0, init->grid);
    const std::size_t n = grid.N;
    const double h = grid.h();

    FrontSolution sol;
    sol.epsilon = eps;
    sol.background = R0;
    sol.phase_x = opt.phase_x;
    if (eps > opt.eps0) {
        std::ostringstream os;
        os << "eps=" << eps << " exceeds eps0=" << opt.eps0 << "; outside the proven regime";
        sol.warning = os.str();
    }

    const Operator op(eps, p, R0);
    const Spectral& sp = op.sp;

    // bordering column: approximate left null vector, concentrated at the periodic wrap
    const double rate_plus = std::max(1.0 - R0.p_plus, 0.1);
    const double rate_minus = std::max(R0.p_minus - 1.0, 0.1);
    std::vector<double> psi(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        psi[j] = x >= 0.0 ? std::exp(-rate_plus * (grid.L - x)) : std::exp(-rate_minus * (x + grid.L));
    }
    double psi_sq = 0.0;
    for (double v : psi) psi_sq += v * v;

    if (!(opt.phase_x > -grid.L && opt.phase_x < grid.L)) throw Error(ErrorKind::configuration, "phase point outside the grid");
    const std::vector<double> ell = sp.interpolation_weights(opt.phase_x);
    const double r0_at_phase = R0.evaluate(opt.phase_x);
    std::size_t anchor = static_cast<std::size_t>(std::lround((opt.phase_x + grid.L) / h));
    anchor = std::min(anchor, n - 1);

    auto dot_ell = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ell[j] * v[j];
        return s;
    };

    std::vector<double> W = init ? init->values : std::vector<double>(n, 0.0);
    double sigma = 0.0;

    auto merit_of = [&](const std::vector<double>& w, double sg, std::vector<double>& F, double& phase) {
        F = op.residual(w);
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(F[j] + sg * psi[j]));
        phase = r0_at_phase + dot_ell(w) - 0.5;
        return std::max(m, std::abs(phase));
    };

    std::vector<double> F;
    double phase = 0.0;
    double merit = merit_of(W, sigma, F, phase);
    int increases = 0;
    int it = 0;
    bool converged = merit <= opt.tol_residual;

    std::vector<double> P(n), Sref(n), q(n);
    while (!converged) {
        if (it >= opt.max_newton) {
            std::ostringstream os;
            os << "Newton did not converge in " << opt.max_newton << " steps at eps=" << eps
               << " (residual " << merit << "); use continuation in eps";
            throw Error(ErrorKind::divergence, os.str());
        }
        ++it;
        const std::vector<double> r = op.total(W);
        const std::vector<double> dW = sp.derivative(W);
        for (std::size_t j = 0; j < n; ++j) {
            P[j] = p.ddphi(r[j]);
            q[j] = 1.0 - P[j];
            Sref[j] = -(R0.derivative.values[j] + dW[j]);
        }
        const double ell_S = dot_ell(Sref);

        const LinearMap A = [&](const std::vector<double>& in, std::vector<double>& out) {
            std::vector<double> pv(n);
            for (std::size_t j = 0; j < n; ++j) pv[j] = P[j] * in[j];
            const std::vector<double> conv = sp.apply(op.ahat, pv);
            out.resize(n + 1);
            for (std::size_t j = 0; j < n; ++j) out[j] = in[j] - conv[j] + in[n] * psi[j];
            out[n] = 0.0;
            for (std::size_t j = 0; j < n; ++j) out[n] += ell[j] * in[j];
        };
        // continuum linearization: V = g + Y with Y' + (1 - P) Y = P g, Y(anchor) = 0
        const LinearMap M = [&](const std::vector<double>& in, std::vector<double>& out) {
            double sg = 0.0;
            for (std::size_t j = 0; j < n; ++j) sg += psi[j] * in[j];
            sg /= psi_sq;
            std::vector<double> g(n), f(n), Y(n, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                g[j] = in[j] - sg * psi[j];
                f[j] = P[j] * g[j];
            }
            for (std::size_t j = anchor; j + 1 < n; ++j) {
                const double qb = 0.5 * (q[j] + q[j + 1]);
                Y[j + 1] = std::exp(-qb * h) * (Y[j] + 0.5 * h * f[j]) + 0.5 * h * f[j + 1];
            }
            for (std::size_t j = anchor; j > 0; --j) {
                const double qb = 0.5 * (q[j] + q[j - 1]);
                Y[j - 1] = std::exp(qb * h) * (Y[j] - 0.5 * h * f[j]) - 0.5 * h * f[j - 1];
            }
            out.resize(n + 1);
            for (std::size_t j = 0; j < n; ++j) out[j] = g[j] + Y[j];
            double lv = 0.0;
            for (std::size_t j = 0; j < n; ++j) lv += ell[j] * out[j];
            const double c = (in[n] - lv) / ell_S;
            for (std::size_t j = 0; j < n; ++j) out[j] += c * Sref[j];
            out[n] = sg;
        };

        std::vector<double> rhs(n + 1), x(n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = -(F[j] + sigma * psi[j]);
        rhs[n] = -phase;
        const GmresResult gr = gmres(A, M, rhs, x, opt.krylov_tol, opt.krylov_restart, opt.krylov_max_iter);
        sol.krylov_iterations += gr.iterations;
        if (!gr.converged && gr.relative_residual > 1e-4) {
            std::ostringstream os;
            os << "GMRES stagnated at eps=" << eps << ": relative residual " << gr.relative_residual << " after "
               << gr.iterations << " iterations (Newton step " << it << ", phase row weight " << ell_S << ")";
            throw Error(ErrorKind::stagnation, os.str());
        }
        std::vector<double> V(x.begin(), x.begin() + static_cast<long>(n));
        const double dsigma = x[n];

        double lambda = 1.0;
        std::vector<double> Wt(n), Ft;
        double phase_t = 0.0, merit_t = 0.0;
        for (int k = 0; k <= opt.max_halvings; ++k) {
            for (std::size_t j = 0; j < n; ++j) Wt[j] = W[j] + lambda * V[j];
            merit_t = merit_of(Wt, sigma + lambda * dsigma, Ft, phase_t);
            if (merit_t < merit || k == opt.max_halvings) break;
            lambda *= 0.5;
        }
        const double step = lambda * sup_norm(V);
        increases = merit_t > merit ? increases + 1 : 0;
        W = Wt;
        sigma += lambda * dsigma;
        F = std::move(Ft);
        phase = phase_t;
        merit = merit_t;
        if (increases >= 5) {
            std::ostringstream os;
            os << "Newton residual grew over 5 successive steps at eps=" << eps << " (residual " << merit
               << "); use continuation in eps";
            throw Error(ErrorKind::divergence, os.str());
        }
        if (merit <= opt.tol_residual || step <= opt.tol_step) converged = true;
    }

    sol.iterations = it;
    sol.phase_multiplier = sigma;
    sol.residual_fp = sup_norm(F);
    sol.W = GridProfile{grid, W};
    sol.R = GridProfile{grid, op.total(W)};
    const std::vector<double> dW = sp.derivative(W);
    std::vector<double> S(n);
    double w2 = 0.0, dw2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        S[j] = -(R0.derivative.values[j] + dW[j]);
        w2 += W[j] * W[j];
        dw2 += dW[j] * dW[j];
    }
    sol.S = GridProfile{grid, std::move(S)};
    sol.h1_dist_to_R0 = std::sqrt(h * (w2 + dw2));
    sol.residual_tent = tent_residual(eps, p, R0, sol.W);
    return sol;
}

std::vector<FrontSolution> continuation_sweep(const Potential& p, const std::vector<double>& eps_list,
                                              const std::optional<Grid>& grid, const FrontOptions& options) {
    if (eps_list.empty()) throw Error(ErrorKind::configuration, "sweep needs at least one eps");
    if (!std::is_sorted(eps_list.begin(), eps_list.end()))
        throw Error(ErrorKind::configuration, "sweep eps list must be sorted ascending");
    const Grid g = grid ? *grid : auto_grid(eps_list, p);
    const ContinuumSolution R0 = solve_R0(p, g);
    std::vector<FrontSolution> out;
    std::optional<GridProfile> warm;
    for (double eps : eps_list) {
        try {
            out.push_back(solve_front(eps, p, R0, warm, options));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "sweep failed at eps=" << eps << ": " << e.what();
            throw Error(e.kind(), os.str());
        }
        warm = out.back().W;
    }
    return out;
}

double derivative_consistency(const FrontSolution& sol, const Potential& p) {
    const Grid& g = sol.grid();
    const Spectral sp(g);
    const auto ahat = sp.sample([&](double k) { return symbol_a(sol.epsilon, k); });
    std::vector<double> ps(g.N);
    for (std::size_t j = 0; j < g.N; ++j) ps[j] = p.ddphi(sol.R.values[j]) * sol.S.values[j];
    const std::vector<double> conv = sp.apply(ahat, ps);
    double res = 0.0;
    for (std::size_t j = 0; j < g.N; ++j) res = std::max(res, std::abs(sol.S.values[j] - conv[j]));
    return res;
}

}  // namespace fput
