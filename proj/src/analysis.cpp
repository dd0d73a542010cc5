#include "fput/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fput/error.hpp"

namespace fput {

namespace {

struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

}  // namespace

DecayReport fit_decay_rates(const GridProfile& S, double mu_minus, double mu_plus) {
    const Grid& g = S.grid;
    const auto& s = S.values;
    const auto peak_it = std::max_element(s.begin(), s.end());
    const double smax = *peak_it;
    const auto peak = static_cast<std::size_t>(peak_it - s.begin());
    const double lo = 1e-10 * smax, hi = 1e-3 * smax;

    DecayReport rep;
    rep.mu_pred_minus = mu_minus;
    rep.mu_pred_plus = mu_plus;
    for (int side : {-1, +1}) {
        std::vector<double> xs, ys;
        for (std::size_t j = 0; j < g.N; ++j) {
            const double x = g.x(j);
            const bool on_side = side < 0 ? j < peak : j > peak;
            if (on_side && std::abs(x) <= g.L - 2.0 && s[j] > lo && s[j] < hi) {
                xs.push_back(x);
                ys.push_back(std::log(s[j]));
            }
        }
        if (xs.size() < 8) {
            std::ostringstream os;
            os << (side < 0 ? "left" : "right") << " tail window is empty (" << xs.size()
               << " nodes); the tail is under-resolved, enlarge L";
            throw Error(ErrorKind::resolution, os.str());
        }
        const LineFit f = fit_line(xs, ys);
        const double mu = side < 0 ? mu_minus : mu_plus;
        double bmin = INFINITY, bmax = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double b = std::exp(ys[i] - (side < 0 ? mu : -mu) * xs[i]);
            bmin = std::min(bmin, b);
            bmax = std::max(bmax, b);
        }
        const auto window = std::make_pair(xs.front(), xs.back());
        if (side < 0) {
            rep.lambda_fit_minus = f.slope;
            rep.window_minus = window;
            rep.samples_minus = xs.size();
            rep.r2_minus = f.r2;
            rep.rel_err_minus = std::abs(f.slope - mu) / mu;
            rep.bound_ratio_minus = bmax / bmin;
        } else {
            rep.lambda_fit_plus = -f.slope;
            rep.window_plus = window;
            rep.samples_plus = xs.size();
            rep.r2_plus = f.r2;
            rep.rel_err_plus = std::abs(-f.slope - mu) / mu;
            rep.bound_ratio_plus = bmax / bmin;
        }
    }
    rep.fit_r2 = std::min(rep.r2_minus, rep.r2_plus);
    return rep;
}

DecayReport fit_decay_rates(const FrontSolution& sol, const PoleData& minus, const PoleData& plus) {
    return fit_decay_rates(sol.S, minus.mu_rate, plus.mu_rate);
}

MonotonicityResult monotonicity_check(const GridProfile& S) {
    MonotonicityResult r;
    r.min_S = S.values.empty() ? 0.0 : *std::min_element(S.values.begin(), S.values.end());
    r.monotone = r.min_S >= -1e-8;
    return r;
}

double h1_distance(const GridProfile& a, const GridProfile& b) {
    if (!(a.grid == b.grid) || a.size() != b.size())
        throw Error(ErrorKind::configuration, "h1_distance needs profiles on the same grid");
    std::vector<double> d(a.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = a.values[j] - b.values[j];
    const std::vector<double> dd = Spectral(a.grid).derivative(d);
    double acc = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) acc += d[j] * d[j] + dd[j] * dd[j];
    return std::sqrt(acc * a.grid.h());
}

double normalization_check(const GridProfile& S) {
    return std::abs(integrate(S.grid, S.values) - 1.0);
}

ReportItem check_at_most(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value <= threshold};
}

ReportItem check_at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value >= threshold};
}

std::vector<ReportItem> front_report(const FrontSolution& sol, const Potential& p) {
    std::vector<ReportItem> out;
    const double n = static_cast<double>(sol.grid().N);
    out.push_back(check_at_most("residual_fp", sol.residual_fp, 1e-9 * n));
    out.push_back(check_at_most("residual_tent", sol.residual_tent, 1e-7));
    out.push_back(check_at_most("phase_error", std::abs(sol.evaluate(sol.phase_x) - 0.5), 1e-9));
    out.push_back(check_at_least("min_S", monotonicity_check(sol.S).min_S, -1e-8));
    out.push_back(check_at_most("normalization_error", normalization_check(sol.S), 1e-6));
    out.push_back(check_at_most("derivative_consistency", derivative_consistency(sol, p), 1e-7));
    return out;
}

}  // namespace fput
