#include "fput/krylov.hpp"

#include <algorithm>

namespace fput {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres(const LinearMap& A, const LinearMap& precond, const std::vector<double>& b,
                  std::vector<double>& x, double rel_tol, int restart, int max_iter) {
    const std::size_t n = b.size();
    GmresResult res;
    const double bnorm = norm(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        res.converged = true;
        res.relative_residual = 0.0;
        return res;
    }
    x.resize(n, 0.0);
    const int m = std::max(1, restart);
    std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> Z(m, std::vector<double>(n));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1);
    std::vector<double> w(n), tmp(n);

    while (res.iterations < max_iter) {
        A(x, tmp);
        for (std::size_t i = 0; i < n; ++i) V[0][i] = b[i] - tmp[i];
        double beta = norm(V[0]);
        res.relative_residual = beta / bnorm;
        if (res.relative_residual <= rel_tol) {
            res.converged = true;
            return res;
        }
        for (double& v : V[0]) v /= beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        int j = 0;
        for (; j < m && res.iterations < max_iter; ++j) {
            ++res.iterations;
            precond(V[j], Z[j]);
            A(Z[j], w);
            // modified Gram-Schmidt, repeated once for stability
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= j; ++i) {
                    const double hij = dot(w, V[i]);
                    H[i][j] += hij;
                    for (std::size_t k = 0; k < n; ++k) w[k] -= hij * V[i][k];
                }
            }
            const double hn = norm(w);
            H[j + 1][j] = hn;
            if (hn > 0.0)
                for (std::size_t k = 0; k < n; ++k) V[j + 1][k] = w[k] / hn;
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
                H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
                H[i][j] = t;
            }
            const double r = std::hypot(H[j][j], H[j + 1][j]);
            cs[j] = r == 0.0 ? 1.0 : H[j][j] / r;
            sn[j] = r == 0.0 ? 0.0 : H[j + 1][j] / r;
            H[j][j] = r;
            H[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            res.relative_residual = std::abs(g[j + 1]) / bnorm;
            if (res.relative_residual <= rel_tol || hn == 0.0) {
                ++j;
                break;
            }
        }
        // back substitution and update x += Z y
        std::vector<double> y(j);
        for (int i = j - 1; i >= 0; --i) {
            double s = g[i];
            for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
            y[i] = s / H[i][i];
        }
        for (int i = 0; i < j; ++i)
            for (std::size_t k = 0; k < n; ++k) x[k] += y[i] * Z[i][k];
        for (auto& row : H) std::fill(row.begin(), row.end(), 0.0);
        if (res.relative_residual <= rel_tol) {
            // confirm with the true residual
            A(x, tmp);
            double rn = 0.0;
            for (std::size_t i = 0; i < n; ++i) rn += (b[i] - tmp[i]) * (b[i] - tmp[i]);
            res.relative_residual = std::sqrt(rn) / bnorm;
            if (res.relative_residual <= 10.0 * rel_tol) {
                res.converged = true;
                return res;
            }
        }
    }
    return res;
}

}  // namespace fput
