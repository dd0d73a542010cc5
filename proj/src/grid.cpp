#include "fput/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "fput/error.hpp"

namespace fput {

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(N);
    for (std::size_t j = 0; j < N; ++j) xs[j] = x(j);
    return xs;
}

void Grid::check() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::configuration, "grid half-width L must be positive");
    if (N < 256 || (N & (N - 1)) != 0)
        throw Error(ErrorKind::configuration, "grid size N must be a power of two >= 256");
}

Grid make_grid(double L, double h_max) {
    if (!(L > 0.0) || !(h_max > 0.0)) throw Error(ErrorKind::configuration, "make_grid needs L > 0, h_max > 0");
    std::size_t N = 256;
    while (2.0 * L / static_cast<double>(N) > h_max) N *= 2;
    return Grid{L, N};
}

struct Spectral::Plans {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    explicit Plans(std::size_t n) {
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        const int in = static_cast<int>(n);
        r2c = fftw_plan_dft_r2c_1d(in, real, spec, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(in, spec, real, FFTW_ESTIMATE);
    }
    ~Plans() {
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(real);
        fftw_free(spec);
    }
};

Spectral::Spectral(Grid grid) : grid_(grid) {
    grid_.check();
    plans_ = std::make_unique<Plans>(grid_.N);
}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

std::vector<cplx> Spectral::sample(const std::function<cplx(double)>& symbol) const {
    std::vector<cplx> out(modes());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = symbol(wavenumber(m));
    out.back() = cplx(out.back().real(), 0.0);
    return out;
}

std::vector<cplx> Spectral::forward(std::span<const double> values) const {
    const std::size_t n = grid_.N;
    if (values.size() != n) throw Error(ErrorKind::configuration, "profile size does not match grid");
    std::memcpy(plans_->real, values.data(), n * sizeof(double));
    fftw_execute(plans_->r2c);
    std::vector<cplx> out(modes());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = cplx(plans_->spec[m][0], plans_->spec[m][1]);
    return out;
}

std::vector<double> Spectral::inverse(std::span<const cplx> coeffs) const {
    const std::size_t n = grid_.N;
    if (coeffs.size() != modes()) throw Error(ErrorKind::configuration, "coefficient count does not match grid");
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        plans_->spec[m][0] = coeffs[m].real();
        plans_->spec[m][1] = coeffs[m].imag();
    }
    fftw_execute(plans_->c2r);
    std::vector<double> out(plans_->real, plans_->real + n);
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv;
    return out;
}

std::vector<double> Spectral::apply(std::span<const cplx> symbol, std::span<const double> values) const {
    std::vector<cplx> c = forward(values);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= symbol[m];
    return inverse(c);
}

std::vector<double> Spectral::derivative(std::span<const double> values) const {
    std::vector<cplx> c = forward(values);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= cplx(0.0, two_pi * wavenumber(m));
    c.back() = 0.0;
    return inverse(c);
}

std::vector<double> Spectral::shift(std::span<const double> values, double delta) const {
    const double two_pi = 2.0 * std::numbers::pi;
    const auto sym = sample([&](double k) { return std::polar(1.0, two_pi * k * delta); });
    return apply(sym, values);
}

std::vector<double> Spectral::interpolation_weights(double x) const {
    const std::size_t n = grid_.N;
    const double K = static_cast<double>(n / 2);
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = std::numbers::pi * (x - grid_.x(j)) / grid_.L;
        const double s = std::sin(0.5 * theta);
        if (std::abs(s) < 1e-14) {
            w[j] = 1.0;
        } else {
            w[j] = std::sin(K * theta) * std::cos(0.5 * theta) / s / static_cast<double>(n);
        }
    }
    return w;
}

double Spectral::interpolate(std::span<const double> values, double x) const {
    const std::vector<double> w = interpolation_weights(x);
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * values[j];
    return acc;
}

double integrate(const Grid& grid, std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc * grid.h();
}

double sup_norm(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace fput
