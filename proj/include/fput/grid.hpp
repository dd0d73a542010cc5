#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fput {

using cplx = std::complex<double>;

/// Uniform periodic grid x_j = -L + j h, h = 2L/N, on [-L, L).
struct Grid {
    double L = 0.0;
    std::size_t N = 0;

    double h() const { return 2.0 * L / static_cast<double>(N); }
    double x(std::size_t j) const { return -L + static_cast<double>(j) * h(); }
    std::size_t center() const { return N / 2; }  // index of x = 0
    /// Largest resolved angular wavenumber pi/h.
    double angular_nyquist() const { return 3.14159265358979323846 / h(); }
    std::vector<double> nodes() const;

    /// Throws ErrorKind::configuration unless N >= 256 is a power of two and L > 0.
    void check() const;
    bool operator==(const Grid&) const = default;
};

/// Smallest power of two N >= 256 with 2L/N <= h_max.
Grid make_grid(double L, double h_max);

struct GridProfile {
    Grid grid;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }
};

/// FFT-backed spectral operations on one Grid. Fourier convention
/// f^(k) = int exp(-2 pi i k x) f(x) dx, sampled at k_m = m / (2L).
/// Inputs are expected to decay at both ends; they are treated as periodic.
class Spectral {
public:
    explicit Spectral(Grid grid);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;
    Spectral(Spectral&&) noexcept;
    Spectral& operator=(Spectral&&) noexcept;

    const Grid& grid() const { return grid_; }
    std::size_t modes() const { return grid_.N / 2 + 1; }
    double wavenumber(std::size_t m) const { return static_cast<double>(m) / (2.0 * grid_.L); }

    /// Samples a symbol at k_m, m = 0..N/2. The Nyquist entry keeps only its
    /// real part so that real inputs map to real outputs.
    std::vector<cplx> sample(const std::function<cplx(double)>& symbol) const;

    /// Unnormalized DFT coefficients (N/2+1 of them).
    std::vector<cplx> forward(std::span<const double> values) const;
    /// Inverse of forward(), including the 1/N factor.
    std::vector<double> inverse(std::span<const cplx> coeffs) const;

    /// Fourier multiplier: inverse(symbol * forward(values)).
    std::vector<double> apply(std::span<const cplx> symbol, std::span<const double> values) const;
    /// Spectral derivative (Nyquist mode dropped).
    std::vector<double> derivative(std::span<const double> values) const;
    /// Band-limited shift: returns f(x + delta) on the grid.
    std::vector<double> shift(std::span<const double> values, double delta) const;

    /// Weights w_j with sum_j w_j f_j = band-limited interpolant of f at x.
    std::vector<double> interpolation_weights(double x) const;
    double interpolate(std::span<const double> values, double x) const;

private:
    struct Plans;
    Grid grid_;
    std::unique_ptr<Plans> plans_;
};

/// Trapezoid sum h * sum_j f_j on the periodic grid.
double integrate(const Grid& grid, std::span<const double> values);
double sup_norm(std::span<const double> values);

}  // namespace fput
