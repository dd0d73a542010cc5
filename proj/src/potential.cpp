#include "fput/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fput/error.hpp"

namespace fput {

namespace {

constexpr int kSampleCount = 2048;

void require_finite(double r) {
    if (!std::isfinite(r)) throw Error(ErrorKind::domain, "potential evaluated at non-finite r");
}

}  // namespace

Potential Potential::hertz(double alpha, double lo, double hi) {
    if (!(alpha > 1.0)) throw Error(ErrorKind::validation, "Hertz exponent must satisfy alpha > 1");
    if (!(hi > lo)) throw Error(ErrorKind::configuration, "potential interval must have hi > lo");
    Potential p;
    p.kind_ = PotentialKind::hertz;
    p.alpha_ = alpha;
    p.lo_ = lo;
    p.hi_ = hi;
    return p;
}

Potential Potential::polynomial(std::vector<double> force_coeffs, double lo, double hi) {
    if (force_coeffs.empty()) throw Error(ErrorKind::configuration, "polynomial potential needs coefficients");
    if (!(hi > lo)) throw Error(ErrorKind::configuration, "potential interval must have hi > lo");
    for (double c : force_coeffs)
        if (!std::isfinite(c)) throw Error(ErrorKind::configuration, "non-finite polynomial coefficient");
    Potential p;
    p.kind_ = PotentialKind::polynomial;
    p.coeffs_ = std::move(force_coeffs);
    p.lo_ = lo;
    p.hi_ = hi;
    return p;
}

PotentialValue Potential::eval_base(double s) const {
    if (kind_ == PotentialKind::hertz) {
        if (s <= 0.0) return {0.0, 0.0, 0.0};
        const double pow_am1 = std::pow(s, alpha_ - 1.0);
        const double pow_a = pow_am1 * s;
        return {pow_a * s / (alpha_ + 1.0), pow_a, alpha_ * pow_am1};
    }
    // Horner for Phi' = sum c_i s^i, Phi = sum c_i s^(i+1)/(i+1), Phi'' = sum i c_i s^(i-1)
    double phi = 0.0, dphi = 0.0, ddphi = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const double c = coeffs_[i];
        phi = phi * s + c / static_cast<double>(i + 1);
        dphi = dphi * s + c;
        if (i > 0) ddphi = ddphi * s + static_cast<double>(i) * c;
    }
    return {phi * s, dphi, ddphi};
}

PotentialValue Potential::eval_inside(double r) const {
    const PotentialValue b = eval_base(s0_ + s_scale_ * r);
    return {(b.phi - e0_) * e_scale_ - f_lin_ * r, b.dphi * s_scale_ * e_scale_ - f_lin_,
            b.ddphi * s_scale_ * s_scale_ * e_scale_};
}

PotentialValue Potential::eval(double r) const {
    require_finite(r);
    if (r >= lo_ && r <= hi_) return eval_inside(r);
    const double edge = r < lo_ ? lo_ : hi_;
    const PotentialValue v = eval_inside(edge);
    const double d = r - edge;
    return {v.phi + v.dphi * d + 0.5 * v.ddphi * d * d, v.dphi + v.ddphi * d, v.ddphi};
}

double Potential::max_ddphi() const {
    double m = std::max(ddphi(lo_), ddphi(hi_));
    for (int j = 1; j < 64; ++j) m = std::max(m, ddphi(lo_ + (hi_ - lo_) * j / 64.0));
    return m;
}

Potential Potential::with_interval(double lo, double hi) const {
    if (!(hi > lo)) throw Error(ErrorKind::configuration, "potential interval must have hi > lo");
    Potential p = *this;
    p.lo_ = lo;
    p.hi_ = hi;
    return p;
}

std::string Potential::describe() const {
    std::ostringstream os;
    if (kind_ == PotentialKind::hertz) {
        os << "hertz(alpha=" << alpha_ << ")";
    } else {
        os << "polynomial(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
        os << ")";
    }
    if (s0_ != 0.0 || s_scale_ != 1.0 || e_scale_ != 1.0 || f_lin_ != 0.0) os << " renormalized";
    return os.str();
}

double coefficient_A(const Potential& p, double r_minus, double r_plus) {
    const PotentialValue m = p.eval(r_minus);
    const PotentialValue q = p.eval(r_plus);
    const double jump_phi = q.phi - m.phi;
    const double jump_r = r_plus - r_minus;
    return jump_phi - jump_r * 0.5 * (m.dphi + q.dphi);
}

Renormalized renormalize(const Potential& raw, double r_minus, double r_plus) {
    if (!std::isfinite(r_minus) || !std::isfinite(r_plus))
        throw Error(ErrorKind::domain, "asymptotic states must be finite");
    if (!(r_minus > r_plus))
        throw Error(ErrorKind::validation, "renormalization requires r_minus > r_plus");

    const double width = r_minus - r_plus;
    double prev = raw.eval_inside(r_plus).ddphi;
    const double scale = std::max(std::abs(prev), std::abs(raw.eval_inside(r_minus).ddphi));
    for (int j = 1; j < kSampleCount; ++j) {
        const double dd = raw.eval_inside(r_plus + width * j / (kSampleCount - 1)).ddphi;
        if (!(dd > 0.0))
            throw Error(ErrorKind::validation, "Phi' is not increasing on [r_plus, r_minus]");
        if (dd < prev - 1e-14 * scale)
            throw Error(ErrorKind::validation, "Phi' is not convex on [r_plus, r_minus]");
        prev = dd;
    }

    const PotentialValue vp = raw.eval_inside(r_plus);
    const PotentialValue vm = raw.eval_inside(r_minus);
    const double force_jump = vm.dphi - vp.dphi;  // > 0 for increasing Phi'

    Potential p = raw;
    p.s0_ = raw.s0_ + raw.s_scale_ * r_plus;
    p.s_scale_ = raw.s_scale_ * width;
    p.e0_ = raw.eval_base(p.s0_).phi;
    const double energy = 1.0 / (width * force_jump);
    p.e_scale_ = raw.e_scale_ * energy;
    p.f_lin_ = raw.f_lin_ * width * energy + vp.dphi / force_jump;
    p.lo_ = 0.0;
    p.hi_ = 1.0;

    FrontConstants k{};
    k.r_minus = r_minus;
    k.r_plus = r_plus;
    const double c2 = (vp.dphi - vm.dphi) / (r_plus - r_minus);
    k.c = std::sqrt(c2);
    k.d = vp.dphi - c2 * r_plus;
    k.A = coefficient_A(raw, r_minus, r_plus);
    return {std::move(p), k};
}

double estimate_holder_exponent(const Potential& p, int k_min, int k_max) {
    std::vector<double> lx, ly;
    for (int k = k_min; k <= k_max; ++k) {
        const double h = std::ldexp(1.0, -k);
        const long n = 1L << k;
        double omega = 0.0;
        double prev = p.ddphi(0.0);
        for (long i = 1; i <= n; ++i) {
            const double cur = p.ddphi(static_cast<double>(i) * h);
            omega = std::max(omega, std::abs(cur - prev));
            prev = cur;
        }
        if (omega > 0.0) {
            lx.push_back(std::log(h));
            ly.push_back(std::log(omega));
        }
    }
    // constant Phi'' has no increments; treat as Lipschitz
    if (lx.size() < 2) return 1.0;
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::min(slope, 1.0);
}

ValidationReport validate(const Potential& p) {
    ValidationReport rep{};
    rep.dphi_at_0 = p.dphi(0.0);
    rep.dphi_at_1 = p.dphi(1.0);
    rep.normalized = std::abs(rep.dphi_at_0) <= 1e-12 && std::abs(rep.dphi_at_1 - 1.0) <= 1e-12;
    rep.monotone = true;
    rep.convex = true;
    double prev = p.ddphi(0.0);
    rep.min_ddphi = prev;
    for (int j = 1; j < kSampleCount; ++j) {
        const double dd = p.ddphi(static_cast<double>(j) / (kSampleCount - 1));
        rep.min_ddphi = std::min(rep.min_ddphi, dd);
        if (!(dd > 0.0)) rep.monotone = false;
        if (!(dd > prev)) rep.convex = false;
        prev = dd;
    }
    rep.holder_beta = estimate_holder_exponent(p);
    return rep;
}

}  // namespace fput
