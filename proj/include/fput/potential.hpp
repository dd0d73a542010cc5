#pragma once

#include <string>
#include <vector>

namespace fput {

enum class PotentialKind { hertz, polynomial };

struct PotentialValue {
    double phi;
    double dphi;
    double ddphi;
};

/// Interaction potential Phi of the chain.
///
/// The base law is either the generalized Hertz contact law
/// Phi(r) = r_+^(alpha+1)/(alpha+1) or a polynomial force Phi'(r) = sum c_i r^i.
/// An affine change of variables maps the base law onto the evaluation
/// variable; renormalize() uses it to build the unit-front potential
/// (Phi'(0) = 0, Phi'(1) = 1, Phi(0) = 0).
///
/// Outside [lo, hi] the potential is continued with constant Phi'' matched at
/// the nearest endpoint, so every finite argument is admissible.
class Potential {
public:
    static Potential hertz(double alpha, double lo = 0.0, double hi = 1.0);
    static Potential polynomial(std::vector<double> force_coeffs, double lo = 0.0,
                                double hi = 1.0);

    PotentialValue eval(double r) const;
    double phi(double r) const { return eval(r).phi; }
    double dphi(double r) const { return eval(r).dphi; }
    double ddphi(double r) const { return eval(r).ddphi; }

    PotentialKind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    /// Upper bound of Phi'' on [lo, hi] (Phi'' is monotone for the admissible
    /// family, so the endpoints suffice; interior samples guard the rest).
    double max_ddphi() const;

    /// Same base law, different extension interval.
    Potential with_interval(double lo, double hi) const;

    std::string describe() const;

private:
    friend struct Renormalized renormalize(const Potential&, double, double);

    PotentialValue eval_base(double s) const;
    PotentialValue eval_inside(double r) const;

    PotentialKind kind_ = PotentialKind::polynomial;
    double alpha_ = 0.0;
    std::vector<double> coeffs_;
    double lo_ = 0.0;
    double hi_ = 1.0;

    // evaluation variable r maps to base variable s = s0 + s_scale * r;
    // Phi(r) = (Phi_b(s) - e0) * e_scale - f_lin * r
    double s0_ = 0.0;
    double s_scale_ = 1.0;
    double e0_ = 0.0;
    double e_scale_ = 1.0;
    double f_lin_ = 0.0;
};

struct FrontConstants {
    double r_minus;  // state at x -> -infinity
    double r_plus;   // state at x -> +infinity
    double c;        // wave speed
    double d;        // integration constant d = Phi'(r_pm) - c^2 r_pm
    double A;        // signed chord/graph area
};

struct Renormalized {
    Potential potential;
    FrontConstants constants;
};

/// Maps (Phi, r_minus, r_plus) onto the unit-front setting. Throws
/// ErrorKind::validation when Phi' is not increasing and strictly convex on
/// [r_plus, r_minus].
Renormalized renormalize(const Potential& raw, double r_minus, double r_plus);

/// A = [[Phi]] - [[r]] (Phi'(r_minus) + Phi'(r_plus)) / 2 with
/// [[f]] = f(r_plus) - f(r_minus).
double coefficient_A(const Potential& p, double r_minus, double r_plus);

struct ValidationReport {
    double dphi_at_0;
    double dphi_at_1;
    bool normalized;        // both normalization residuals below 1e-12
    bool monotone;          // Phi'' > 0 on the sampled (0, 1]
    bool convex;            // Phi'' strictly increasing on the sampled [0, 1]
    double min_ddphi;
    double holder_beta;     // fitted from dyadic sup-increments of Phi''
    bool ok() const { return normalized && monotone && convex; }
};

ValidationReport validate(const Potential& p);

/// Log-log slope of the dyadic modulus of continuity of Phi'' on [0, 1].
double estimate_holder_exponent(const Potential& p, int k_min = 4, int k_max = 14);

}  // namespace fput
