#pragma once

#include <stdexcept>
#include <string>

namespace fput {

enum class ErrorKind {
    domain,             // non-finite or out-of-range argument
    validation,         // potential fails monotonicity/convexity hypotheses
    configuration,      // inconsistent sizes or missing config fields
    domain_too_small,   // truncated grid cannot hold the asymptotic states
    resolution,         // grid does not resolve the kernel or the tails
    truncation,         // background term does not decay at the domain ends
    pole_proximity,     // symbol evaluated on top of a pole
    pole_search,        // Newton iteration for the pole failed
    out_of_ball,        // converged pole lies outside |z| < 0.9 pi
    divergence,         // Newton iteration for the front diverged
    stagnation,         // Krylov solver stalled
    blow_up,            // lattice integration produced non-finite values
    insufficient_data,  // too few samples for a fit
};

const char* to_string(ErrorKind kind);

/// Numerical or configuration failure. `kind()` lets callers map failures
/// onto exit codes without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fput
