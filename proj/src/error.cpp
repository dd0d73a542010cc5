#include "fput/error.hpp"

namespace fput {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::domain: return "domain error";
        case ErrorKind::validation: return "validation error";
        case ErrorKind::configuration: return "configuration error";
        case ErrorKind::domain_too_small: return "domain too small";
        case ErrorKind::resolution: return "resolution error";
        case ErrorKind::truncation: return "truncation error";
        case ErrorKind::pole_proximity: return "pole proximity";
        case ErrorKind::pole_search: return "pole search failure";
        case ErrorKind::out_of_ball: return "pole outside ball";
        case ErrorKind::divergence: return "newton divergence";
        case ErrorKind::stagnation: return "krylov stagnation";
        case ErrorKind::blow_up: return "lattice blow-up";
        case ErrorKind::insufficient_data: return "insufficient data";
    }
    return "error";
}

}  // namespace fput
