#include "levyx/error.hpp"

namespace levyx {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config: return "config";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Budget: return "budget";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Truncation: return "truncation";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Numeric: return "numeric";
    }
    return "unknown";
}

}  // namespace levyx
