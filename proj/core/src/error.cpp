#include "swanson/error.hpp"

namespace swanson {

const char* to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::domain_error: return "DomainError";
    case Errc::mode_error: return "ModeError";
    case Errc::pole: return "PoleConfiguration";
    case Errc::no_positive_root: return "NoPositiveRoot";
    case Errc::infeasible_4x: return "Infeasible4X";
    case Errc::branch_violation: return "BranchViolation";
    case Errc::non_convergent: return "NonConvergent";
    case Errc::jet_order_exceeded: return "JetOrderExceeded";
    case Errc::singular_integrand: return "SingularIntegrand";
    case Errc::config: return "ConfigError";
    }
    return "Unknown";
}

} // namespace swanson
