#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradrec {

enum class ErrorCode {
    invalid_interval,
    invalid_mesh,
    too_coarse,
    too_large,
    invalid_delta,
    invalid_rho,
    index_out_of_range,
    out_of_domain,
    unsupported_order,
    singular_system,
    no_convergence,
    no_exact_derivative,
    parse_error,
    node_mismatch,
    io_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_interval: return "invalid-interval";
        case ErrorCode::invalid_mesh: return "invalid-mesh";
        case ErrorCode::too_coarse: return "too-coarse";
        case ErrorCode::too_large: return "too-large";
        case ErrorCode::invalid_delta: return "invalid-delta";
        case ErrorCode::invalid_rho: return "invalid-rho";
        case ErrorCode::index_out_of_range: return "index-out-of-range";
        case ErrorCode::out_of_domain: return "out-of-domain";
        case ErrorCode::unsupported_order: return "unsupported-order";
        case ErrorCode::singular_system: return "singular-system";
        case ErrorCode::no_convergence: return "no-convergence";
        case ErrorCode::no_exact_derivative: return "no-exact-derivative";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::node_mismatch: return "node-mismatch";
        case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

/// Exception type thrown by every gradrec operation. The code is stable and
/// machine readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gradrec
