#pragma once

#include <stdexcept>
#include <string>

namespace swanson {

enum class Errc {
    invalid_parameter,
    domain_error,
    mode_error,
    pole,
    no_positive_root,
    infeasible_4x,
    branch_violation,
    non_convergent,
    jet_order_exceeded,
    singular_integrand,
    config,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace swanson
