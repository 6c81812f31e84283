#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tirl {

enum class ErrorCode {
    malformed_distribution,
    unknown_state_id,
    not_bounded_episodic,
    not_episodic,
    parameter_out_of_range,
    budget_exceeded,
    ordering_violated,
    incomparable_kinds,
    tolerance_too_tight,
    degenerate_discount,
    no_flip_possible,
    trivial_transition_function,
    too_small,
    space_too_large,
    invalid_policy,
    parse_error,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` names
/// the failure class so callers (and the CLI exit-code contract) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tirl
