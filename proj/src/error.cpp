#include "tirl/error.hpp"

namespace tirl {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::malformed_distribution: return "MalformedDistribution";
        case ErrorCode::unknown_state_id: return "UnknownStateId";
        case ErrorCode::not_bounded_episodic: return "NotBoundedEpisodic";
        case ErrorCode::not_episodic: return "NotEpisodic";
        case ErrorCode::parameter_out_of_range: return "ParameterOutOfRange";
        case ErrorCode::budget_exceeded: return "BudgetExceeded";
        case ErrorCode::ordering_violated: return "OrderingViolated";
        case ErrorCode::incomparable_kinds: return "IncomparableKinds";
        case ErrorCode::tolerance_too_tight: return "ToleranceTooTight";
        case ErrorCode::degenerate_discount: return "DegenerateDiscount";
        case ErrorCode::no_flip_possible: return "NoFlipPossible";
        case ErrorCode::trivial_transition_function: return "TrivialTransitionFunction";
        case ErrorCode::too_small: return "TooSmall";
        case ErrorCode::space_too_large: return "SpaceTooLarge";
        case ErrorCode::invalid_policy: return "InvalidPolicy";
        case ErrorCode::parse_error: return "ParseError";
    }
    return "Unknown";
}

}  // namespace tirl
