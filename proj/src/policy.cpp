#include "tirl/policy.hpp"

#include <algorithm>
#include <sstream>

namespace tirl {

std::string_view to_string(PolicyKind kind) {
    return kind == PolicyKind::stationary ? "stationary" : "time_indexed";
}

Policy Policy::stationary(std::size_t num_states, std::size_t num_actions) {
    Policy p = time_indexed(num_states, num_actions, 1);
    p.kind_ = PolicyKind::stationary;
    return p;
}

Policy Policy::time_indexed(std::size_t num_states, std::size_t num_actions, std::size_t num_times) {
    if (num_times == 0) throw Error(ErrorCode::invalid_policy, "a time-indexed policy needs at least one time");
    Policy p;
    p.kind_ = PolicyKind::time_indexed;
    p.num_states_ = num_states;
    p.num_actions_ = num_actions;
    p.num_times_ = num_times;
    p.probs_.assign(num_states * num_actions * num_times, 0.0);
    return p;
}

Policy Policy::uniform(const Mdp& mdp) {
    Policy p = stationary(mdp.num_states(), mdp.num_actions());
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        const auto av = mdp.available(s);
        for (ActionId a : av) p.set(s, 0, a, 1.0 / static_cast<double>(av.size()));
    }
    return p;
}

Policy Policy::deterministic(const Mdp& mdp, const std::vector<ActionId>& choice) {
    if (choice.size() != mdp.num_states()) throw Error(ErrorCode::invalid_policy, "one action per state expected");
    Policy p = stationary(mdp.num_states(), mdp.num_actions());
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        if (!mdp.is_available(s, choice[s]))
            throw Error(ErrorCode::invalid_policy, "action not available at state '" + mdp.state_name(s) + "'");
        p.set(s, 0, choice[s], 1.0);
    }
    return p;
}

Policy Policy::deterministic(const Mdp& mdp, const std::vector<std::vector<ActionId>>& choice) {
    if (choice.empty()) throw Error(ErrorCode::invalid_policy, "a time-indexed policy needs at least one time");
    Policy p = time_indexed(mdp.num_states(), mdp.num_actions(), choice.size());
    for (std::size_t t = 0; t < choice.size(); ++t) {
        if (choice[t].size() != mdp.num_states()) throw Error(ErrorCode::invalid_policy, "one action per state expected");
        for (StateId s = 0; s < mdp.num_states(); ++s) {
            if (!mdp.is_available(s, choice[t][s]))
                throw Error(ErrorCode::invalid_policy, "action not available at state '" + mdp.state_name(s) + "'");
            p.set(s, t, choice[t][s], 1.0);
        }
    }
    return p;
}

void Policy::check(const Mdp& mdp) const {
    if (num_states_ != mdp.num_states() || num_actions_ != mdp.num_actions())
        throw Error(ErrorCode::invalid_policy, "policy shape does not match the environment");
    for (std::size_t t = 0; t < num_times_; ++t)
        for (StateId s = 0; s < num_states_; ++s) {
            double sum = 0.0;
            for (ActionId a = 0; a < num_actions_; ++a) {
                const double p = (*this)(s, t, a);
                if (!(p >= 0.0 && p <= 1.0 + kProbabilityTolerance))
                    throw Error(ErrorCode::invalid_policy, "probability outside [0, 1] at '" + mdp.state_name(s) + "'");
                if (p > 0.0 && !mdp.is_available(s, a))
                    throw Error(ErrorCode::invalid_policy, "mass on unavailable action '" + mdp.action_name(a) +
                                                               "' at '" + mdp.state_name(s) + "'");
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbabilityTolerance) {
                std::ostringstream msg;
                msg << "distribution at '" << mdp.state_name(s) << "', time " << t << " sums to " << sum;
                throw Error(ErrorCode::invalid_policy, msg.str());
            }
        }
}

Policy Policy::as_time_indexed(std::size_t num_times) const {
    Policy p = time_indexed(num_states_, num_actions_, num_times);
    for (std::size_t t = 0; t < num_times; ++t)
        for (StateId s = 0; s < num_states_; ++s)
            for (ActionId a = 0; a < num_actions_; ++a) p.set(s, t, a, (*this)(s, t, a));
    return p;
}

std::vector<ActionId> near_argmax(const Mdp& mdp, StateId s, std::span<const double> q, double tie_eps) {
    double best = -std::numeric_limits<double>::infinity();
    for (ActionId a : mdp.available(s)) best = std::max(best, q[a]);
    std::vector<ActionId> out;
    for (ActionId a : mdp.available(s))
        if (q[a] >= best - tie_eps) out.push_back(a);
    return out;
}

}  // namespace tirl
