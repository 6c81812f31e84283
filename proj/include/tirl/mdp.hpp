#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tirl/error.hpp"

namespace tirl {

using StateId = std::size_t;
using ActionId = std::size_t;

/// Tolerance on probability sums; distributions within it are renormalized.
inline constexpr double kProbabilityTolerance = 1e-12;

struct Outcome {
    StateId next;  ///< equals Mdp::terminal() for the sink
    double probability;
};

/// Finite episodic environment: states, actions, a terminal sink, transitions
/// and an initial distribution. Reward and discount are held separately so one
/// environment can be paired with many of each.
///
/// States and actions are dense indices. Successor index `num_states()` is the
/// terminal sink. Each state has a set of available actions; an unavailable
/// action behaves exactly like the state's default (first available) action.
class Mdp {
public:
    std::size_t num_states() const noexcept { return state_names_.size(); }
    std::size_t num_actions() const noexcept { return action_names_.size(); }
    StateId terminal() const noexcept { return num_states(); }
    bool is_terminal(StateId s) const noexcept { return s == terminal(); }

    const std::string& state_name(StateId s) const;
    const std::string& action_name(ActionId a) const { return action_names_.at(a); }
    const std::vector<std::string>& state_names() const noexcept { return state_names_; }
    const std::vector<std::string>& action_names() const noexcept { return action_names_; }

    /// Accepts "TERMINAL" for the sink. Throws unknown_state_id.
    StateId state_id(std::string_view name) const;
    ActionId action_id(std::string_view name) const;

    /// Positive-probability successors of (s, a), ascending by state id.
    std::span<const Outcome> outcomes(StateId s, ActionId a) const;
    double probability(StateId s, ActionId a, StateId next) const;

    std::span<const ActionId> available(StateId s) const { return available_.at(s); }
    bool is_available(StateId s, ActionId a) const;
    ActionId default_action(StateId s) const { return available_.at(s).front(); }
    /// The action whose transition row (s, a) uses: `a` itself when available.
    ActionId effective_action(StateId s, ActionId a) const {
        return is_available(s, a) ? a : default_action(s);
    }

    const std::vector<double>& initial() const noexcept { return initial_; }

private:
    friend class MdpBuilder;
    Mdp() = default;

    std::vector<std::string> state_names_;
    std::vector<std::string> action_names_;
    std::vector<std::vector<Outcome>> rows_;  // [s * A + a]
    std::vector<std::vector<ActionId>> available_;
    std::vector<double> initial_;
};

/// Collects transitions and the initial distribution, then validates them.
/// An action is available at a state iff at least one transition was given
/// for it there.
class MdpBuilder {
public:
    MdpBuilder(std::vector<std::string> state_names, std::vector<std::string> action_names);

    std::size_t num_states() const noexcept { return state_names_.size(); }
    StateId terminal() const noexcept { return num_states(); }

    MdpBuilder& transition(StateId s, ActionId a, StateId next, double probability);
    MdpBuilder& transition(std::string_view s, std::string_view a, std::string_view next,
                           double probability);
    MdpBuilder& initial(StateId s, double probability);
    MdpBuilder& initial(std::string_view s, double probability);

    /// Throws malformed_distribution or unknown_state_id.
    Mdp build() const;

private:
    StateId lookup_state(std::string_view name, bool allow_terminal) const;
    ActionId lookup_action(std::string_view name) const;

    std::vector<std::string> state_names_;
    std::vector<std::string> action_names_;
    std::vector<std::vector<double>> rows_;  // dense [s*A+a][next]
    std::vector<bool> touched_;
    std::vector<double> initial_;
};

/// R(s, a, s') for every triple; the successor may be terminal.
class Reward {
public:
    Reward() = default;
    explicit Reward(const Mdp& mdp);
    Reward(std::size_t num_states, std::size_t num_actions);

    double operator()(StateId s, ActionId a, StateId next) const { return values_[index(s, a, next)]; }
    double& at(StateId s, ActionId a, StateId next) { return values_[index(s, a, next)]; }
    void set(StateId s, ActionId a, StateId next, double value) { values_[index(s, a, next)] = value; }

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }
    const std::vector<double>& raw() const noexcept { return values_; }

    /// Largest |R| over triples with positive probability under `mdp`.
    double max_abs(const Mdp& mdp) const;

    friend bool operator==(const Reward&, const Reward&) = default;

private:
    std::size_t index(StateId s, ActionId a, StateId next) const {
        return (s * num_actions_ + a) * (num_states_ + 1) + next;
    }

    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    std::vector<double> values_;
};

enum class Episodicity { bounded, unbounded, non_episodic };

std::string_view to_string(Episodicity e);

struct EpisodicityReport {
    Episodicity kind = Episodicity::non_episodic;
    std::optional<std::size_t> horizon;          ///< bounded only
    std::vector<StateId> cycle;                  ///< a positive-probability cycle, when not bounded
    std::vector<StateId> end_component;          ///< terminal-avoiding closed set, non-episodic only
};

/// Longest-path layering: a state is in layer i when the longest possible
/// path from it to the terminal has i steps. Layers are 1-based.
struct LayerPartition {
    std::vector<std::vector<StateId>> layers;  ///< layers[i-1] holds S_i
    std::vector<std::size_t> layer_of;         ///< 1-based layer index per state

    std::size_t horizon() const noexcept { return layers.size(); }
};

struct ControllableStates {
    std::vector<StateId> controllable;
    /// Controllable states not reachable (in one or more steps) from any other
    /// controllable state.
    std::vector<StateId> roots;
};

EpisodicityReport validate(const Mdp& mdp);
LayerPartition layer_partition(const Mdp& mdp);
ControllableStates controllable_states(const Mdp& mdp);

/// Minimum over all policies of the probability of having entered the terminal
/// within `steps` steps, from the worst start state.
double termination_bound(const Mdp& mdp, std::size_t steps);

/// Throws not_bounded_episodic unless the MDP is bounded episodic; returns the layering.
LayerPartition require_bounded(const Mdp& mdp);

/// feasible[s][t] is true when some positive-probability path of exactly t
/// steps, starting at any state, ends in s (t = 0..H-1).
std::vector<std::vector<bool>> feasible_sites(const Mdp& mdp, const LayerPartition& layers);

/// States reachable from `s` in one or more steps.
std::vector<bool> reachable_from(const Mdp& mdp, StateId s);

}  // namespace tirl
