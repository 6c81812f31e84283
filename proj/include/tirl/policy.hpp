#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tirl/mdp.hpp"

namespace tirl {

enum class PolicyKind { stationary, time_indexed };

std::string_view to_string(PolicyKind kind);

/// Stochastic policy, either stationary or indexed by the number of steps
/// taken so far. A time-indexed policy queried past its last time uses the
/// last slice (only matters for unbounded MDPs).
class Policy {
public:
    Policy() = default;

    static Policy stationary(std::size_t num_states, std::size_t num_actions);
    static Policy time_indexed(std::size_t num_states, std::size_t num_actions, std::size_t num_times);
    /// Uniform over each state's available actions.
    static Policy uniform(const Mdp& mdp);
    static Policy deterministic(const Mdp& mdp, const std::vector<ActionId>& choice);
    /// choice[t][s]
    static Policy deterministic(const Mdp& mdp, const std::vector<std::vector<ActionId>>& choice);

    PolicyKind kind() const noexcept { return kind_; }
    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }
    std::size_t num_times() const noexcept { return num_times_; }

    double operator()(StateId s, std::size_t t, ActionId a) const { return probs_[index(s, t, a)]; }
    double operator()(StateId s, ActionId a) const { return probs_[index(s, 0, a)]; }
    std::span<const double> distribution(StateId s, std::size_t t = 0) const {
        return {probs_.data() + index(s, t, 0), num_actions_};
    }
    std::span<double> distribution(StateId s, std::size_t t = 0) {
        return {probs_.data() + index(s, t, 0), num_actions_};
    }
    void set(StateId s, std::size_t t, ActionId a, double p) { probs_[index(s, t, a)] = p; }

    /// Throws invalid_policy when shapes mismatch, a distribution does not sum
    /// to one, or mass sits on an action unavailable at that state.
    void check(const Mdp& mdp) const;

    /// Same policy as a time-indexed one with `num_times` identical slices.
    Policy as_time_indexed(std::size_t num_times) const;

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    std::size_t index(StateId s, std::size_t t, ActionId a) const {
        const std::size_t slice = t < num_times_ ? t : num_times_ - 1;
        return (slice * num_states_ + s) * num_actions_ + a;
    }

    PolicyKind kind_ = PolicyKind::stationary;
    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    std::size_t num_times_ = 1;
    std::vector<double> probs_;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Per-state values indexed by a time offset n: the first reward collected
/// is weighted d(n). Entries that could not be computed exactly (offset too
/// large for the state's remaining depth) are NaN. Terminal is always 0.
class ValueTable {
public:
    ValueTable() = default;
    ValueTable(std::size_t num_states, std::size_t num_offsets)
        : num_states_(num_states), num_offsets_(num_offsets), values_(num_states * num_offsets, kNaN) {}

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_offsets() const noexcept { return num_offsets_; }

    double operator()(StateId s, std::size_t n) const {
        if (s >= num_states_) return 0.0;
        return n < num_offsets_ ? values_[s * num_offsets_ + n] : kNaN;
    }
    double& at(StateId s, std::size_t n) { return values_[s * num_offsets_ + n]; }

private:
    std::size_t num_states_ = 0;
    std::size_t num_offsets_ = 0;
    std::vector<double> values_;
};

/// Q(s, a).
class QTable {
public:
    QTable() = default;
    QTable(std::size_t num_states, std::size_t num_actions)
        : num_states_(num_states), num_actions_(num_actions), values_(num_states * num_actions, 0.0) {}

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }
    double operator()(StateId s, ActionId a) const { return values_[s * num_actions_ + a]; }
    double& at(StateId s, ActionId a) { return values_[s * num_actions_ + a]; }
    std::span<const double> row(StateId s) const { return {values_.data() + s * num_actions_, num_actions_}; }

private:
    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    std::vector<double> values_;
};

/// Q(s, t, a) for t = 0..num_times-1.
class TimedQTable {
public:
    TimedQTable() = default;
    TimedQTable(std::size_t num_states, std::size_t num_times, std::size_t num_actions)
        : num_states_(num_states), num_times_(num_times), num_actions_(num_actions),
          values_(num_states * num_times * num_actions, 0.0) {}

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_times() const noexcept { return num_times_; }
    std::size_t num_actions() const noexcept { return num_actions_; }
    double operator()(StateId s, std::size_t t, ActionId a) const { return values_[index(s, t, a)]; }
    double& at(StateId s, std::size_t t, ActionId a) { return values_[index(s, t, a)]; }
    std::span<const double> row(StateId s, std::size_t t) const {
        return {values_.data() + index(s, t, 0), num_actions_};
    }

private:
    std::size_t index(StateId s, std::size_t t, ActionId a) const {
        return (t * num_states_ + s) * num_actions_ + a;
    }
    std::size_t num_states_ = 0;
    std::size_t num_times_ = 0;
    std::size_t num_actions_ = 0;
    std::vector<double> values_;
};

/// Available actions whose value is within `tie_eps` of the best one, in
/// ascending action order.
std::vector<ActionId> near_argmax(const Mdp& mdp, StateId s, std::span<const double> q, double tie_eps);

}  // namespace tirl
