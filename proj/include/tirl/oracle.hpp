#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"

namespace tirl {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double. Every finite double is a dyadic rational.
Rational to_rational(double x);
/// True when x is a dyadic rational with denominator at most 2^20.
bool has_small_denominator(double x);
/// Exact d(t) for closed forms with small-denominator parameters; nullopt otherwise.
std::optional<Rational> exact_weight(const Discount& d, std::size_t t);

enum class SpaceKind { stationary, time_indexed };

/// Deterministic policies over a list of decision sites. Stationary spaces
/// have one site per state (time 0); time-indexed spaces have one site per
/// feasible (state, time) pair with t < H. Each site ranges over the state's
/// available actions, so the count is the product of their sizes.
struct PolicySpace {
    SpaceKind kind = SpaceKind::stationary;
    std::vector<std::pair<StateId, std::size_t>> sites;
    std::vector<std::vector<ActionId>> options;  ///< per site
    std::uint64_t count = 0;                     ///< saturates at UINT64_MAX
};

PolicySpace policy_space(const Mdp& mdp, SpaceKind kind);

/// The policy picking choice[i] at sites[i]; unlisted sites of a time-indexed
/// policy fall back to the default action.
Policy space_policy(const Mdp& mdp, const PolicySpace& space, const std::vector<ActionId>& choice);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Calls `visit` with every choice vector, first site most significant.
/// Throws space_too_large when the count exceeds `cap`.
void enumerate_policies(const Mdp& mdp, SpaceKind kind, const std::function<void(const std::vector<ActionId>&)>& visit,
                        std::uint64_t cap = kDefaultEnumerationCap);

/// Expected discounted return by walking the full trajectory tree from s.
/// The first reward is weighted d(offset) and the policy clock starts at
/// `clock`. When `first` is set, that action replaces the policy at the root.
double exhaustive_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, StateId s,
                        std::size_t offset = 0, std::size_t clock = 0, std::optional<ActionId> first = {});

/// Whether every transition probability, reward, policy probability and
/// discount weight is a dyadic rational with a small denominator.
bool exact_inputs(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy* pi = nullptr);

/// Rational twin of exhaustive_value; throws parameter_out_of_range unless exact_inputs holds.
Rational exhaustive_value_exact(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, StateId s,
                                std::size_t offset = 0, std::size_t clock = 0, std::optional<ActionId> first = {});

struct OracleOptions {
    std::uint64_t cap = kDefaultEnumerationCap;
    double tol = 1e-9;  ///< used only when the inputs are not exact
};

/// Deterministic policies of each class, decided by quantifying over the
/// enumerated policy space with tree evaluation. Choice vectors index the
/// corresponding PolicySpace sites.
struct OracleClasses {
    bool exact = false;                      ///< rational arithmetic was used
    PolicySpace timed_space;                 ///< sites for `resolute`
    std::vector<std::vector<ActionId>> resolute;             ///< time-indexed
    std::vector<std::vector<ActionId>> resolute_stationary;  ///< stationary, one action per state
    std::vector<std::vector<ActionId>> naive;                ///< stationary
    std::vector<std::vector<ActionId>> sophisticated;        ///< stationary
    std::vector<std::vector<ActionId>> naive_actions;        ///< per state
};

OracleClasses oracle_class_membership(const Mdp& mdp, const Reward& reward, const Discount& d,
                                      const OracleOptions& options = {});

/// Stationary deterministic policies maximising V(s, 0) at every state.
std::vector<std::vector<ActionId>> oracle_optimal_set(const Mdp& mdp, const Reward& reward, const Discount& d,
                                                      const OracleOptions& options = {});

std::string to_string(const Rational& q);

}  // namespace tirl
