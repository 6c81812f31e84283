#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"

namespace tirl {

struct Expected {
    double value = 0.0;
    double tolerance = 0.0;  ///< 0 means exact (rational check where available)
    std::string note;
};

struct Scenario {
    std::string name;
    Mdp mdp;
    Reward reward;
    Discount discount;
    std::map<std::string, Expected> expected;
};

/// Three states; buying a membership costs 1, exercising 16, the payoff 30.
Scenario gym();
/// Two start states; the pay-later branch wins from far away, loses up close.
Scenario delay();
/// A choice at s0 between a sure 1/2 and a branch with an indifferent s1.
Scenario crossroads();
/// Unbounded: a looping reward of 1 versus a 30-step detour to 100.
/// The terminal sink plays the role of state s31.
Scenario tempt();

struct RandomMdpOptions {
    std::size_t num_states = 4;
    std::size_t num_actions = 2;
    std::size_t branching = 2;
    double reward_low = -5.0;
    double reward_high = 5.0;
};

/// Bounded episodic by construction: state i only moves to states j > i or to
/// the terminal. All actions are available everywhere; start state s0.
/// Rewards are set on positive-probability triples only. Discount: hyperbolic(1).
Scenario random_mdp(std::uint64_t seed, const RandomMdpOptions& options = {});

/// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double unit_uniform(std::uint64_t bits);

}  // namespace tirl
