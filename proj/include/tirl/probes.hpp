#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tirl/behaviour.hpp"
#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"

namespace tirl {

/// s0 -a1-> s1 -> s2 -> ... -> s{n-1} -> TERMINAL, every other action at s0
/// goes straight to TERMINAL. Actions are named a1..a{num_actions}.
/// Throws too_small for fewer than 3 states or 2 actions.
Mdp build_chain_mdp(std::size_t num_states, std::size_t num_actions = 2);

struct ModelComparison {
    Model model = Model::naive;
    bool equal = true;
    double deviation = 0.0;
    std::optional<StateId> state;
    std::optional<std::size_t> time;
};

struct OptimalFlip {
    double gamma = 0.0;
    double x = 0.0;
    StateId state = 0;
};

struct ProbeParameters {
    std::string d1, d2;
    double beta1 = 1.0, beta2 = 1.0, x = 1.0;
    std::optional<std::size_t> t;               ///< chain probe
    std::optional<StateId> controlled_state;    ///< controllable probe: s_c
    QConvention convention = QConvention::time_weighted;
};

struct ProbeReport {
    std::vector<ModelComparison> source;  ///< one per model, under (d1, beta1)
    std::vector<ModelComparison> target;  ///< one per model, under (d2, beta2)
    std::optional<StateId> witness_state;  ///< first target difference
    std::optional<OptimalFlip> optimal_flip;
    ProbeParameters parameters;

    bool equal_under_source() const;
    bool differ_under_target() const;
    double max_source_deviation() const;
    /// Source model f equal and target model g different.
    bool pair_succeeds(Model f, Model g) const;
    bool succeeded() const { return equal_under_source() && differ_under_target(); }
};

struct ProbeResult {
    Reward r2;
    ProbeReport report;
};

struct ProbeOptions {
    double beta1 = 1.0;
    double beta2 = 1.0;
    QConvention convention = QConvention::time_weighted;
    double tol = 1e-9;                 ///< policy equality tolerance
    std::optional<double> flip_gamma;  ///< also search an optimal-policy flip
};

/// Adds x to every non-a1 exit at s0 and x / d1(t) to every transition out
/// of s_t. `chain` must come from build_chain_mdp. Throws degenerate_discount
/// when d1(t) = 0 or d1(t) = d2(t), parameter_out_of_range for t outside 1..n-1.
ProbeResult chain_counterexample(const Mdp& chain, const Reward& r1, const Discount& d1, const Discount& d2,
                                 std::size_t t, double x = 1.0, const ProbeOptions& options = {});

/// An x for which the chain surgery changes the optimal action set at s0
/// under gamma^t discounting. Magnitude doubles from 1 up to
/// 2^40 (1 + max|R1|); the sign follows gamma^t / d1(t) - 1 and whether a1
/// is currently optimal. Throws no_flip_possible when d1(t) = gamma^t or the
/// search runs out.
double optimal_flip_x(const Mdp& chain, const Reward& r1, const Discount& d1, std::size_t t, double gamma);

/// The chain surgery alone.
Reward chain_surgery(const Mdp& chain, const Reward& r1, const Discount& d1, std::size_t t, double x);

/// Picks s_c as the first controllable state not reachable from another
/// controllable state, adds x on every transition into s_c and subtracts
/// x / d1(1) on every transition out of it. Source comparisons cover the
/// whole policy; target comparisons look at the states controlling s_c.
/// Throws trivial_transition_function when nothing is controllable.
ProbeResult controllable_counterexample(const Mdp& mdp, const Reward& r1, const Discount& d1, const Discount& d2,
                                        double x = 1.0, const ProbeOptions& options = {});

Reward controllable_surgery(const Mdp& mdp, const Reward& r1, const Discount& d1, StateId controlled, double x);

/// States s with two available actions that reach `controlled` with different probability.
std::vector<StateId> controllers_of(const Mdp& mdp, StateId controlled);

/// phi[t][s] = Q^R_1(s, t, a) - Q^R_2(s, t, a) when that is constant over the
/// available actions at every feasible site (within tol); NaN at infeasible
/// sites. nullopt when some feasible site breaks constancy.
std::optional<std::vector<std::vector<double>>> resolute_shift_test(
    const Mdp& mdp, const Discount& d, const Reward& r1, const Reward& r2,
    QConvention convention = QConvention::time_weighted, double tol = 1e-6);

}  // namespace tirl
