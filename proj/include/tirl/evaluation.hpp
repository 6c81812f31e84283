#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"

namespace tirl {

/// states[0], actions[0], states[1], ...; states.size() == actions.size() + 1.
/// The last state may be the terminal.
struct Trajectory {
    std::vector<StateId> states;
    std::vector<ActionId> actions;
};

/// Sum of d(t) R(s_t, a_t, s_{t+1}). Throws parameter_out_of_range if a step
/// has zero probability.
double trajectory_return(const Mdp& mdp, const Reward& reward, const Discount& d, const Trajectory& traj);

/// V(s, n) for offsets n >= n0, where the first reward collected is weighted
/// d(n) and the policy's clock reads clock_start + (n - n0). Offsets up to
/// 2H are tabulated, so every state is exact for n <= H; entries below n0 or
/// too deep to finish are NaN.
ValueTable policy_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                        std::size_t n0 = 0, std::ptrdiff_t clock_start = 0);

/// W(s, n) = max over policies of V(s, n), on the same offset grid.
ValueTable optimal_offset_values(const Mdp& mdp, const Reward& reward, const Discount& d);

/// Q(s, a) = sum_s' P(s'|s,a) [w R(s,a,s') + next(s', n + 1)] with w = d(n),
/// or w = 1 when `weight_immediate` is false.
QTable backup(const Mdp& mdp, const Reward& reward, const Discount& d, const ValueTable& next, std::size_t n,
              bool weight_immediate = true);

struct TruncationOptions {
    std::optional<std::size_t> block;      ///< steps per termination block; by default the best of |S|, 2|S|, ..., 64|S|
    std::optional<std::size_t> depth_cap;  ///< default 10 n ceil(log(m n / (p eps)))
};

struct TruncatedValues {
    std::vector<double> values;  ///< V at offset n0, clock 0
    QTable q;                    ///< Q at offset n0, clock 0
    double error_bound = 0.0;    ///< holds for every entry of values and q
    std::size_t depth = 0;
    std::size_t block = 0;
    double termination_probability = 0.0;
};

/// Expected discounted return over the trajectory tree cut at depth k * block,
/// with k the smallest integer making m block (1 - p)^k / p <= eps.
/// Works for bounded and unbounded MDPs; throws not_episodic otherwise, and
/// budget_exceeded when the needed depth passes the cap.
TruncatedValues truncated_policy_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                                       std::size_t n0, double eps, const TruncationOptions& options = {});

/// E_{s ~ initial} V(s, 0). Unbounded MDPs go through truncated evaluation with `eps`.
double objective(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, double eps = 1e-9);

struct LimitProbe {
    double undiscounted_gap = 0.0;
    /// Smallest tested shift N such that every tested n in [N, max_shift] keeps
    /// J(pi1) > J(pi2) under weights h(t + n).
    std::optional<std::size_t> shift_threshold;
    /// Smallest grid gamma such that every grid point >= it keeps the ordering.
    std::optional<double> gamma_threshold;
    std::vector<double> shift_gaps;                      ///< index n
    std::vector<std::pair<double, double>> gamma_gaps;   ///< (gamma, gap), ascending
};

/// Sweeps shifted hyperbolic weights h(t + n), n = 0..max_shift, and
/// exponential weights over `gamma_grid`, reporting where the undiscounted
/// ordering of pi1 over pi2 holds. Throws ordering_violated unless pi1 is
/// strictly better than pi2 without discounting.
LimitProbe limit_threshold_probe(const Mdp& mdp, const Reward& reward, const Policy& pi1, const Policy& pi2, double k,
                                 std::vector<double> gamma_grid, std::size_t max_shift = 64);

}  // namespace tirl
