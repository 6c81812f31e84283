#pragma once

#include <optional>
#include <string>

#include "tirl/discount.hpp"
#include "tirl/evaluation.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"

namespace tirl {

inline constexpr double kDefaultTieEps = 1e-9;

/// How the immediate reward at time t enters Q^R(s, t, a): scaled by d(t)
/// (time_weighted, default) or with weight 1 (literal).
enum class QConvention { time_weighted, literal };

std::string_view to_string(QConvention c);
QConvention parse_convention(std::string_view text);

/// Q^R(s, t, a) = sum P(s'|s,a) [w(t) R(s,a,s') + W(s', t+1)], t = 0..H-1.
TimedQTable resolute_q(const Mdp& mdp, const Reward& reward, const Discount& d,
                       QConvention convention = QConvention::time_weighted);

/// Deterministic time-indexed policy taking the first maximiser of Q^R at every (s, t).
Policy resolute_policy(const Mdp& mdp, const TimedQTable& q, double tie_eps = kDefaultTieEps);

/// Q^N(s, a) = sum P(s'|s,a) [R(s,a,s') + W(s', 1)].
QTable naive_q(const Mdp& mdp, const Reward& reward, const Discount& d);

/// Stationary deterministic policy taking the first maximiser of q at each state.
Policy greedy_policy(const Mdp& mdp, const QTable& q, double tie_eps = kDefaultTieEps);

struct SophisticatedSolution {
    QTable q;       ///< Q^{pi,0} of the policy below
    Policy policy;  ///< stationary
};

/// Built layer by layer from the terminal up: at each state the policy mixes
/// uniformly over the actions within tie_eps of the best Q^{pi,0}, given the
/// policy already fixed on lower layers.
SophisticatedSolution sophisticated_canonical(const Mdp& mdp, const Reward& reward, const Discount& d,
                                              double tie_eps = kDefaultTieEps);

/// Same construction, but each state commits to its first near-maximiser.
SophisticatedSolution sophisticated_deterministic(const Mdp& mdp, const Reward& reward, const Discount& d,
                                                  double tie_eps = kDefaultTieEps);

/// Membership verdict. On failure, the site where the policy puts mass on an
/// action that is not (near) maximal, and how far below the best it is.
struct Verdict {
    bool ok = true;
    std::optional<StateId> state;
    std::optional<std::size_t> time;
    std::optional<ActionId> action;
    double shortfall = 0.0;

    explicit operator bool() const noexcept { return ok; }
};

/// Checked at every feasible (state, time) site, t < H.
Verdict is_resolute(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                    double tie_eps = kDefaultTieEps, QConvention convention = QConvention::time_weighted);

/// Checked at every feasible site; only the state matters for the target set.
Verdict is_naive(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                 double tie_eps = kDefaultTieEps);

/// Bounded MDPs: exact check of supp pi(s, t) within tie_eps of max Q^{pi,0}
/// at every feasible site. Unbounded MDPs (stationary policies only): Q^{pi,0}
/// is evaluated by truncation with error delta <= tie_eps / 4; a shortfall in
/// (tie_eps - 2 delta, tie_eps + 2 delta] cannot be decided and throws
/// tolerance_too_tight.
Verdict is_sophisticated(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                         double tie_eps = kDefaultTieEps, const TruncationOptions& options = {});

}  // namespace tirl
