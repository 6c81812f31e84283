#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/oracle.hpp"

namespace tirl {

struct GoldenRow {
    std::string check;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct GoldenTable {
    std::string target;
    std::vector<GoldenRow> rows;
    bool passed() const;
};

/// gym, delay, crossroads, tempt, equivalence, chain, controllable, limits.
const std::vector<std::string>& reproduce_targets();

/// Throws parameter_out_of_range for an unknown target. "all" is not a
/// target here; callers loop over reproduce_targets().
GoldenTable reproduce(std::string_view target);

/// Fixed-width text rendering, one row per check and a closing verdict line.
std::string render(const GoldenTable& table);

/// Under exponential discounting the near-argmax sets of Q^R(., t) at every
/// feasible t, of Q^N and of Q^S should all equal the set of actions used by
/// some optimal stationary policy (from the oracle).
struct ArgmaxAgreement {
    std::size_t sites = 0;
    std::size_t violations = 0;
    std::string first_violation;
};
ArgmaxAgreement exponential_argmax_agreement(const Mdp& mdp, const Reward& reward, const Discount& d,
                                             double tie_eps = 1e-9);

/// "s0=buy s1=go_home" for a stationary choice vector.
std::string describe_choice(const Mdp& mdp, const std::vector<ActionId>& choice);


/// Solver answers checked against the brute-force oracle on one instance.
struct OracleAgreement {
    bool exact = false;                ///< oracle ran in rational arithmetic
    std::size_t policies_valued = 0;
    double max_value_gap = 0.0;        ///< |exhaustive_value - policy_value| over states
    std::size_t memberships_checked = 0;
    std::size_t class_mismatches = 0;
    std::string first_mismatch;
};

/// `values`: every stationary deterministic policy, the uniform policy and
/// the solver's resolute policy are valued by tree walk and by the DP.
/// `classes`: is_naive / is_sophisticated / is_resolute on every stationary
/// deterministic policy and is_resolute on every time-indexed one, compared
/// with the oracle's sets.
OracleAgreement solver_oracle_agreement(const Mdp& mdp, const Reward& reward, const Discount& d, bool values = true,
                                        bool classes = true, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace tirl
