#pragma once

#include <optional>
#include <vector>

#include "tirl/behaviour.hpp"
#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"

namespace tirl {

/// Phi per non-terminal state; the terminal has potential 0.
using Potential = std::vector<double>;

/// R2 with Q^N_2(s, a) = Q^N_1(s, a) - phi(s). Built from the bottom layer up:
/// R2(s, a, s') = Q^N_1(s, a) - phi(s) - W_2(s', 1), where W_2 already only
/// depends on rewards fixed below s. Triples with zero probability keep R1.
Reward apply_naive_shaping(const Mdp& mdp, const Reward& r1, const Discount& d, const Potential& phi);

/// R3 with Q^S_3(s, a) = Q^S_1(s, a) - phi(s), using the continuation value of
/// the canonical sophisticated policy of R1 (its tie sets are shift invariant).
Reward apply_sophisticated_shaping(const Mdp& mdp, const Reward& r1, const Discount& d, const Potential& phi,
                                   double tie_eps = kDefaultTieEps);

/// R1(s, a, s') + gamma phi(s') - phi(s), pointwise over every triple.
Reward apply_classic_shaping(const Reward& r1, const Potential& phi, double gamma);

/// Returns phi(s) = Q_1(s, a) - Q_2(s, a) when that difference is constant
/// over the available actions at every state (within tol); nullopt otherwise.
/// Model::resolute is rejected; see resolute_shift_test.
std::optional<Potential> check_shaping_equivalence(const Mdp& mdp, const Discount& d, const Reward& r1,
                                                   const Reward& r2, Model model, double tol = 1e-6,
                                                   double tie_eps = kDefaultTieEps);

}  // namespace tirl
