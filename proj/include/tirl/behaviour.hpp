#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"
#include "tirl/solvers.hpp"

namespace tirl {

enum class Model { resolute, naive, sophisticated };

std::string_view to_string(Model m);
Model parse_model(std::string_view text);

/// p_i proportional to exp(beta v_i), max-subtracted.
std::vector<double> softmax(std::span<const double> values, double beta);

struct ModelSpec {
    Model model = Model::naive;
    double beta = 1.0;
    Discount discount = Discount::hyperbolic(1.0);
    QConvention convention = QConvention::time_weighted;
    double tie_eps = kDefaultTieEps;  ///< only used to build the canonical sophisticated Q
};

/// Boltzmann policy of the chosen model. Resolute gives a time-indexed policy
/// over t = 0..H-1; the other two are stationary. Mass goes to available
/// actions only.
Policy apply_model(const Mdp& mdp, const Reward& reward, const ModelSpec& spec);

struct PolicyComparison {
    bool equal = true;
    double deviation = 0.0;  ///< sup-norm over compared entries
    std::optional<StateId> state;
    std::optional<std::size_t> time;
};

/// Compares two policies of the same kind and shape. `sites`, if given, is
/// indexed [s][t] and restricts which (state, time) pairs count; the first
/// differing site is the first one (time-major) whose deviation exceeds tol.
PolicyComparison policies_equal(const Policy& a, const Policy& b, double tol = 1e-9,
                                const std::vector<std::vector<bool>>* sites = nullptr);

}  // namespace tirl
