#include "tirl/shaping.hpp"

#include <algorithm>
#include <cmath>

#include "tirl/solvers.hpp"

namespace tirl {

namespace {

void check_potential(const Mdp& mdp, const Potential& phi) {
    if (phi.size() != mdp.num_states())
        throw Error(ErrorCode::parameter_out_of_range, "potential needs one value per state");
    for (double x : phi)
        if (!std::isfinite(x)) throw Error(ErrorCode::parameter_out_of_range, "potential values must be finite");
}

// Value of a state at every offset of the grid, given a rule for how much
// weight each action gets there (max for optimal, policy mass otherwise).
template <typename Combine>
void fill_state_values(const Mdp& mdp, const Reward& r, const Discount& d, const LayerPartition& layers,
                       ValueTable& v, StateId s, Combine combine) {
    const std::size_t grid = v.num_offsets();
    for (std::size_t n = 0; n + layers.layer_of[s] <= grid; ++n) {
        const double dn = d(n);
        std::vector<double> q(mdp.num_actions(), 0.0);
        for (ActionId a : mdp.available(s))
            for (const auto& o : mdp.outcomes(s, a))
                q[a] += o.probability * (dn * r(s, a, o.next) + (mdp.is_terminal(o.next) ? 0.0 : v(o.next, n + 1)));
        v.at(s, n) = combine(q);
    }
}

}  // namespace

Reward apply_naive_shaping(const Mdp& mdp, const Reward& r1, const Discount& d, const Potential& phi) {
    check_potential(mdp, phi);
    const LayerPartition layers = require_bounded(mdp);
    const QTable q1 = naive_q(mdp, r1, d);
    Reward r2 = r1;
    ValueTable w2(mdp.num_states(), 2 * layers.horizon() + 1);
    for (const auto& layer : layers.layers)
        for (StateId s : layer) {
            for (ActionId a : mdp.available(s))
                for (const auto& o : mdp.outcomes(s, a)) {
                    const double cont = mdp.is_terminal(o.next) ? 0.0 : w2(o.next, 1);
                    r2.set(s, a, o.next, q1(s, a) - phi[s] - cont);
                }
            fill_state_values(mdp, r2, d, layers, w2, s, [&](const std::vector<double>& q) {
                double best = -std::numeric_limits<double>::infinity();
                for (ActionId a : mdp.available(s)) best = std::max(best, q[a]);
                return best;
            });
        }
    return r2;
}

Reward apply_sophisticated_shaping(const Mdp& mdp, const Reward& r1, const Discount& d, const Potential& phi,
                                   double tie_eps) {
    check_potential(mdp, phi);
    const LayerPartition layers = require_bounded(mdp);
    const SophisticatedSolution s1 = sophisticated_canonical(mdp, r1, d, tie_eps);
    Reward r3 = r1;
    ValueTable v3(mdp.num_states(), 2 * layers.horizon() + 1);
    for (const auto& layer : layers.layers)
        for (StateId s : layer) {
            for (ActionId a : mdp.available(s))
                for (const auto& o : mdp.outcomes(s, a)) {
                    const double cont = mdp.is_terminal(o.next) ? 0.0 : v3(o.next, 1);
                    r3.set(s, a, o.next, s1.q(s, a) - phi[s] - cont);
                }
            fill_state_values(mdp, r3, d, layers, v3, s, [&](const std::vector<double>& q) {
                double total = 0.0;
                for (ActionId a : mdp.available(s)) total += s1.policy(s, a) * q[a];
                return total;
            });
        }
    return r3;
}

Reward apply_classic_shaping(const Reward& r1, const Potential& phi, double gamma) {
    const std::size_t S = r1.num_states();
    if (phi.size() != S) throw Error(ErrorCode::parameter_out_of_range, "potential needs one value per state");
    Reward r2 = r1;
    for (StateId s = 0; s < S; ++s)
        for (ActionId a = 0; a < r1.num_actions(); ++a)
            for (StateId next = 0; next <= S; ++next) {
                const double phi_next = next == S ? 0.0 : phi[next];
                r2.set(s, a, next, r1(s, a, next) + gamma * phi_next - phi[s]);
            }
    return r2;
}

std::optional<Potential> check_shaping_equivalence(const Mdp& mdp, const Discount& d, const Reward& r1,
                                                   const Reward& r2, Model model, double tol, double tie_eps) {
    QTable q1, q2;
    switch (model) {
        case Model::naive:
            q1 = naive_q(mdp, r1, d);
            q2 = naive_q(mdp, r2, d);
            break;
        case Model::sophisticated:
            q1 = sophisticated_canonical(mdp, r1, d, tie_eps).q;
            q2 = sophisticated_canonical(mdp, r2, d, tie_eps).q;
            break;
        case Model::resolute:
            throw Error(ErrorCode::parameter_out_of_range,
                        "shaping equivalence is defined for naive and sophisticated models; use resolute_shift_test");
    }
    Potential phi(mdp.num_states(), 0.0);
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        const auto av = mdp.available(s);
        const double ref = q1(s, av.front()) - q2(s, av.front());
        for (ActionId a : av)
            if (std::abs((q1(s, a) - q2(s, a)) - ref) > tol) return std::nullopt;
        phi[s] = ref;
    }
    return phi;
}

}  // namespace tirl
