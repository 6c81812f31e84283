#include "tirl/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace tirl {

std::string_view to_string(QConvention c) {
    return c == QConvention::time_weighted ? "time_weighted" : "literal";
}

QConvention parse_convention(std::string_view text) {
    if (text == "time_weighted") return QConvention::time_weighted;
    if (text == "literal") return QConvention::literal;
    throw Error(ErrorCode::parameter_out_of_range, "convention must be time_weighted or literal");
}

TimedQTable resolute_q(const Mdp& mdp, const Reward& reward, const Discount& d, QConvention convention) {
    const LayerPartition layers = require_bounded(mdp);
    const std::size_t H = layers.horizon();
    const ValueTable w = optimal_offset_values(mdp, reward, d);
    TimedQTable q(mdp.num_states(), H, mdp.num_actions());
    for (std::size_t t = 0; t < H; ++t) {
        const QTable slice = backup(mdp, reward, d, w, t, convention == QConvention::time_weighted);
        for (StateId s = 0; s < mdp.num_states(); ++s)
            for (ActionId a = 0; a < mdp.num_actions(); ++a) q.at(s, t, a) = slice(s, a);
    }
    return q;
}

Policy resolute_policy(const Mdp& mdp, const TimedQTable& q, double tie_eps) {
    std::vector<std::vector<ActionId>> choice(q.num_times(), std::vector<ActionId>(mdp.num_states()));
    for (std::size_t t = 0; t < q.num_times(); ++t)
        for (StateId s = 0; s < mdp.num_states(); ++s) choice[t][s] = near_argmax(mdp, s, q.row(s, t), tie_eps).front();
    return Policy::deterministic(mdp, choice);
}

QTable naive_q(const Mdp& mdp, const Reward& reward, const Discount& d) {
    const ValueTable w = optimal_offset_values(mdp, reward, d);
    return backup(mdp, reward, d, w, 0);  // d(0) = 1
}

Policy greedy_policy(const Mdp& mdp, const QTable& q, double tie_eps) {
    std::vector<ActionId> choice(mdp.num_states());
    for (StateId s = 0; s < mdp.num_states(); ++s) choice[s] = near_argmax(mdp, s, q.row(s), tie_eps).front();
    return Policy::deterministic(mdp, choice);
}

namespace {

SophisticatedSolution build_sophisticated(const Mdp& mdp, const Reward& reward, const Discount& d, double tie_eps,
                                          bool mix) {
    const LayerPartition layers = require_bounded(mdp);
    require_covers(d, layers.horizon());
    const std::size_t grid = 2 * layers.horizon() + 1;
    ValueTable v(mdp.num_states(), grid);
    SophisticatedSolution out{QTable(mdp.num_states(), mdp.num_actions()),
                              Policy::stationary(mdp.num_states(), mdp.num_actions())};
    auto next_value = [&](StateId next, std::size_t n) { return mdp.is_terminal(next) ? 0.0 : v(next, n); };

    for (const auto& layer : layers.layers)
        for (StateId s : layer) {
            for (ActionId a = 0; a < mdp.num_actions(); ++a) {
                const ActionId e = mdp.effective_action(s, a);
                double q = 0.0;
                for (const auto& o : mdp.outcomes(s, e)) q += o.probability * (reward(s, e, o.next) + next_value(o.next, 1));
                out.q.at(s, a) = q;
            }
            const auto best = near_argmax(mdp, s, out.q.row(s), tie_eps);
            if (mix) {
                for (ActionId a : best) out.policy.set(s, 0, a, 1.0 / static_cast<double>(best.size()));
            } else {
                out.policy.set(s, 0, best.front(), 1.0);
            }
            // Continuation values of s at every offset, now that pi(s) is fixed.
            for (std::size_t n = 0; n + layers.layer_of[s] <= grid; ++n) {
                const double dn = d(n);
                double total = 0.0;
                for (ActionId a : mdp.available(s)) {
                    const double p = out.policy(s, a);
                    if (p == 0.0) continue;
                    double q = 0.0;
                    for (const auto& o : mdp.outcomes(s, a))
                        q += o.probability * (dn * reward(s, a, o.next) + next_value(o.next, n + 1));
                    total += p * q;
                }
                v.at(s, n) = total;
            }
        }
    return out;
}

Verdict check_support(const Mdp& mdp, const Policy& pi, StateId s, std::size_t t, std::span<const double> q,
                      double tie_eps) {
    Verdict v;
    double best = -std::numeric_limits<double>::infinity();
    for (ActionId a : mdp.available(s)) best = std::max(best, q[a]);
    for (ActionId a : mdp.available(s)) {
        if (pi(s, t, a) <= 0.0) continue;
        const double shortfall = best - q[a];
        if (shortfall > tie_eps && (v.ok || shortfall > v.shortfall)) {
            v.ok = false;
            v.state = s;
            v.time = t;
            v.action = a;
            v.shortfall = shortfall;
        }
    }
    return v;
}

}  // namespace

SophisticatedSolution sophisticated_canonical(const Mdp& mdp, const Reward& reward, const Discount& d, double tie_eps) {
    return build_sophisticated(mdp, reward, d, tie_eps, true);
}

SophisticatedSolution sophisticated_deterministic(const Mdp& mdp, const Reward& reward, const Discount& d,
                                                  double tie_eps) {
    return build_sophisticated(mdp, reward, d, tie_eps, false);
}

Verdict is_resolute(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, double tie_eps,
                    QConvention convention) {
    pi.check(mdp);
    const LayerPartition layers = require_bounded(mdp);
    const auto feasible = feasible_sites(mdp, layers);
    const TimedQTable q = resolute_q(mdp, reward, d, convention);
    for (std::size_t t = 0; t < q.num_times(); ++t)
        for (StateId s = 0; s < mdp.num_states(); ++s)
            if (feasible[s][t])
                if (Verdict v = check_support(mdp, pi, s, t, q.row(s, t), tie_eps); !v) return v;
    return {};
}

Verdict is_naive(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, double tie_eps) {
    pi.check(mdp);
    const LayerPartition layers = require_bounded(mdp);
    const auto feasible = feasible_sites(mdp, layers);
    const QTable q = naive_q(mdp, reward, d);
    const std::size_t times = pi.kind() == PolicyKind::stationary ? 1 : layers.horizon();
    for (std::size_t t = 0; t < times; ++t)
        for (StateId s = 0; s < mdp.num_states(); ++s)
            if (feasible[s][t])
                if (Verdict v = check_support(mdp, pi, s, t, q.row(s), tie_eps); !v) return v;
    return {};
}

Verdict is_sophisticated(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, double tie_eps,
                         const TruncationOptions& options) {
    pi.check(mdp);
    const EpisodicityReport report = validate(mdp);
    if (report.kind == Episodicity::non_episodic)
        throw Error(ErrorCode::not_episodic, "some policy avoids the terminal forever");

    if (report.kind == Episodicity::bounded) {
        const LayerPartition layers = layer_partition(mdp);
        const auto feasible = feasible_sites(mdp, layers);
        const std::size_t times = pi.kind() == PolicyKind::stationary ? 1 : layers.horizon();
        for (std::size_t t = 0; t < times; ++t) {
            // Continuation from offset 1 with the policy clock at t + 1.
            const ValueTable v = policy_value(mdp, reward, d, pi, 0, static_cast<std::ptrdiff_t>(t));
            const QTable q = backup(mdp, reward, d, v, 0);
            for (StateId s = 0; s < mdp.num_states(); ++s)
                if (feasible[s][t])
                    if (Verdict verdict = check_support(mdp, pi, s, t, q.row(s), tie_eps); !verdict) return verdict;
        }
        return {};
    }

    if (pi.kind() != PolicyKind::stationary)
        throw Error(ErrorCode::invalid_policy, "unbounded MDPs are checked for stationary policies only");
    const TruncatedValues tv = truncated_policy_value(mdp, reward, d, pi, 0, tie_eps / 4.0, options);
    const double delta = tv.error_bound;
    Verdict worst;
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (ActionId a : mdp.available(s)) best = std::max(best, tv.q(s, a));
        for (ActionId a : mdp.available(s)) {
            if (pi(s, a) <= 0.0) continue;
            const double shortfall = best - tv.q(s, a);
            if (shortfall <= tie_eps - 2.0 * delta) continue;
            if (shortfall <= tie_eps + 2.0 * delta)
                throw Error(ErrorCode::tolerance_too_tight,
                            "truncation error is too large to decide the tie at '" + mdp.state_name(s) + "'");
            if (worst.ok || shortfall > worst.shortfall) {
                worst.ok = false;
                worst.state = s;
                worst.time = 0;
                worst.action = a;
                worst.shortfall = shortfall;
            }
        }
    }
    return worst;
}

}  // namespace tirl
