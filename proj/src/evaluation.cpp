#include "tirl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tirl {

double trajectory_return(const Mdp& mdp, const Reward& reward, const Discount& d, const Trajectory& traj) {
    if (traj.states.size() != traj.actions.size() + 1)
        throw Error(ErrorCode::parameter_out_of_range, "trajectory needs one more state than actions");
    double g = 0.0;
    for (std::size_t t = 0; t < traj.actions.size(); ++t) {
        const StateId s = traj.states[t];
        const StateId next = traj.states[t + 1];
        if (mdp.is_terminal(s)) throw Error(ErrorCode::parameter_out_of_range, "trajectory continues past the terminal");
        const ActionId a = mdp.effective_action(s, traj.actions[t]);
        if (mdp.probability(s, a, next) <= 0.0)
            throw Error(ErrorCode::parameter_out_of_range,
                        "step " + std::to_string(t) + " of the trajectory has zero probability");
        g += d(t) * reward(s, a, next);
    }
    return g;
}

namespace {

// Offsets 0..2H: enough for every state to be exact at offsets 0..H.
std::size_t offset_grid(const LayerPartition& layers) { return 2 * layers.horizon() + 1; }

double successor_value(const Mdp& mdp, const ValueTable& v, StateId next, std::size_t n) {
    return mdp.is_terminal(next) ? 0.0 : v(next, n);
}

}  // namespace

ValueTable policy_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, std::size_t n0,
                        std::ptrdiff_t clock_start) {
    const LayerPartition layers = require_bounded(mdp);
    require_covers(d, layers.horizon());
    pi.check(mdp);
    const std::size_t grid = offset_grid(layers);
    ValueTable v(mdp.num_states(), grid);
    for (std::size_t n = grid; n-- > n0;) {
        const std::ptrdiff_t raw_clock = clock_start + static_cast<std::ptrdiff_t>(n - n0);
        const std::size_t clock = raw_clock < 0 ? 0 : static_cast<std::size_t>(raw_clock);
        const double w = d(n);
        for (const auto& layer : layers.layers)
            for (StateId s : layer) {
                if (n + layers.layer_of[s] > grid) continue;  // cannot finish inside the grid
                double total = 0.0;
                for (ActionId a : mdp.available(s)) {
                    const double p = pi(s, clock, a);
                    if (p == 0.0) continue;
                    double q = 0.0;
                    for (const auto& o : mdp.outcomes(s, a))
                        q += o.probability * (w * reward(s, a, o.next) + successor_value(mdp, v, o.next, n + 1));
                    total += p * q;
                }
                v.at(s, n) = total;
            }
    }
    return v;
}

ValueTable optimal_offset_values(const Mdp& mdp, const Reward& reward, const Discount& d) {
    const LayerPartition layers = require_bounded(mdp);
    require_covers(d, layers.horizon());
    const std::size_t grid = offset_grid(layers);
    ValueTable w(mdp.num_states(), grid);
    for (std::size_t n = grid; n-- > 0;) {
        const double dn = d(n);
        for (const auto& layer : layers.layers)
            for (StateId s : layer) {
                if (n + layers.layer_of[s] > grid) continue;
                double best = -std::numeric_limits<double>::infinity();
                for (ActionId a : mdp.available(s)) {
                    double q = 0.0;
                    for (const auto& o : mdp.outcomes(s, a))
                        q += o.probability * (dn * reward(s, a, o.next) + successor_value(mdp, w, o.next, n + 1));
                    best = std::max(best, q);
                }
                w.at(s, n) = best;
            }
    }
    return w;
}

QTable backup(const Mdp& mdp, const Reward& reward, const Discount& d, const ValueTable& next, std::size_t n,
              bool weight_immediate) {
    const double w = weight_immediate ? d(n) : 1.0;
    QTable q(mdp.num_states(), mdp.num_actions());
    for (StateId s = 0; s < mdp.num_states(); ++s)
        for (ActionId a = 0; a < mdp.num_actions(); ++a) {
            const ActionId e = mdp.effective_action(s, a);
            double total = 0.0;
            for (const auto& o : mdp.outcomes(s, e))
                total += o.probability * (w * reward(s, e, o.next) + successor_value(mdp, next, o.next, n + 1));
            q.at(s, a) = total;
        }
    return q;
}

namespace {

struct TruncationPlan {
    std::size_t block = 0;
    double p = 0.0;
    std::size_t k = 1;
    double bound = 0.0;
};

TruncationPlan plan_for(const Mdp& mdp, double m, double eps, std::size_t block) {
    TruncationPlan plan;
    plan.block = block;
    plan.p = termination_bound(mdp, block);
    if (plan.p <= 0.0) return plan;
    const double n = static_cast<double>(block);
    if (m > 0.0 && plan.p < 1.0) {
        const double needed = std::log(eps * plan.p / (m * n)) / std::log1p(-plan.p);
        plan.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(needed)));
        plan.bound = m * n * std::pow(1.0 - plan.p, static_cast<double>(plan.k)) / plan.p;
    }
    return plan;
}

}  // namespace

TruncatedValues truncated_policy_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi,
                                       std::size_t n0, double eps, const TruncationOptions& options) {
    if (!(eps > 0.0)) throw Error(ErrorCode::parameter_out_of_range, "truncation tolerance must be positive");
    pi.check(mdp);
    const std::size_t S = mdp.num_states();
    const double m = reward.max_abs(mdp);

    // A block of |S| steps always has p > 0, but p can be tiny when some
    // policy stalls; longer blocks often need far fewer total steps.
    TruncationPlan plan;
    if (options.block) {
        if (*options.block == 0) throw Error(ErrorCode::parameter_out_of_range, "block length must be positive");
        plan = plan_for(mdp, m, eps, *options.block);
    } else {
        for (std::size_t block = S, i = 0; i < 7; block *= 2, ++i) {
            const TruncationPlan candidate = plan_for(mdp, m, eps, block);
            if (candidate.p <= 0.0) continue;
            if (plan.p <= 0.0 || candidate.k * candidate.block < plan.k * plan.block) plan = candidate;
        }
    }
    if (plan.p <= 0.0)
        throw Error(ErrorCode::parameter_out_of_range,
                    "block of " + std::to_string(plan.block) + " steps gives no termination guarantee");

    TruncatedValues out;
    out.block = plan.block;
    out.termination_probability = plan.p;
    out.depth = plan.k * plan.block;
    out.error_bound = plan.bound;

    std::size_t cap = 0;
    if (options.depth_cap) {
        cap = *options.depth_cap;
    } else {
        const double n = static_cast<double>(plan.block);
        const double logs = (m > 0.0) ? std::ceil(std::log(m * n / (plan.p * eps))) : 1.0;
        cap = 10 * plan.block * static_cast<std::size_t>(std::max(1.0, logs));
    }
    if (out.depth > cap) {
        std::ostringstream msg;
        msg << "truncation needs depth " << out.depth << " but the cap is " << cap;
        throw Error(ErrorCode::budget_exceeded, msg.str());
    }

    // Backward over steps: tail[s] is the value of steps j.. from s at clock j.
    std::vector<double> tail(S + 1, 0.0), next(S + 1, 0.0);
    out.q = QTable(S, mdp.num_actions());
    for (std::size_t j = out.depth; j-- > 0;) {
        const double w = d(n0 + j);
        for (StateId s = 0; s < S; ++s) {
            double total = 0.0;
            for (ActionId a = 0; a < mdp.num_actions(); ++a) {
                const ActionId e = mdp.effective_action(s, a);
                const double prob = pi(s, j, a);
                if (prob == 0.0 && j != 0) continue;
                double q = 0.0;
                for (const auto& o : mdp.outcomes(s, e)) q += o.probability * (w * reward(s, e, o.next) + tail[o.next]);
                if (j == 0) out.q.at(s, a) = q;
                total += prob * q;
            }
            next[s] = total;
        }
        next[S] = 0.0;
        tail.swap(next);
    }
    out.values.assign(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(S));
    return out;
}

double objective(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, double eps) {
    const auto report = validate(mdp);
    std::vector<double> v(mdp.num_states());
    if (report.kind == Episodicity::bounded) {
        const ValueTable table = policy_value(mdp, reward, d, pi);
        for (StateId s = 0; s < mdp.num_states(); ++s) v[s] = table(s, 0);
    } else {
        v = truncated_policy_value(mdp, reward, d, pi, 0, eps).values;
    }
    double j = 0.0;
    for (StateId s = 0; s < mdp.num_states(); ++s) j += mdp.initial()[s] * v[s];
    return j;
}

LimitProbe limit_threshold_probe(const Mdp& mdp, const Reward& reward, const Policy& pi1, const Policy& pi2, double k,
                                 std::vector<double> gamma_grid, std::size_t max_shift) {
    LimitProbe probe;
    const Discount flat = Discount::exponential(1.0);
    probe.undiscounted_gap = objective(mdp, reward, flat, pi1) - objective(mdp, reward, flat, pi2);
    if (!(probe.undiscounted_gap > 0.0))
        throw Error(ErrorCode::ordering_violated, "the first policy is not strictly better without discounting");

    const Discount h = Discount::hyperbolic(k);
    for (std::size_t n = 0; n <= max_shift; ++n) {
        const Discount hn = h.shifted(n);
        probe.shift_gaps.push_back(objective(mdp, reward, hn, pi1) - objective(mdp, reward, hn, pi2));
    }
    for (std::size_t n = probe.shift_gaps.size(); n-- > 0;) {
        if (probe.shift_gaps[n] <= 0.0) break;
        probe.shift_threshold = n;
    }

    std::sort(gamma_grid.begin(), gamma_grid.end());
    for (double g : gamma_grid) {
        const Discount e = Discount::exponential(g);
        probe.gamma_gaps.emplace_back(g, objective(mdp, reward, e, pi1) - objective(mdp, reward, e, pi2));
    }
    for (std::size_t i = probe.gamma_gaps.size(); i-- > 0;) {
        if (probe.gamma_gaps[i].second <= 0.0) break;
        probe.gamma_threshold = probe.gamma_gaps[i].first;
    }
    return probe;
}

}  // namespace tirl
