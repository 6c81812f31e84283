#include "tirl/behaviour.hpp"

#include <algorithm>
#include <cmath>

namespace tirl {

std::string_view to_string(Model m) {
    switch (m) {
        case Model::resolute: return "resolute";
        case Model::naive: return "naive";
        case Model::sophisticated: return "sophisticated";
    }
    return "unknown";
}

Model parse_model(std::string_view text) {
    if (text == "resolute") return Model::resolute;
    if (text == "naive") return Model::naive;
    if (text == "sophisticated") return Model::sophisticated;
    throw Error(ErrorCode::parameter_out_of_range, "model must be resolute, naive or sophisticated");
}

std::vector<double> softmax(std::span<const double> values, double beta) {
    if (values.empty()) return {};
    const double top = *std::max_element(values.begin(), values.end());
    std::vector<double> p(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        p[i] = std::exp(beta * (values[i] - top));
        sum += p[i];
    }
    for (double& x : p) x /= sum;
    return p;
}

namespace {

void fill_softmax(const Mdp& mdp, Policy& pi, StateId s, std::size_t t, std::span<const double> q, double beta) {
    const auto av = mdp.available(s);
    std::vector<double> vals;
    vals.reserve(av.size());
    for (ActionId a : av) vals.push_back(q[a]);
    const auto p = softmax(vals, beta);
    for (std::size_t i = 0; i < av.size(); ++i) pi.set(s, t, av[i], p[i]);
}

}  // namespace

Policy apply_model(const Mdp& mdp, const Reward& reward, const ModelSpec& spec) {
    if (!(spec.beta > 0.0) || !std::isfinite(spec.beta))
        throw Error(ErrorCode::parameter_out_of_range, "beta must lie in (0, inf)");
    switch (spec.model) {
        case Model::resolute: {
            const TimedQTable q = resolute_q(mdp, reward, spec.discount, spec.convention);
            Policy pi = Policy::time_indexed(mdp.num_states(), mdp.num_actions(), q.num_times());
            for (std::size_t t = 0; t < q.num_times(); ++t)
                for (StateId s = 0; s < mdp.num_states(); ++s) fill_softmax(mdp, pi, s, t, q.row(s, t), spec.beta);
            return pi;
        }
        case Model::naive: {
            const QTable q = naive_q(mdp, reward, spec.discount);
            Policy pi = Policy::stationary(mdp.num_states(), mdp.num_actions());
            for (StateId s = 0; s < mdp.num_states(); ++s) fill_softmax(mdp, pi, s, 0, q.row(s), spec.beta);
            return pi;
        }
        case Model::sophisticated: {
            const QTable q = sophisticated_canonical(mdp, reward, spec.discount, spec.tie_eps).q;
            Policy pi = Policy::stationary(mdp.num_states(), mdp.num_actions());
            for (StateId s = 0; s < mdp.num_states(); ++s) fill_softmax(mdp, pi, s, 0, q.row(s), spec.beta);
            return pi;
        }
    }
    throw Error(ErrorCode::parameter_out_of_range, "unknown model");
}

PolicyComparison policies_equal(const Policy& a, const Policy& b, double tol,
                                const std::vector<std::vector<bool>>* sites) {
    if (a.kind() != b.kind() || a.num_states() != b.num_states() || a.num_actions() != b.num_actions() ||
        a.num_times() != b.num_times())
        throw Error(ErrorCode::incomparable_kinds, "policies differ in kind or shape");
    PolicyComparison out;
    for (std::size_t t = 0; t < a.num_times(); ++t)
        for (StateId s = 0; s < a.num_states(); ++s) {
            if (sites && !(*sites)[s][t]) continue;
            for (ActionId act = 0; act < a.num_actions(); ++act) {
                const double dev = std::abs(a(s, t, act) - b(s, t, act));
                out.deviation = std::max(out.deviation, dev);
                if (dev > tol && out.equal) {
                    out.equal = false;
                    out.state = s;
                    out.time = t;
                }
            }
        }
    return out;
}

}  // namespace tirl
