#include "tirl/probes.hpp"

#include <algorithm>
#include <cmath>

#include "tirl/solvers.hpp"

namespace tirl {

Mdp build_chain_mdp(std::size_t num_states, std::size_t num_actions) {
    if (num_states < 3) throw Error(ErrorCode::too_small, "a chain needs at least 3 states");
    if (num_actions < 2) throw Error(ErrorCode::too_small, "a chain needs at least 2 actions");
    std::vector<std::string> states, actions;
    for (std::size_t i = 0; i < num_states; ++i) states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < num_actions; ++i) actions.push_back("a" + std::to_string(i + 1));
    MdpBuilder b(states, actions);
    const StateId terminal = b.terminal();
    b.transition(0, 0, 1, 1.0);
    for (ActionId a = 1; a < num_actions; ++a) b.transition(0, a, terminal, 1.0);
    for (StateId s = 1; s < num_states; ++s)
        for (ActionId a = 0; a < num_actions; ++a) b.transition(s, a, s + 1 < num_states ? s + 1 : terminal, 1.0);
    b.initial(0, 1.0);
    return b.build();
}

bool ProbeReport::equal_under_source() const {
    return std::all_of(source.begin(), source.end(), [](const ModelComparison& c) { return c.equal; });
}

bool ProbeReport::differ_under_target() const {
    return !target.empty() &&
           std::all_of(target.begin(), target.end(), [](const ModelComparison& c) { return !c.equal; });
}

double ProbeReport::max_source_deviation() const {
    double m = 0.0;
    for (const auto& c : source) m = std::max(m, c.deviation);
    return m;
}

bool ProbeReport::pair_succeeds(Model f, Model g) const {
    auto find = [](const std::vector<ModelComparison>& v, Model m) -> const ModelComparison* {
        for (const auto& c : v)
            if (c.model == m) return &c;
        return nullptr;
    };
    const auto* src = find(source, f);
    const auto* tgt = find(target, g);
    return src && tgt && src->equal && !tgt->equal;
}

namespace {

constexpr Model kModels[] = {Model::resolute, Model::naive, Model::sophisticated};

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// Site masks: resolute policies count on feasible sites, stationary ones on
// every state; `only` optionally restricts to a set of states.
std::vector<std::vector<bool>> site_mask(const Mdp& mdp, Model model, const std::vector<StateId>* only) {
    const LayerPartition layers = layer_partition(mdp);
    std::vector<std::vector<bool>> mask;
    if (model == Model::resolute) {
        mask = feasible_sites(mdp, layers);
    } else {
        mask.assign(mdp.num_states(), std::vector<bool>(1, true));
    }
    if (only)
        for (StateId s = 0; s < mdp.num_states(); ++s)
            if (std::find(only->begin(), only->end(), s) == only->end()) std::fill(mask[s].begin(), mask[s].end(), false);
    return mask;
}

ModelComparison compare_under(const Mdp& mdp, const Reward& r1, const Reward& r2, Model model, const Discount& d,
                              double beta, const ProbeOptions& options, const std::vector<StateId>* only) {
    ModelSpec spec{model, beta, d, options.convention};
    const Policy p1 = apply_model(mdp, r1, spec);
    const Policy p2 = apply_model(mdp, r2, spec);
    const auto mask = site_mask(mdp, model, only);
    const PolicyComparison cmp = policies_equal(p1, p2, options.tol, &mask);
    return {model, cmp.equal, cmp.deviation, cmp.state, cmp.time};
}

ProbeReport compare_all(const Mdp& mdp, const Reward& r1, const Reward& r2, const Discount& d1, const Discount& d2,
                        const ProbeOptions& options, const std::vector<StateId>* target_states) {
    ProbeReport report;
    for (Model m : kModels) report.source.push_back(compare_under(mdp, r1, r2, m, d1, options.beta1, options, nullptr));
    for (Model m : kModels) {
        report.target.push_back(compare_under(mdp, r1, r2, m, d2, options.beta2, options, target_states));
        if (!report.witness_state && !report.target.back().equal) report.witness_state = report.target.back().state;
    }
    report.parameters.d1 = d1.to_spec();
    report.parameters.d2 = d2.to_spec();
    report.parameters.beta1 = options.beta1;
    report.parameters.beta2 = options.beta2;
    report.parameters.convention = options.convention;
    return report;
}

std::vector<ActionId> optimal_set(const Mdp& mdp, const Reward& r, double gamma, StateId s) {
    const QTable q = naive_q(mdp, r, Discount::exponential(gamma));
    return near_argmax(mdp, s, q.row(s), kDefaultTieEps);
}

void require_chain(const Mdp& chain, const Reward& r1) {
    const Mdp reference = build_chain_mdp(chain.num_states(), chain.num_actions());
    for (StateId s = 0; s < chain.num_states(); ++s)
        for (ActionId a = 0; a < chain.num_actions(); ++a) {
            const auto x = chain.outcomes(s, a);
            const auto y = reference.outcomes(s, a);
            if (x.size() != y.size() || x.front().next != y.front().next)
                throw Error(ErrorCode::parameter_out_of_range, "environment is not a chain built by build_chain_mdp");
        }
    if (r1.num_states() != chain.num_states() || r1.num_actions() != chain.num_actions())
        throw Error(ErrorCode::parameter_out_of_range, "reward shape does not match the chain");
}

}  // namespace

Reward chain_surgery(const Mdp& chain, const Reward& r1, const Discount& d1, std::size_t t, double x) {
    const std::size_t n = chain.num_states();
    if (t < 1 || t >= n) throw Error(ErrorCode::parameter_out_of_range, "t must lie in 1..num_states-1");
    if (d1(t) == 0.0) throw Error(ErrorCode::degenerate_discount, "d1(t) is zero");
    Reward r2 = r1;
    for (ActionId a = 1; a < chain.num_actions(); ++a) r2.at(0, a, chain.terminal()) += x;
    const StateId next = t + 1 < n ? t + 1 : chain.terminal();
    for (ActionId a = 0; a < chain.num_actions(); ++a) r2.at(t, a, next) += x / d1(t);
    return r2;
}

double optimal_flip_x(const Mdp& chain, const Reward& r1, const Discount& d1, std::size_t t, double gamma) {
    require_chain(chain, r1);
    const double c = std::pow(gamma, static_cast<double>(t)) / d1(t) - 1.0;
    if (std::abs(c) <= 1e-12) throw Error(ErrorCode::no_flip_possible, "d1(t) equals gamma^t");
    const auto before = optimal_set(chain, r1, gamma, 0);
    const double sign_c = c > 0 ? 1.0 : -1.0;
    // a1 optimal: push it down (x c < 0); otherwise lift it (x c > 0).
    const double sign = before.front() == 0 ? -sign_c : sign_c;
    const double limit = std::ldexp(1.0, 40) * (1.0 + r1.max_abs(chain));
    for (double mag = 1.0; mag <= limit; mag *= 2.0) {
        const double x = sign * mag;
        if (optimal_set(chain, chain_surgery(chain, r1, d1, t, x), gamma, 0) != before) return x;
    }
    throw Error(ErrorCode::no_flip_possible, "no flip found within the search bound");
}

ProbeResult chain_counterexample(const Mdp& chain, const Reward& r1, const Discount& d1, const Discount& d2,
                                 std::size_t t, double x, const ProbeOptions& options) {
    require_chain(chain, r1);
    if (t < 1 || t >= chain.num_states()) throw Error(ErrorCode::parameter_out_of_range, "t must lie in 1..num_states-1");
    if (d1(t) == 0.0) throw Error(ErrorCode::degenerate_discount, "d1(t) is zero");
    if (nearly_equal(d1(t), d2(t))) throw Error(ErrorCode::degenerate_discount, "d1(t) equals d2(t)");
    ProbeResult out;
    out.r2 = chain_surgery(chain, r1, d1, t, x);
    out.report = compare_all(chain, r1, out.r2, d1, d2, options, nullptr);
    out.report.parameters.x = x;
    out.report.parameters.t = t;
    if (options.flip_gamma) {
        const double fx = optimal_flip_x(chain, r1, d1, t, *options.flip_gamma);
        out.report.optimal_flip = OptimalFlip{*options.flip_gamma, fx, 0};
    }
    return out;
}

std::vector<StateId> controllers_of(const Mdp& mdp, StateId controlled) {
    std::vector<StateId> out;
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        const auto av = mdp.available(s);
        bool found = false;
        for (std::size_t i = 0; i < av.size() && !found; ++i)
            for (std::size_t j = i + 1; j < av.size() && !found; ++j)
                found = std::abs(mdp.probability(s, av[i], controlled) - mdp.probability(s, av[j], controlled)) >
                        kProbabilityTolerance;
        if (found) out.push_back(s);
    }
    return out;
}

Reward controllable_surgery(const Mdp& mdp, const Reward& r1, const Discount& d1, StateId controlled, double x) {
    if (d1(1) == 0.0) throw Error(ErrorCode::degenerate_discount, "d1(1) is zero");
    Reward r2 = r1;
    for (StateId s = 0; s < mdp.num_states(); ++s)
        for (ActionId a = 0; a < mdp.num_actions(); ++a) r2.at(s, a, controlled) += x;
    for (ActionId a = 0; a < mdp.num_actions(); ++a)
        for (StateId next = 0; next <= mdp.num_states(); ++next) r2.at(controlled, a, next) -= x / d1(1);
    return r2;
}

ProbeResult controllable_counterexample(const Mdp& mdp, const Reward& r1, const Discount& d1, const Discount& d2,
                                        double x, const ProbeOptions& options) {
    require_bounded(mdp);
    const ControllableStates cs = controllable_states(mdp);
    if (cs.roots.empty()) throw Error(ErrorCode::trivial_transition_function, "no controllable state");
    const StateId sc = cs.roots.front();
    const std::vector<StateId> controllers = controllers_of(mdp, sc);

    ProbeResult out;
    out.r2 = controllable_surgery(mdp, r1, d1, sc, x);
    out.report = compare_all(mdp, r1, out.r2, d1, d2, options, &controllers);
    out.report.parameters.x = x;
    out.report.parameters.controlled_state = sc;

    if (options.flip_gamma) {
        const double gamma = *options.flip_gamma;
        if (nearly_equal(d1(1), gamma)) throw Error(ErrorCode::no_flip_possible, "d1(1) equals gamma");
        const double limit = std::ldexp(1.0, 40) * (1.0 + r1.max_abs(mdp));
        for (double mag = 1.0; mag <= limit && !out.report.optimal_flip; mag *= 2.0)
            for (double sign : {1.0, -1.0}) {
                const Reward r2 = controllable_surgery(mdp, r1, d1, sc, sign * mag);
                for (StateId s : controllers)
                    if (optimal_set(mdp, r1, gamma, s) != optimal_set(mdp, r2, gamma, s)) {
                        out.report.optimal_flip = OptimalFlip{gamma, sign * mag, s};
                        break;
                    }
                if (out.report.optimal_flip) break;
            }
        if (!out.report.optimal_flip) throw Error(ErrorCode::no_flip_possible, "no flip found within the search bound");
    }
    return out;
}

std::optional<std::vector<std::vector<double>>> resolute_shift_test(const Mdp& mdp, const Discount& d,
                                                                    const Reward& r1, const Reward& r2,
                                                                    QConvention convention, double tol) {
    const LayerPartition layers = require_bounded(mdp);
    const auto feasible = feasible_sites(mdp, layers);
    const TimedQTable q1 = resolute_q(mdp, r1, d, convention);
    const TimedQTable q2 = resolute_q(mdp, r2, d, convention);
    std::vector<std::vector<double>> phi(q1.num_times(), std::vector<double>(mdp.num_states(), kNaN));
    for (std::size_t t = 0; t < q1.num_times(); ++t)
        for (StateId s = 0; s < mdp.num_states(); ++s) {
            if (!feasible[s][t]) continue;
            const auto av = mdp.available(s);
            const double ref = q1(s, t, av.front()) - q2(s, t, av.front());
            for (ActionId a : av)
                if (std::abs((q1(s, t, a) - q2(s, t, a)) - ref) > tol) return std::nullopt;
            phi[t][s] = ref;
        }
    return phi;
}

}  // namespace tirl
