#include "tirl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace tirl {

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw Error(ErrorCode::parameter_out_of_range, "cannot convert a non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    const int shift = exp - 53;
    boost::multiprecision::cpp_int num = scaled;
    if (shift >= 0) return Rational(num << shift);
    return Rational(num, boost::multiprecision::cpp_int(1) << -shift);
}

bool has_small_denominator(double x) {
    if (!std::isfinite(x)) return false;
    const double scaled = std::ldexp(x, 20);
    return std::isfinite(scaled) && scaled == std::floor(scaled) && std::abs(scaled) < 0x1.0p62;
}

std::optional<Rational> exact_weight(const Discount& d, std::size_t t) {
    const std::size_t u = t + d.shift();
    switch (d.family()) {
        case DiscountFamily::exponential: {
            if (!has_small_denominator(d.parameter())) return std::nullopt;
            const Rational g = to_rational(d.parameter());
            Rational w(1);
            for (std::size_t i = 0; i < u; ++i) w *= g;
            return w;
        }
        case DiscountFamily::hyperbolic: {
            if (!has_small_denominator(d.parameter())) return std::nullopt;
            return Rational(1) / (Rational(1) + to_rational(d.parameter()) * Rational(static_cast<long long>(u)));
        }
        case DiscountFamily::bounded_planning:
            return Rational(static_cast<double>(u) <= d.parameter() ? 1 : 0);
        case DiscountFamily::table: {
            const auto& v = d.table_values();
            if (u >= v.size()) return Rational(0);
            if (!has_small_denominator(v[u])) return std::nullopt;
            return to_rational(v[u]);
        }
    }
    return std::nullopt;
}

std::string to_string(const Rational& q) {
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// ---------------------------------------------------------------------------
// Policy spaces

PolicySpace policy_space(const Mdp& mdp, SpaceKind kind) {
    PolicySpace space;
    space.kind = kind;
    if (kind == SpaceKind::stationary) {
        for (StateId s = 0; s < mdp.num_states(); ++s) space.sites.emplace_back(s, 0);
    } else {
        const LayerPartition layers = require_bounded(mdp);
        const auto feasible = feasible_sites(mdp, layers);
        for (std::size_t t = 0; t < layers.horizon(); ++t)
            for (StateId s = 0; s < mdp.num_states(); ++s)
                if (feasible[s][t]) space.sites.emplace_back(s, t);
    }
    space.count = 1;
    for (const auto& [s, t] : space.sites) {
        const auto av = mdp.available(s);
        space.options.emplace_back(av.begin(), av.end());
        if (space.count > std::numeric_limits<std::uint64_t>::max() / av.size())
            space.count = std::numeric_limits<std::uint64_t>::max();
        else
            space.count *= av.size();
    }
    return space;
}

Policy space_policy(const Mdp& mdp, const PolicySpace& space, const std::vector<ActionId>& choice) {
    if (space.kind == SpaceKind::stationary) return Policy::deterministic(mdp, choice);
    std::size_t times = 1;
    for (const auto& site : space.sites) times = std::max(times, site.second + 1);
    std::vector<std::vector<ActionId>> table(times, std::vector<ActionId>(mdp.num_states()));
    for (std::size_t t = 0; t < times; ++t)
        for (StateId s = 0; s < mdp.num_states(); ++s) table[t][s] = mdp.default_action(s);
    for (std::size_t i = 0; i < space.sites.size(); ++i) table[space.sites[i].second][space.sites[i].first] = choice[i];
    return Policy::deterministic(mdp, table);
}

namespace {

void for_each_choice(const PolicySpace& space, const std::function<void(const std::vector<ActionId>&)>& visit) {
    const std::size_t n = space.sites.size();
    std::vector<std::size_t> digit(n, 0);
    std::vector<ActionId> choice(n);
    for (std::size_t i = 0; i < n; ++i) choice[i] = space.options[i][0];
    while (true) {
        visit(choice);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digit[i] < space.options[i].size()) {
                choice[i] = space.options[i][digit[i]];
                break;
            }
            digit[i] = 0;
            choice[i] = space.options[i][0];
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

void require_cap(const PolicySpace& space, std::uint64_t cap) {
    if (space.count > cap)
        throw Error(ErrorCode::space_too_large,
                    "policy space has " + std::to_string(space.count) + " members, cap is " + std::to_string(cap));
}

// Trajectory-tree evaluation over a scalar type (double or Rational).
template <typename Scalar>
class Tree {
public:
    Tree(const Mdp& mdp, const Reward& reward, const Discount& d)
        : mdp_(mdp), layers_(require_bounded(mdp)) {
        require_covers(d, layers_.horizon());
        const std::size_t S = mdp.num_states(), A = mdp.num_actions();
        rows_.resize(S * A);
        for (StateId s = 0; s < S; ++s)
            for (ActionId a : mdp.available(s))
                for (const auto& o : mdp.outcomes(s, a))
                    rows_[s * A + a].push_back({o.next, convert(o.probability), convert(reward(s, a, o.next))});
        for (std::size_t t = 0; t <= 2 * layers_.horizon() + 1; ++t) weights_.push_back(weight(d, t));
    }

    Scalar value(const Policy& pi, StateId s, std::size_t offset, std::size_t clock,
                 std::optional<ActionId> first = {}) const {
        if (mdp_.is_terminal(s)) return Scalar(0);
        if (first) return q(pi, s, mdp_.effective_action(s, *first), offset, clock);
        Scalar total(0);
        for (ActionId a : mdp_.available(s)) {
            const double p = pi(s, clock, a);
            if (p == 0.0) continue;
            total += convert(p) * q(pi, s, a, offset, clock);
        }
        return total;
    }

private:
    struct Edge {
        StateId next;
        Scalar probability;
        Scalar reward;
    };

    Scalar q(const Policy& pi, StateId s, ActionId a, std::size_t offset, std::size_t clock) const {
        const Scalar& w = offset < weights_.size() ? weights_[offset] : zero_;
        Scalar total(0);
        for (const Edge& e : rows_[s * mdp_.num_actions() + a])
            total += e.probability * (w * e.reward + value(pi, e.next, offset + 1, clock + 1));
        return total;
    }

    static Scalar convert(double x) {
        if constexpr (std::is_same_v<Scalar, double>) {
            return x;
        } else {
            return to_rational(x);
        }
    }

    static Scalar weight(const Discount& d, std::size_t t) {
        if constexpr (std::is_same_v<Scalar, double>) {
            return d(t);
        } else {
            auto w = exact_weight(d, t);
            if (!w) throw Error(ErrorCode::parameter_out_of_range, "discount has no exact weights");
            return *w;
        }
    }

    const Mdp& mdp_;
    LayerPartition layers_;
    std::vector<std::vector<Edge>> rows_;
    std::vector<Scalar> weights_;
    Scalar zero_{0};
};

template <typename Scalar>
bool at_least(const Scalar& v, const Scalar& best, double tol) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return v >= best - tol;
    } else {
        (void)tol;
        return v >= best;
    }
}

template <typename Scalar>
OracleClasses classes_with(const Mdp& mdp, const Reward& reward, const Discount& d, const OracleOptions& options) {
    const Tree<Scalar> tree(mdp, reward, d);
    OracleClasses out;
    out.exact = !std::is_same_v<Scalar, double>;
    out.timed_space = policy_space(mdp, SpaceKind::time_indexed);
    const PolicySpace& timed = out.timed_space;
    const PolicySpace stationary = policy_space(mdp, SpaceKind::stationary);
    require_cap(timed, options.cap);
    require_cap(stationary, options.cap);
    const std::size_t n_sites = timed.sites.size();

    auto site_values = [&](const Policy& pi) {
        std::vector<Scalar> v;
        v.reserve(n_sites);
        for (const auto& [s, t] : timed.sites) v.push_back(tree.value(pi, s, t, t));
        return v;
    };

    // Best value at each site over every time-indexed deterministic policy.
    std::vector<std::optional<Scalar>> best(n_sites);
    for_each_choice(timed, [&](const std::vector<ActionId>& choice) {
        const auto v = site_values(space_policy(mdp, timed, choice));
        for (std::size_t i = 0; i < n_sites; ++i)
            if (!best[i] || v[i] > *best[i]) best[i] = v[i];
    });

    std::vector<std::set<ActionId>> naive_actions(mdp.num_states());
    for_each_choice(timed, [&](const std::vector<ActionId>& choice) {
        const auto v = site_values(space_policy(mdp, timed, choice));
        bool resolute = true;
        for (std::size_t i = 0; i < n_sites; ++i) {
            const bool max_here = at_least(v[i], *best[i], options.tol);
            resolute = resolute && max_here;
            // A maximiser of the value from (s, offset 0) takes choice[i] first.
            if (timed.sites[i].second == 0 && max_here) naive_actions[timed.sites[i].first].insert(choice[i]);
        }
        if (resolute) out.resolute.push_back(choice);
    });
    for (const auto& acts : naive_actions) out.naive_actions.emplace_back(acts.begin(), acts.end());

    for_each_choice(stationary, [&](const std::vector<ActionId>& choice) {
        const Policy pi = space_policy(mdp, stationary, choice);
        bool naive = true;
        for (StateId s = 0; s < mdp.num_states(); ++s)
            naive = naive && std::binary_search(out.naive_actions[s].begin(), out.naive_actions[s].end(), choice[s]);
        if (naive) out.naive.push_back(choice);

        const auto v = site_values(pi);
        bool resolute = true;
        for (std::size_t i = 0; i < n_sites && resolute; ++i) resolute = at_least(v[i], *best[i], options.tol);
        if (resolute) out.resolute_stationary.push_back(choice);

        bool sophisticated = true;
        for (StateId s = 0; s < mdp.num_states() && sophisticated; ++s) {
            std::optional<Scalar> top;
            for (ActionId a : mdp.available(s)) {
                Scalar qa = tree.value(pi, s, 0, 0, a);
                if (!top || qa > *top) top = qa;
            }
            sophisticated = at_least(tree.value(pi, s, 0, 0, choice[s]), *top, options.tol);
        }
        if (sophisticated) out.sophisticated.push_back(choice);
    });
    return out;
}

template <typename Scalar>
std::vector<std::vector<ActionId>> optimal_with(const Mdp& mdp, const Reward& reward, const Discount& d,
                                                const OracleOptions& options) {
    const Tree<Scalar> tree(mdp, reward, d);
    const PolicySpace space = policy_space(mdp, SpaceKind::stationary);
    require_cap(space, options.cap);
    std::vector<std::optional<Scalar>> best(mdp.num_states());
    for_each_choice(space, [&](const std::vector<ActionId>& choice) {
        const Policy pi = space_policy(mdp, space, choice);
        for (StateId s = 0; s < mdp.num_states(); ++s) {
            Scalar v = tree.value(pi, s, 0, 0);
            if (!best[s] || v > *best[s]) best[s] = v;
        }
    });
    std::vector<std::vector<ActionId>> out;
    for_each_choice(space, [&](const std::vector<ActionId>& choice) {
        const Policy pi = space_policy(mdp, space, choice);
        bool ok = true;
        for (StateId s = 0; s < mdp.num_states() && ok; ++s) ok = at_least(tree.value(pi, s, 0, 0), *best[s], options.tol);
        if (ok) out.push_back(choice);
    });
    return out;
}

}  // namespace

void enumerate_policies(const Mdp& mdp, SpaceKind kind, const std::function<void(const std::vector<ActionId>&)>& visit,
                        std::uint64_t cap) {
    const PolicySpace space = policy_space(mdp, kind);
    require_cap(space, cap);
    for_each_choice(space, visit);
}

bool exact_inputs(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy* pi) {
    for (StateId s = 0; s < mdp.num_states(); ++s)
        for (ActionId a : mdp.available(s))
            for (const auto& o : mdp.outcomes(s, a))
                if (!has_small_denominator(o.probability) || !has_small_denominator(reward(s, a, o.next))) return false;
    if (pi)
        for (std::size_t t = 0; t < pi->num_times(); ++t)
            for (StateId s = 0; s < pi->num_states(); ++s)
                for (ActionId a = 0; a < pi->num_actions(); ++a)
                    if (!has_small_denominator((*pi)(s, t, a))) return false;
    const LayerPartition layers = require_bounded(mdp);
    for (std::size_t t = 0; t <= 2 * layers.horizon() + 1; ++t)
        if (!exact_weight(d, t)) return false;
    return true;
}

double exhaustive_value(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, StateId s,
                        std::size_t offset, std::size_t clock, std::optional<ActionId> first) {
    pi.check(mdp);
    return Tree<double>(mdp, reward, d).value(pi, s, offset, clock, first);
}

Rational exhaustive_value_exact(const Mdp& mdp, const Reward& reward, const Discount& d, const Policy& pi, StateId s,
                                std::size_t offset, std::size_t clock, std::optional<ActionId> first) {
    pi.check(mdp);
    if (!exact_inputs(mdp, reward, d, &pi))
        throw Error(ErrorCode::parameter_out_of_range, "inputs are not small-denominator rationals");
    return Tree<Rational>(mdp, reward, d).value(pi, s, offset, clock, first);
}

OracleClasses oracle_class_membership(const Mdp& mdp, const Reward& reward, const Discount& d,
                                      const OracleOptions& options) {
    if (exact_inputs(mdp, reward, d)) return classes_with<Rational>(mdp, reward, d, options);
    return classes_with<double>(mdp, reward, d, options);
}

std::vector<std::vector<ActionId>> oracle_optimal_set(const Mdp& mdp, const Reward& reward, const Discount& d,
                                                      const OracleOptions& options) {
    if (exact_inputs(mdp, reward, d)) return optimal_with<Rational>(mdp, reward, d, options);
    return optimal_with<double>(mdp, reward, d, options);
}

}  // namespace tirl
