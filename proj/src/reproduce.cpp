#include "tirl/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "tirl/behaviour.hpp"
#include "tirl/evaluation.hpp"
#include "tirl/probes.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/solvers.hpp"

namespace tirl {

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class TableBuilder {
public:
    explicit TableBuilder(std::string target) { table_.target = std::move(target); }

    void exact(std::string check, const Rational& expected, const Rational& actual) {
        table_.rows.push_back({std::move(check), to_string(expected), to_string(actual), expected == actual});
    }
    void close(std::string check, double expected, double actual, double tol) {
        std::string e = num(expected);
        if (tol > 0.0) e += " (tol " + num(tol) + ")";
        table_.rows.push_back({std::move(check), e, num(actual), std::abs(expected - actual) <= tol});
    }
    void close(std::string check, const Expected& expected, double actual, double floor = 1e-12) {
        close(std::move(check), expected.value, actual, std::max(expected.tolerance, floor));
    }
    void same(std::string check, const std::string& expected, const std::string& actual) {
        table_.rows.push_back({std::move(check), expected, actual, expected == actual});
    }
    void truth(std::string check, bool actual, bool expected = true) {
        table_.rows.push_back({std::move(check), expected ? "true" : "false", actual ? "true" : "false",
                               actual == expected});
    }
    // Runs `body`; an exception becomes a failing row instead of aborting the table.
    template <class F>
    void guarded(const std::string& check, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            table_.rows.push_back({check, "no error", e.what(), false});
        }
    }
    GoldenTable done() { return std::move(table_); }

private:
    GoldenTable table_;
};

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

std::vector<ActionId> ids(const Mdp& mdp, std::initializer_list<const char*> names) {
    std::vector<ActionId> out;
    for (const char* n : names) out.push_back(mdp.action_id(n));
    return out;
}

std::vector<ActionId> greedy_choice(const Policy& pi, std::size_t t = 0) {
    std::vector<ActionId> out;
    for (StateId s = 0; s < pi.num_states(); ++s) {
        const auto dist = pi.distribution(s, t);
        out.push_back(static_cast<ActionId>(std::max_element(dist.begin(), dist.end()) - dist.begin()));
    }
    return out;
}

std::string describe_set(const Mdp& mdp, const std::vector<std::vector<ActionId>>& set) {
    if (set.empty()) return "{}";
    std::string out;
    for (const auto& c : set) out += (out.empty() ? "{" : "; ") + describe_choice(mdp, c);
    return out + "}";
}

GoldenTable gym_table() {
    const Scenario sc = gym();
    const Mdp& m = sc.mdp;
    const auto& e = sc.expected;
    TableBuilder t("gym");

    // Returns of fixed action sequences, exact.
    auto g = [&](std::initializer_list<const char*> acts, StateId start) {
        std::vector<ActionId> choice{m.action_id("go_home"), m.action_id("go_home"), m.action_id("enjoy")};
        StateId s = start;
        for (const char* a : acts) choice[s++] = m.action_id(a);
        return exhaustive_value_exact(m, sc.reward, sc.discount, Policy::deterministic(m, choice), start);
    };
    t.exact("G(go_home)", R(0), g({"go_home"}, 0));
    t.exact("G(buy,go_home)", R(-1), g({"buy", "go_home"}, 0));
    t.exact("G(buy,exercise,enjoy)", R(1), g({"buy", "exercise", "enjoy"}, 0));
    t.exact("G_s1(go_home)", R(0), g({"go_home"}, 1));
    t.exact("G_s1(exercise,enjoy)", R(-1), g({"exercise", "enjoy"}, 1));

    const QTable qn = naive_q(m, sc.reward, sc.discount);
    t.close("QN(s0,buy)", e.at("QN(s0,buy)"), qn(0, m.action_id("buy")));
    t.close("QN(s0,go_home)", e.at("QN(s0,go_home)"), qn(0, m.action_id("go_home")));
    t.close("QN(s1,exercise)", e.at("QN(s1,exercise)"), qn(1, m.action_id("exercise")));
    t.close("QN(s1,go_home)", e.at("QN(s1,go_home)"), qn(1, m.action_id("go_home")));
    const TimedQTable qr = resolute_q(m, sc.reward, sc.discount);
    t.close("QR(s1,1,exercise)", e.at("QR(s1,1,exercise)"), qr(1, 1, m.action_id("exercise")));
    t.close("QR(s1,1,go_home)", e.at("QR(s1,1,go_home)"), qr(1, 1, m.action_id("go_home")));
    const auto soph = sophisticated_canonical(m, sc.reward, sc.discount);
    t.close("QS(s0,buy)", e.at("QS(s0,buy)"), soph.q(0, m.action_id("buy")));
    t.close("QS(s0,go_home)", e.at("QS(s0,go_home)"), soph.q(0, m.action_id("go_home")));
    const ValueTable w = optimal_offset_values(m, sc.reward, sc.discount);
    t.close("W(s1,1)", e.at("W(s1,1)"), w(1, 1));
    t.close("W(s1,0)", e.at("W(s1,0)"), w(1, 0));

    t.same("naive policy", "s0=buy s1=go_home s2=enjoy",
           describe_choice(m, greedy_choice(greedy_policy(m, qn))));
    t.same("sophisticated policy", "s0=go_home s1=go_home s2=enjoy", describe_choice(m, greedy_choice(soph.policy)));
    const Policy res = resolute_policy(m, qr);
    t.same("resolute (s0,0) then (s1,1)", "buy exercise",
           m.action_name(greedy_choice(res, 0)[0]) + " " + m.action_name(greedy_choice(res, 1)[1]));

    ModelSpec spec{Model::sophisticated, 1.0, sc.discount};
    const Policy boltz = apply_model(m, sc.reward, spec);
    t.close("boltzmann_sophisticated(s0,go_home)", e.at("boltzmann_sophisticated(s0,go_home)"),
            boltz(0, m.action_id("go_home")));
    t.close("J_undiscounted(buy,exercise)", e.at("J_undiscounted(buy,exercise)"),
            objective(m, sc.reward, Discount::exponential(1.0),
                      Policy::deterministic(m, ids(m, {"buy", "exercise", "enjoy"}))));
    t.close("horizon", e.at("horizon"), static_cast<double>(layer_partition(m).horizon()));

    const OracleClasses oc = oracle_class_membership(m, sc.reward, sc.discount);
    t.truth("oracle used rational arithmetic", oc.exact);
    t.same("oracle naive set", "{s0=buy s1=go_home s2=enjoy}", describe_set(m, oc.naive));
    t.same("oracle sophisticated set", "{s0=go_home s1=go_home s2=enjoy}", describe_set(m, oc.sophisticated));
    return t.done();
}

GoldenTable delay_table() {
    const Scenario sc = delay();
    const Mdp& m = sc.mdp;
    const auto& e = sc.expected;
    TableBuilder t("delay");
    const TimedQTable qr = resolute_q(m, sc.reward, sc.discount);
    t.close("QR(s2,0,a1)", e.at("QR(s2,0,a1)"), qr(2, 0, 0));
    t.close("QR(s2,0,a2)", e.at("QR(s2,0,a2)"), qr(2, 0, 1));
    t.close("QR(s2,2,a1)", e.at("QR(s2,2,a1)"), qr(2, 2, 0));
    t.close("QR(s2,2,a2)", e.at("QR(s2,2,a2)"), qr(2, 2, 1));
    const Policy res = resolute_policy(m, qr);
    t.same("resolute action at (s2,0)", "a1", m.action_name(greedy_choice(res, 0)[2]));
    t.same("resolute action at (s2,2)", "a2", m.action_name(greedy_choice(res, 2)[2]));
    const OracleClasses oc = oracle_class_membership(m, sc.reward, sc.discount);
    t.truth("oracle used rational arithmetic", oc.exact);
    t.same("stationary resolute policies", "{}", describe_set(m, oc.resolute_stationary));
    t.truth("time-indexed resolute policy exists", !oc.resolute.empty());
    t.close("horizon", e.at("horizon"), static_cast<double>(layer_partition(m).horizon()));
    return t.done();
}

GoldenTable crossroads_table() {
    const Scenario sc = crossroads();
    const Mdp& m = sc.mdp;
    TableBuilder t("crossroads");
    const Policy left = Policy::deterministic(m, std::vector<ActionId>(4, 0));
    const Policy right = Policy::deterministic(m, std::vector<ActionId>(4, 1));
    const Policy mix = Policy::uniform(m);
    auto q = [&](const Policy& pi, const char* a) {
        return exhaustive_value_exact(m, sc.reward, sc.discount, pi, 0, 0, 0, m.action_id(a));
    };
    t.exact("Q_left(s0,left)", R(2, 3), q(left, "left"));
    t.exact("Q_right(s0,left)", R(1, 2), q(right, "left"));
    t.exact("Q_pi3(s0,left)", R(7, 12), q(mix, "left"));
    t.exact("Q_pi3(s0,right)", R(1, 2), q(mix, "right"));
    const auto soph = sophisticated_canonical(m, sc.reward, sc.discount);
    t.close("QS(s1,left)", sc.expected.at("QS(s1,left)"), soph.q(1, 0));
    t.close("QS(s1,right)", sc.expected.at("QS(s1,right)"), soph.q(1, 1));
    t.truth("always-left is sophisticated", is_sophisticated(m, sc.reward, sc.discount, left).ok);
    t.truth("always-right is sophisticated", is_sophisticated(m, sc.reward, sc.discount, right).ok);
    t.truth("50/50 mix is sophisticated", is_sophisticated(m, sc.reward, sc.discount, mix).ok, false);
    return t.done();
}

GoldenTable tempt_table() {
    const Scenario sc = tempt();
    const Mdp& m = sc.mdp;
    const auto& e = sc.expected;
    TableBuilder t("tempt");
    t.same("episodicity", "unbounded", std::string(to_string(validate(m).kind)));
    const Policy up = Policy::deterministic(m, std::vector<ActionId>(m.num_states(), 0));
    const Policy down = Policy::deterministic(m, std::vector<ActionId>(m.num_states(), 1));
    constexpr double eps = 1e-6;
    t.guarded("truncated evaluation", [&] {
        const TruncatedValues vu = truncated_policy_value(m, sc.reward, sc.discount, up, 0, eps);
        const TruncatedValues vd = truncated_policy_value(m, sc.reward, sc.discount, down, 0, eps);
        t.close("Q_up(s0,up)", e.at("Q_up(s0,up)"), vu.q(0, 0));
        t.close("Q_up(s0,down)", e.at("Q_up(s0,down)"), vu.q(0, 1));
        t.close("Q_down(s0,up)", e.at("Q_down(s0,up)"), vd.q(0, 0));
        t.close("Q_down(s0,down)", e.at("Q_down(s0,down)"), vd.q(0, 1));
        t.truth("certified tail bound <= 1e-6", vu.error_bound <= eps && vd.error_bound <= eps);
    });
    t.guarded("sophistication checks", [&] {
        t.truth("always-up is sophisticated", is_sophisticated(m, sc.reward, sc.discount, up).ok, false);
        t.truth("always-down is sophisticated", is_sophisticated(m, sc.reward, sc.discount, down).ok, false);
    });
    return t.done();
}

GoldenTable equivalence_table() {
    TableBuilder t("equivalence");
    for (double gamma : {0.3, 0.7, 1.0}) {
        ArgmaxAgreement total;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomMdpOptions o;
            o.num_states = 2 + seed % 3;
            o.num_actions = 2 + seed % 2;
            const Scenario sc = random_mdp(seed, o);
            const ArgmaxAgreement a = exponential_argmax_agreement(sc.mdp, sc.reward, Discount::exponential(gamma));
            total.sites += a.sites;
            total.violations += a.violations;
        }
        t.same("argmax disagreements, 20 MDPs, gamma " + num(gamma), "0", std::to_string(total.violations));
    }
    return t.done();
}

GoldenTable chain_table() {
    TableBuilder t("chain");
    const Mdp chain = build_chain_mdp(4);
    const Reward r1(chain);
    const Discount d1 = Discount::hyperbolic(1.0), d2 = Discount::exponential(0.5);
    ProbeOptions opts;
    opts.flip_gamma = 0.5;
    const ProbeResult res = chain_counterexample(chain, r1, d1, d2, 2, 1.0, opts);
    for (Model f : {Model::resolute, Model::naive, Model::sophisticated})
        for (Model g : {Model::resolute, Model::naive, Model::sophisticated})
            t.truth("source " + std::string(to_string(f)) + ", target " + std::string(to_string(g)),
                    res.report.pair_succeeds(f, g));
    t.truth("optimal flip found", res.report.optimal_flip.has_value());
    t.guarded("flip threshold", [&] {
        const double x = optimal_flip_x(chain, r1, d1, 2, 0.5);
        t.truth("flip x is positive (d1(2) > 0.25)", x > 0.0);
    });
    bool degenerate = false;
    try {
        chain_counterexample(chain, r1, d1, d1, 2);
    } catch (const Error& err) {
        degenerate = err.code() == ErrorCode::degenerate_discount;
    }
    t.truth("equal discounts rejected", degenerate);
    return t.done();
}

GoldenTable controllable_table() {
    TableBuilder t("controllable");
    const Scenario sc = gym();
    const Discount d1 = Discount::hyperbolic(1.0);
    const ProbeResult res = controllable_counterexample(sc.mdp, sc.reward, d1, Discount::exponential(0.9));
    t.same("surgery state", "s1",
           res.report.parameters.controlled_state ? sc.mdp.state_name(*res.report.parameters.controlled_state) : "none");
    t.truth("equal under source", res.report.equal_under_source());
    t.truth("differ under target", res.report.differ_under_target());
    const ProbeResult same = controllable_counterexample(sc.mdp, sc.reward, d1, Discount::exponential(0.5));
    t.truth("equal under source, d2(1) = d1(1)", same.report.equal_under_source());
    t.truth("differ under target, d2(1) = d1(1)", same.report.differ_under_target(), false);
    return t.done();
}

GoldenTable limits_table() {
    TableBuilder t("limits");
    const Scenario sc = gym();
    const Mdp& m = sc.mdp;
    const Policy pi1 = Policy::deterministic(m, ids(m, {"buy", "exercise", "enjoy"}));
    const Policy pi2 = Policy::deterministic(m, ids(m, {"go_home", "go_home", "enjoy"}));
    std::vector<double> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
    const LimitProbe p = limit_threshold_probe(m, sc.reward, pi1, pi2, 1.0, grid);
    t.close("undiscounted gap", 13.0, p.undiscounted_gap, 1e-12);
    t.same("shift threshold N", "0", p.shift_threshold ? std::to_string(*p.shift_threshold) : "none");
    // The gap under gamma is 30 g^2 - 16 g - 1; its positive root is ~0.5898.
    const double root = (16.0 + std::sqrt(16.0 * 16.0 + 4.0 * 30.0)) / 60.0;
    const double expected_gamma = std::ceil(root * 100.0) / 100.0;
    t.close("gamma threshold", expected_gamma, p.gamma_threshold.value_or(-1.0), 1e-12);
    return t.done();
}

}  // namespace

bool GoldenTable::passed() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const GoldenRow& r) { return r.pass; });
}

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> targets{"gym",   "delay",        "crossroads", "tempt",
                                                  "equivalence", "chain", "controllable", "limits"};
    return targets;
}

GoldenTable reproduce(std::string_view target) {
    if (target == "gym") return gym_table();
    if (target == "delay") return delay_table();
    if (target == "crossroads") return crossroads_table();
    if (target == "tempt") return tempt_table();
    if (target == "equivalence") return equivalence_table();
    if (target == "chain") return chain_table();
    if (target == "controllable") return controllable_table();
    if (target == "limits") return limits_table();
    throw Error(ErrorCode::parameter_out_of_range, "unknown reproduce target \"" + std::string(target) + "\"");
}

std::string render(const GoldenTable& table) {
    std::size_t wc = 5, we = 8;
    for (const auto& r : table.rows) {
        wc = std::max(wc, r.check.size());
        we = std::max(we, r.expected.size());
    }
    std::ostringstream out;
    out << "== " << table.target << "\n";
    for (const auto& r : table.rows) {
        out << (r.pass ? "PASS  " : "FAIL  ") << r.check << std::string(wc - r.check.size() + 2, ' ') << "expected "
            << r.expected << std::string(we - r.expected.size() + 2, ' ') << "got " << r.actual << "\n";
    }
    out << table.target << ": " << (table.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string describe_choice(const Mdp& mdp, const std::vector<ActionId>& choice) {
    std::string out;
    for (StateId s = 0; s < choice.size() && s < mdp.num_states(); ++s) {
        if (!out.empty()) out += ' ';
        out += mdp.state_name(s) + "=" + mdp.action_name(choice[s]);
    }
    return out;
}

ArgmaxAgreement exponential_argmax_agreement(const Mdp& mdp, const Reward& reward, const Discount& d,
                                             double tie_eps) {
    ArgmaxAgreement out;
    const std::size_t S = mdp.num_states();
    std::vector<std::set<ActionId>> optimal(S);
    for (const auto& choice : oracle_optimal_set(mdp, reward, d))
        for (StateId s = 0; s < S; ++s) optimal[s].insert(choice[s]);

    auto check = [&](const std::string& what, StateId s, std::span<const double> q, double scale) {
        ++out.sites;
        const auto best = near_argmax(mdp, s, q, tie_eps * scale);
        if (std::set<ActionId>(best.begin(), best.end()) != optimal[s]) {
            if (out.violations++ == 0) out.first_violation = what + " at " + mdp.state_name(s);
        }
    };

    const LayerPartition layers = layer_partition(mdp);
    const auto feasible = feasible_sites(mdp, layers);
    const TimedQTable qr = resolute_q(mdp, reward, d);
    for (StateId s = 0; s < S; ++s)
        for (std::size_t t = 0; t < qr.num_times(); ++t)
            if (feasible[s][t]) check("Q^R(t=" + std::to_string(t) + ")", s, qr.row(s, t), std::max(d(t), 1e-300));
    const QTable qn = naive_q(mdp, reward, d);
    const auto soph = sophisticated_canonical(mdp, reward, d, tie_eps);
    for (StateId s = 0; s < S; ++s) {
        check("Q^N", s, qn.row(s), 1.0);
        check("Q^S", s, soph.q.row(s), 1.0);
    }
    return out;
}


OracleAgreement solver_oracle_agreement(const Mdp& mdp, const Reward& reward, const Discount& d, bool values,
                                        bool classes, std::uint64_t cap) {
    OracleAgreement out;
    const std::size_t S = mdp.num_states();
    out.exact = exact_inputs(mdp, reward, d);

    if (values) {
        auto compare = [&](const Policy& pi) {
            const ValueTable v = policy_value(mdp, reward, d, pi);
            for (StateId s = 0; s < S; ++s)
                out.max_value_gap = std::max(out.max_value_gap, std::abs(exhaustive_value(mdp, reward, d, pi, s) - v(s, 0)));
            ++out.policies_valued;
        };
        enumerate_policies(mdp, SpaceKind::stationary,
                           [&](const std::vector<ActionId>& c) { compare(Policy::deterministic(mdp, c)); }, cap);
        compare(Policy::uniform(mdp));
        compare(resolute_policy(mdp, resolute_q(mdp, reward, d)));
    }
    if (!classes) return out;

    OracleOptions options;
    options.cap = cap;
    const OracleClasses oc = oracle_class_membership(mdp, reward, d, options);
    out.exact = oc.exact;
    auto mismatch = [&](const std::string& what) {
        if (out.class_mismatches++ == 0) out.first_mismatch = what;
    };
    auto member = [](const std::vector<std::vector<ActionId>>& set, const std::vector<ActionId>& c) {
        return std::find(set.begin(), set.end(), c) != set.end();
    };
    enumerate_policies(mdp, SpaceKind::stationary, [&](const std::vector<ActionId>& c) {
        const Policy pi = Policy::deterministic(mdp, c);
        const std::string name = describe_choice(mdp, c);
        out.memberships_checked += 3;
        if (is_naive(mdp, reward, d, pi).ok != member(oc.naive, c)) mismatch("naive: " + name);
        if (is_sophisticated(mdp, reward, d, pi).ok != member(oc.sophisticated, c)) mismatch("sophisticated: " + name);
        if (is_resolute(mdp, reward, d, pi).ok != member(oc.resolute_stationary, c))
            mismatch("stationary resolute: " + name);
    }, cap);
    // Oracle sets come out in enumeration order, so one forward scan suffices.
    std::size_t next = 0;
    enumerate_policies(mdp, SpaceKind::time_indexed, [&](const std::vector<ActionId>& c) {
        const bool oracle = next < oc.resolute.size() && oc.resolute[next] == c;
        if (oracle) ++next;
        ++out.memberships_checked;
        if (is_resolute(mdp, reward, d, space_policy(mdp, oc.timed_space, c)).ok != oracle)
            mismatch("time-indexed resolute policy #" + std::to_string(out.memberships_checked));
    }, cap);
    return out;
}

}  // namespace tirl
