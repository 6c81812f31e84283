#include "support.hpp"

#include "tirl/evaluation.hpp"
#include "tirl/oracle.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/solvers.hpp"

using namespace tirl;

TEST_CASE("exact conversions") {
    CHECK(to_string(to_rational(0.75)) == "3/4");
    CHECK(to_string(to_rational(-6.0)) == "-6");
    CHECK(to_string(to_rational(0.0)) == "0");
    CHECK(to_rational(0.1) != Rational(1, 10));
    CHECK_ERROR_CODE(to_rational(INFINITY), ErrorCode::parameter_out_of_range);

    CHECK(has_small_denominator(0.375));
    CHECK(has_small_denominator(1e6));
    CHECK_FALSE(has_small_denominator(0.1));
    CHECK_FALSE(has_small_denominator(std::ldexp(1.0, -21)));

    CHECK(*exact_weight(Discount::hyperbolic(1), 2) == Rational(1, 3));
    CHECK(*exact_weight(Discount::exponential(0.5), 3) == Rational(1, 8));
    CHECK(*exact_weight(Discount::bounded_planning(2), 3) == 0);
    CHECK(*exact_weight(Discount::table({1.0, 0.25}), 5) == 0);
    CHECK_FALSE(exact_weight(Discount::exponential(0.9), 1).has_value());
}

TEST_CASE("policy spaces of the gym") {
    const Scenario g = gym();
    const PolicySpace st = policy_space(g.mdp, SpaceKind::stationary);
    CHECK(st.count == 4);
    // Every state is feasible at t = 0, then s1 and s2 at t = 1 and s2 at t = 2.
    const PolicySpace ti = policy_space(g.mdp, SpaceKind::time_indexed);
    CHECK(ti.count == 8);
    CHECK(ti.sites.size() == 6);

    std::vector<std::vector<ActionId>> seen;
    enumerate_policies(g.mdp, SpaceKind::stationary, [&](const std::vector<ActionId>& c) { seen.push_back(c); });
    REQUIRE(seen.size() == 4);
    CHECK(seen.front() == std::vector<ActionId>{0, 1, 2});
    CHECK(seen.back() == std::vector<ActionId>{3, 3, 2});
    CHECK_ERROR_CODE(enumerate_policies(g.mdp, SpaceKind::time_indexed, [](const auto&) {}, 7), ErrorCode::space_too_large);

    CHECK_ERROR_CODE(policy_space(tempt().mdp, SpaceKind::time_indexed), ErrorCode::not_bounded_episodic);
}

TEST_CASE("exhaustive values on the examples") {
    const Scenario c = crossroads();
    const Mdp& m = c.mdp;
    const Policy mix = Policy::uniform(m);
    CHECK(exhaustive_value_exact(m, c.reward, c.discount, mix, 0, 0, 0, ActionId{0}) == Rational(7, 12));
    CHECK(exhaustive_value(m, c.reward, c.discount, mix, 0, 0, 0, ActionId{0}) == doctest::Approx(7.0 / 12.0));
    CHECK(exact_inputs(m, c.reward, c.discount, &mix));

    const Scenario g = gym();
    const Policy work = Policy::deterministic(g.mdp, {0, 1, 2});
    CHECK(exhaustive_value_exact(g.mdp, g.reward, g.discount, work, 0) == 1);
    CHECK(exhaustive_value_exact(g.mdp, g.reward, g.discount, work, 1, 1) == 2);
    CHECK(exhaustive_value_exact(g.mdp, g.reward, g.discount, work, 1) == -1);

    const Reward odd = [&] {
        Reward r = g.reward;
        r.set(0, 0, 1, 0.1);
        return r;
    }();
    CHECK_FALSE(exact_inputs(g.mdp, odd, g.discount));
    CHECK_ERROR_CODE(exhaustive_value_exact(g.mdp, odd, g.discount, work, 0), ErrorCode::parameter_out_of_range);
}

TEST_CASE("oracle classes on the gym") {
    const Scenario g = gym();
    const OracleClasses oc = oracle_class_membership(g.mdp, g.reward, g.discount);
    CHECK(oc.exact);
    // Naive: buy at s0 but go home at s1.
    CHECK(oc.naive == std::vector<std::vector<ActionId>>{{0, 3, 2}});
    // Sophisticated: go home right away.
    CHECK(oc.sophisticated == std::vector<std::vector<ActionId>>{{3, 3, 2}});
    // Resolute: buy, then exercise at t = 1 but go home if s1 is the start.
    REQUIRE(oc.resolute.size() == 1);
    CHECK(oc.resolute_stationary.empty());
    CHECK(oc.naive_actions[0] == std::vector<ActionId>{0});

    // The optimal stationary policy under gamma = 1 works out.
    CHECK(oracle_optimal_set(g.mdp, g.reward, Discount::exponential(1.0)) == std::vector<std::vector<ActionId>>{{0, 1, 2}});
}

TEST_CASE("oracle agrees with the solvers on random environments") {
    for_seeds(15, [](std::uint64_t seed) {
        gen::Rng rng(400 + seed);
        const Mdp m = gen::bounded_mdp(rng, {3, 2, 2, 0.75, true});
        const Reward r = gen::reward(rng, m, true);
        const Discount d = Discount::hyperbolic(1.0);
        const OracleClasses oc = oracle_class_membership(m, r, d);
        CHECK(oc.exact);
        const PolicySpace st = policy_space(m, SpaceKind::stationary);
        std::size_t naive = 0, soph = 0;
        enumerate_policies(m, SpaceKind::stationary, [&](const std::vector<ActionId>& c) {
            const Policy pi = space_policy(m, st, c);
            naive += is_naive(m, r, d, pi).ok;
            soph += is_sophisticated(m, r, d, pi).ok;
        });
        CHECK(naive == oc.naive.size());
        CHECK(soph == oc.sophisticated.size());
        CHECK_FALSE(oc.sophisticated.empty());
    });
}
