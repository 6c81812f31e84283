#include "support.hpp"

#include "tirl/evaluation.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/solvers.hpp"

using namespace tirl;

TEST_CASE("gym Q-functions") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    const ActionId buy = m.action_id("buy"), ex = m.action_id("exercise"), home = m.action_id("go_home");

    const QTable qn = naive_q(m, g.reward, g.discount);
    CHECK(qn(0, buy) == doctest::Approx(1.0));
    CHECK(qn(0, home) == 0.0);
    CHECK(qn(1, ex) == doctest::Approx(-1.0));

    const TimedQTable qr = resolute_q(m, g.reward, g.discount);
    CHECK(qr(1, 1, ex) == doctest::Approx(2.0));
    CHECK(qr(0, 0, buy) == doctest::Approx(1.0));
    const TimedQTable lit = resolute_q(m, g.reward, g.discount, QConvention::literal);
    CHECK(lit(1, 1, ex) == doctest::Approx(-6.0));  // -16 + 30 d(2), hand computed

    const SophisticatedSolution s = sophisticated_canonical(m, g.reward, g.discount);
    CHECK(s.q(0, buy) == doctest::Approx(-1.0));
    CHECK(s.q(0, home) == 0.0);
    CHECK(s.policy(0, home) == 1.0);
    CHECK(s.policy(1, home) == 1.0);
}

TEST_CASE("resolute policies are time-indexed") {
    const Scenario dl = delay();
    const Mdp& m = dl.mdp;
    const TimedQTable q = resolute_q(m, dl.reward, dl.discount);
    CHECK(q(2, 0, 0) == doctest::Approx(2.0));
    CHECK(q(2, 0, 1) == doctest::Approx(1.5));
    CHECK(q(2, 2, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(q(2, 2, 1) == doctest::Approx(0.75));
    const Policy res = resolute_policy(m, q);
    CHECK(res.kind() == PolicyKind::time_indexed);
    CHECK(res(2, 0, 0) == 1.0);
    CHECK(res(2, 2, 1) == 1.0);
    CHECK(is_resolute(m, dl.reward, dl.discount, res).ok);

    for (ActionId a : {ActionId{0}, ActionId{1}}) {
        const Verdict v = is_resolute(m, dl.reward, dl.discount, Policy::deterministic(m, std::vector<ActionId>(5, a)));
        CHECK_FALSE(v.ok);
        CHECK(v.state == StateId{2});
        CHECK(v.shortfall > 0.0);
    }
}

TEST_CASE("naive membership") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    const Policy naive = greedy_policy(m, naive_q(m, g.reward, g.discount));
    CHECK(naive(0, m.action_id("buy")) == 1.0);
    CHECK(naive(1, m.action_id("go_home")) == 1.0);
    CHECK(is_naive(m, g.reward, g.discount, naive).ok);
    const Verdict v = is_naive(m, g.reward, g.discount, sophisticated_canonical(m, g.reward, g.discount).policy);
    CHECK_FALSE(v.ok);
    CHECK(v.state == StateId{0});
    CHECK(v.shortfall == doctest::Approx(1.0));
}

TEST_CASE("canonical and deterministic sophisticated solutions") {
    const Scenario c = crossroads();
    const Mdp& m = c.mdp;
    const SophisticatedSolution can = sophisticated_canonical(m, c.reward, c.discount);
    CHECK(can.policy(1, 0) == 0.5);
    CHECK(can.policy(1, 1) == 0.5);
    CHECK(can.q(0, 0) == doctest::Approx(7.0 / 12.0));
    CHECK(can.policy(0, 0) == 1.0);
    const SophisticatedSolution det = sophisticated_deterministic(m, c.reward, c.discount);
    CHECK(det.policy(1, 0) == 1.0);
    CHECK(det.q(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(is_sophisticated(m, c.reward, c.discount, can.policy).ok);
    CHECK(is_sophisticated(m, c.reward, c.discount, det.policy).ok);
    const Verdict mix = is_sophisticated(m, c.reward, c.discount, Policy::uniform(m));
    CHECK_FALSE(mix.ok);
    CHECK(mix.state == StateId{0});
    CHECK(mix.action == ActionId{1});
    CHECK(mix.shortfall == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("sophistication on the unbounded example") {
    const Scenario t = tempt();
    const Mdp& m = t.mdp;
    const Policy up = Policy::deterministic(m, std::vector<ActionId>(m.num_states(), 0));
    const Policy down = Policy::deterministic(m, std::vector<ActionId>(m.num_states(), 1));
    const Verdict vu = is_sophisticated(m, t.reward, t.discount, up);
    CHECK_FALSE(vu.ok);
    CHECK(vu.state == StateId{0});
    CHECK(vu.shortfall == doctest::Approx(10.0 / 3.0 - 3.0083).epsilon(1e-3));
    const Verdict vd = is_sophisticated(m, t.reward, t.discount, down);
    CHECK_FALSE(vd.ok);
    CHECK(vd.shortfall == doctest::Approx(4.09375 - 10.0 / 3.0).epsilon(1e-9));

    // A tie tolerance equal to the shortfall sits inside the undecidable band.
    CHECK_ERROR_CODE(is_sophisticated(m, t.reward, t.discount, down, vd.shortfall), ErrorCode::tolerance_too_tight);
    CHECK(is_sophisticated(m, t.reward, t.discount, down, 2.0).ok);

    CHECK_ERROR_CODE(is_sophisticated(m, t.reward, t.discount, up.as_time_indexed(3)), ErrorCode::invalid_policy);
}

TEST_CASE("bounded-only solvers reject cycles") {
    const Scenario t = tempt();
    CHECK_ERROR_CODE(resolute_q(t.mdp, t.reward, t.discount), ErrorCode::not_bounded_episodic);
    CHECK_ERROR_CODE(naive_q(t.mdp, t.reward, t.discount), ErrorCode::not_bounded_episodic);
    CHECK_ERROR_CODE(sophisticated_canonical(t.mdp, t.reward, t.discount), ErrorCode::not_bounded_episodic);
}

TEST_CASE("conventions and argmax helpers") {
    CHECK(parse_convention("literal") == QConvention::literal);
    CHECK(to_string(QConvention::time_weighted) == "time_weighted");
    CHECK_ERROR_CODE(parse_convention("weighted"), ErrorCode::parameter_out_of_range);

    const Scenario g = gym();
    const std::vector<double> q{1.0, 5.0, 9.0, 1.0 - 1e-10};  // exercise and enjoy are unavailable at s0
    CHECK(near_argmax(g.mdp, 0, q, 1e-9) == std::vector<ActionId>{0, 3});
    CHECK(near_argmax(g.mdp, 0, q, 1e-11) == std::vector<ActionId>{0});
}

TEST_CASE("table discounts must cover the horizon") {
    const Scenario g = gym();
    CHECK_ERROR_CODE(resolute_q(g.mdp, g.reward, Discount::table({1.0, 0.5})), ErrorCode::parameter_out_of_range);
    CHECK_NOTHROW(resolute_q(g.mdp, g.reward, Discount::table({1.0, 0.5, 0.25})));
}
