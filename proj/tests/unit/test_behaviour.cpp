#include "support.hpp"

#include "tirl/behaviour.hpp"
#include "tirl/scenarios.hpp"

using namespace tirl;

TEST_CASE("softmax") {
    const std::vector<double> v{0.0, 1.0};
    const auto p = softmax(v, 1.0);
    CHECK(p[1] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(p[0] + p[1] == doctest::Approx(1.0));
    // Huge values do not overflow thanks to the max shift.
    const auto q = softmax(std::vector<double>{1e6, 1e6 + 1.0}, 1.0);
    CHECK(q[1] == doctest::Approx(p[1]));
    const auto hot = softmax(v, 0.0);
    CHECK(hot[0] == 0.5);
}

TEST_CASE("Boltzmann policies of each model on the gym") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    const ActionId home = m.action_id("go_home"), buy = m.action_id("buy");

    const Policy soph = apply_model(m, g.reward, {Model::sophisticated, 1.0, g.discount});
    CHECK(soph(0, home) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(soph(0, m.action_id("enjoy")) == 0.0);

    const Policy naive = apply_model(m, g.reward, {Model::naive, 2.0, g.discount});
    CHECK(naive(0, buy) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));

    const Policy res = apply_model(m, g.reward, {Model::resolute, 1.0, g.discount});
    CHECK(res.kind() == PolicyKind::time_indexed);
    CHECK(res.num_times() == 3);
    CHECK(res(1, 1, m.action_id("exercise")) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
    CHECK(res(2, 2, m.action_id("enjoy")) == 1.0);

    CHECK_ERROR_CODE(apply_model(m, g.reward, {Model::naive, -1.0, g.discount}), ErrorCode::parameter_out_of_range);
}

TEST_CASE("model names") {
    CHECK(parse_model("resolute") == Model::resolute);
    CHECK(to_string(Model::sophisticated) == "sophisticated");
    CHECK_ERROR_CODE(parse_model("greedy"), ErrorCode::parameter_out_of_range);
}

TEST_CASE("policy comparison") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    const Policy a = Policy::uniform(m);
    Policy b = a;
    CHECK(policies_equal(a, b).equal);
    b.set(1, 0, m.action_id("exercise"), 0.7);
    b.set(1, 0, m.action_id("go_home"), 0.3);
    const PolicyComparison c = policies_equal(a, b);
    CHECK_FALSE(c.equal);
    CHECK(c.state == StateId{1});
    CHECK(c.deviation == doctest::Approx(0.2));
    CHECK(policies_equal(a, b, 0.25).equal);

    std::vector<std::vector<bool>> mask{{true}, {false}, {true}};
    CHECK(policies_equal(a, b, 1e-9, &mask).equal);

    CHECK_ERROR_CODE(policies_equal(a, a.as_time_indexed(2)), ErrorCode::incomparable_kinds);
    CHECK_ERROR_CODE(policies_equal(a, Policy::uniform(delay().mdp)), ErrorCode::incomparable_kinds);
}

TEST_CASE("policy validation") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    Policy p = Policy::stationary(m.num_states(), m.num_actions());
    CHECK_ERROR_CODE(p.check(m), ErrorCode::invalid_policy);  // all zeros
    p = Policy::uniform(m);
    CHECK_NOTHROW(p.check(m));
    p.set(0, 0, m.action_id("enjoy"), 0.5);
    p.set(0, 0, m.action_id("buy"), 0.0);
    CHECK_ERROR_CODE(p.check(m), ErrorCode::invalid_policy);  // mass on an unavailable action
    CHECK_ERROR_CODE(Policy::deterministic(m, std::vector<ActionId>{0, 0, 0}), ErrorCode::invalid_policy);
    CHECK_ERROR_CODE(Policy::time_indexed(3, 4, 0), ErrorCode::invalid_policy);
    const Policy ti = Policy::uniform(m).as_time_indexed(4);
    CHECK(ti(0, 9, m.action_id("buy")) == 0.5);  // past the last slice
}
