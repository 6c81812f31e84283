#include "support.hpp"

#include "tirl/behaviour.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/solvers.hpp"

using namespace tirl;

namespace {

double q_gap(const QTable& q1, const QTable& q2, const Mdp& m, const Potential& phi) {
    double worst = 0.0;
    for (StateId s = 0; s < m.num_states(); ++s)
        for (ActionId a : m.available(s)) worst = std::max(worst, std::abs(q2(s, a) - (q1(s, a) - phi[s])));
    return worst;
}

}  // namespace

TEST_CASE("naive shaping on the gym") {
    const Scenario g = gym();
    const Potential phi{0.5, -2.0, 1.0};
    const Reward r2 = apply_naive_shaping(g.mdp, g.reward, g.discount, phi);
    const QTable q1 = naive_q(g.mdp, g.reward, g.discount), q2 = naive_q(g.mdp, r2, g.discount);
    CHECK(q_gap(q1, q2, g.mdp, phi) <= 1e-12);
    // Bottom layer first: R2(s2, enjoy, T) = 30 - 1.
    CHECK(r2(2, g.mdp.action_id("enjoy"), g.mdp.terminal()) == doctest::Approx(29.0));
    const auto back = check_shaping_equivalence(g.mdp, g.discount, g.reward, r2, Model::naive);
    REQUIRE(back.has_value());
    for (StateId s = 0; s < 3; ++s) CHECK((*back)[s] == doctest::Approx(phi[s]));
}

TEST_CASE("sophisticated shaping shifts Q^S by the potential") {
    for (const Scenario& sc : {gym(), crossroads(), delay()}) {
        CAPTURE(sc.name);
        Potential phi(sc.mdp.num_states());
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 0.25 * static_cast<double>(i) - 0.5;
        const Reward r3 = apply_sophisticated_shaping(sc.mdp, sc.reward, sc.discount, phi);
        const auto s1 = sophisticated_canonical(sc.mdp, sc.reward, sc.discount);
        const auto s3 = sophisticated_canonical(sc.mdp, r3, sc.discount);
        CHECK(q_gap(s1.q, s3.q, sc.mdp, phi) <= 1e-9);
        CHECK(policies_equal(s1.policy, s3.policy).equal);
    }
}

TEST_CASE("classic shaping under exponential discounting is a naive shift") {
    for_seeds(20, [](std::uint64_t seed) {
        gen::Rng rng(300 + seed);
        const Mdp m = gen::bounded_mdp(rng, {4, 2});
        const Reward r = gen::reward(rng, m);
        const double gamma = rng.uniform(0.3, 1.0);
        const Potential phi = gen::potential(rng, 4);
        const Reward shaped = apply_classic_shaping(r, phi, gamma);
        const Discount d = Discount::exponential(gamma);
        const auto back = check_shaping_equivalence(m, d, r, shaped, Model::naive);
        REQUIRE(back.has_value());
        for (StateId s = 0; s < 4; ++s) CHECK((*back)[s] == doctest::Approx(phi[s]));
    });
}

TEST_CASE("perturbed rewards are not shaping-equivalent") {
    const Scenario g = gym();
    Reward r2 = g.reward;
    r2.at(1, g.mdp.action_id("exercise"), 2) += 0.5;
    CHECK_FALSE(check_shaping_equivalence(g.mdp, g.discount, g.reward, r2, Model::naive).has_value());
    CHECK_FALSE(check_shaping_equivalence(g.mdp, g.discount, g.reward, r2, Model::sophisticated).has_value());
    CHECK_ERROR_CODE(check_shaping_equivalence(g.mdp, g.discount, g.reward, r2, Model::resolute),
                     ErrorCode::parameter_out_of_range);
}

TEST_CASE("potential validation") {
    const Scenario g = gym();
    CHECK_ERROR_CODE(apply_naive_shaping(g.mdp, g.reward, g.discount, {1.0}), ErrorCode::parameter_out_of_range);
    CHECK_ERROR_CODE(apply_naive_shaping(g.mdp, g.reward, g.discount, {1.0, NAN, 0.0}), ErrorCode::parameter_out_of_range);
    const Scenario t = tempt();
    CHECK_ERROR_CODE(apply_naive_shaping(t.mdp, t.reward, t.discount, Potential(t.mdp.num_states(), 0.0)),
                     ErrorCode::not_bounded_episodic);
}

TEST_CASE("classic shaping leaves terminal potential at zero") {
    const Scenario g = gym();
    const Reward s = apply_classic_shaping(g.reward, {1.0, 2.0, 3.0}, 0.5);
    CHECK(s(2, g.mdp.action_id("enjoy"), g.mdp.terminal()) == doctest::Approx(30.0 - 3.0));
    CHECK(s(0, g.mdp.action_id("buy"), 1) == doctest::Approx(-1.0 + 0.5 * 2.0 - 1.0));
}
