#include "support.hpp"

#include "tirl/behaviour.hpp"
#include "tirl/evaluation.hpp"
#include "tirl/oracle.hpp"
#include "tirl/probes.hpp"
#include "tirl/reproduce.hpp"
#include "tirl/solvers.hpp"

using namespace tirl;

// Random environment, reward and discount from one seed.
struct Case {
    Mdp mdp;
    Reward reward;
    Discount discount;
};

static Case make_case(std::uint64_t seed, std::size_t states = 4, std::size_t actions = 3) {
    gen::Rng rng(seed);
    Mdp m = gen::bounded_mdp(rng, {2 + seed % (states - 1), 2 + seed % (actions - 1)});
    Reward r = gen::reward(rng, m);
    Discount d = gen::discount(rng);
    return {std::move(m), std::move(r), d};
}

TEST_CASE("solutions belong to their own class") {
    for_seeds(60, [](std::uint64_t seed) {
        const Case c = make_case(1000 + seed);
        const TimedQTable qr = resolute_q(c.mdp, c.reward, c.discount);
        CHECK(is_resolute(c.mdp, c.reward, c.discount, resolute_policy(c.mdp, qr)).ok);
        const QTable qn = naive_q(c.mdp, c.reward, c.discount);
        CHECK(is_naive(c.mdp, c.reward, c.discount, greedy_policy(c.mdp, qn)).ok);
        CHECK(is_sophisticated(c.mdp, c.reward, c.discount, sophisticated_canonical(c.mdp, c.reward, c.discount).policy).ok);
        CHECK(is_sophisticated(c.mdp, c.reward, c.discount,
                               sophisticated_deterministic(c.mdp, c.reward, c.discount).policy).ok);
        // Planning from the first step, naive and resolute agree.
        for (StateId s = 0; s < c.mdp.num_states(); ++s)
            for (ActionId a : c.mdp.available(s)) CHECK(qr(s, 0, a) == doctest::Approx(qn(s, a)));
    });
}

TEST_CASE("shaping keeps Boltzmann policies and recovers the potential") {
    for_seeds(60, [](std::uint64_t seed) {
        const Case c = make_case(2000 + seed);
        gen::Rng rng(seed);
        const Potential phi = gen::potential(rng, c.mdp.num_states());
        const double beta = std::array{0.1, 1.0, 10.0}[seed % 3];
        for (Model model : {Model::naive, Model::sophisticated}) {
            CAPTURE(to_string(model));
            const Reward r2 = model == Model::naive ? apply_naive_shaping(c.mdp, c.reward, c.discount, phi)
                                                    : apply_sophisticated_shaping(c.mdp, c.reward, c.discount, phi);
            const ModelSpec spec{model, beta, c.discount};
            CHECK(policies_equal(apply_model(c.mdp, c.reward, spec), apply_model(c.mdp, r2, spec), 1e-9).equal);
            const auto back = check_shaping_equivalence(c.mdp, c.discount, c.reward, r2, model);
            REQUIRE(back.has_value());
            for (StateId s = 0; s < c.mdp.num_states(); ++s) CHECK((*back)[s] == doctest::Approx(phi[s]).epsilon(1e-9));
        }
    });
}

TEST_CASE("exponential discounting makes every model pick optimal actions") {
    for_seeds(30, [](std::uint64_t seed) {
        gen::Rng rng(3000 + seed);
        const Mdp m = gen::bounded_mdp(rng, {3, 2, 2, 0.75, true});
        const Reward r = gen::reward(rng, m, true);
        const double gamma = std::array{0.5, 0.75, 1.0}[seed % 3];
        const ArgmaxAgreement ag = exponential_argmax_agreement(m, r, Discount::exponential(gamma));
        CHECK_MESSAGE(ag.violations == 0, ag.first_violation);
        CHECK(ag.sites > 0);
    });
}

TEST_CASE("chain probes succeed for hyperbolic sources") {
    for_seeds(30, [](std::uint64_t seed) {
        gen::Rng rng(4000 + seed);
        const std::size_t n = 3 + rng.below(5);
        const Mdp chain = build_chain_mdp(n, 2 + rng.below(2));
        const Reward r1 = gen::reward(rng, chain);
        const Discount d1 = Discount::hyperbolic(rng.uniform(0.2, 3.0));
        const Discount d2 = Discount::exponential(rng.uniform(0.2, 0.95));
        const std::size_t t = 1 + rng.below(n - 1);
        ProbeOptions opts;
        opts.beta1 = std::array{0.5, 1.0, 2.0}[seed % 3];
        opts.beta2 = opts.beta1;
        const ProbeResult res = chain_counterexample(chain, r1, d1, d2, t, 1.0, opts);
        CHECK(res.report.equal_under_source());
        CHECK(res.report.differ_under_target());
    });
}

TEST_CASE("solvers agree with the brute-force oracle") {
    for_seeds(20, [](std::uint64_t seed) {
        gen::Rng rng(5000 + seed);
        const Mdp m = gen::bounded_mdp(rng, {3, 2, 2, 0.75, seed % 2 == 0});
        const Reward r = gen::reward(rng, m, seed % 2 == 0);
        const Discount d = seed % 2 == 0 ? Discount::hyperbolic(1.0) : gen::discount(rng);
        const OracleAgreement ag = solver_oracle_agreement(m, r, d);
        CHECK(ag.max_value_gap <= 1e-9);
        CHECK_MESSAGE(ag.class_mismatches == 0, ag.first_mismatch);
    });
}

TEST_CASE("shifted discounts evaluate the tail") {
    for_seeds(30, [](std::uint64_t seed) {
        const Case c = make_case(6000 + seed);
        const Policy pi = Policy::uniform(c.mdp);
        const ValueTable v = policy_value(c.mdp, c.reward, c.discount, pi);
        const ValueTable w = policy_value(c.mdp, c.reward, c.discount.shifted(1), pi);
        for (StateId s = 0; s < c.mdp.num_states(); ++s) CHECK(w(s, 0) == doctest::Approx(v(s, 1)));
    });
}
