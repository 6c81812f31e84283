#include "support.hpp"

#include "tirl/probes.hpp"
#include "tirl/scenarios.hpp"

using namespace tirl;

namespace {

Mdp self_loop() {
    MdpBuilder b({"a", "b"}, {"stay", "leave"});
    b.transition("a", "stay", "a", 1.0).transition("a", "leave", "b", 1.0);
    b.transition("b", "stay", "TERMINAL", 1.0);
    b.initial("a", 1.0);
    return b.build();
}

}  // namespace

TEST_CASE("builder rejects malformed rows") {
    MdpBuilder b({"s0", "s1"}, {"x"});
    b.transition("s0", "x", "s1", 0.5).transition("s0", "x", "TERMINAL", 0.4);
    b.transition("s1", "x", "TERMINAL", 1.0).initial("s0", 1.0);
    CHECK_ERROR_CODE(b.build(), ErrorCode::malformed_distribution);

    MdpBuilder c({"s0"}, {"x"});
    c.initial("s0", 1.0);
    CHECK_ERROR_CODE(c.build(), ErrorCode::malformed_distribution);  // s0 has no actions

    MdpBuilder d({"s0"}, {"x"});
    CHECK_ERROR_CODE(d.transition("s0", "y", "TERMINAL", 1.0), ErrorCode::unknown_state_id);
    CHECK_ERROR_CODE(d.transition("s0", "x", "s9", 1.0), ErrorCode::unknown_state_id);
    CHECK_ERROR_CODE(d.initial("TERMINAL", 1.0), ErrorCode::malformed_distribution);

    MdpBuilder e({"s0"}, {"x"});
    e.transition("s0", "x", "TERMINAL", 1.0).initial("s0", 0.5);
    CHECK_ERROR_CODE(e.build(), ErrorCode::malformed_distribution);

    CHECK_ERROR_CODE(MdpBuilder({"s0"}, {}), ErrorCode::parameter_out_of_range);
}

TEST_CASE("near-unit sums are renormalized") {
    MdpBuilder b({"s0"}, {"x"});
    b.transition("s0", "x", "TERMINAL", 1.0 - 1e-14).initial("s0", 1.0);
    const Mdp m = b.build();
    CHECK(m.probability(0, 0, m.terminal()) == 1.0);
}

TEST_CASE("unavailable actions alias the default row") {
    const Scenario g = gym();
    const Mdp& m = g.mdp;
    const ActionId buy = m.action_id("buy"), go_home = m.action_id("go_home");
    CHECK(m.available(0).size() == 2);
    CHECK_FALSE(m.is_available(0, m.action_id("enjoy")));
    CHECK(m.effective_action(0, m.action_id("enjoy")) == buy);
    CHECK(m.effective_action(0, go_home) == go_home);
    CHECK(m.state_id("TERMINAL") == m.terminal());
    CHECK(m.state_name(m.terminal()) == "TERMINAL");
    CHECK_ERROR_CODE(m.state_id("s7"), ErrorCode::unknown_state_id);
}

TEST_CASE("episodicity classes") {
    const EpisodicityReport g = validate(gym().mdp);
    CHECK(g.kind == Episodicity::bounded);
    CHECK(g.horizon == 3u);

    const Mdp t = tempt().mdp;
    const EpisodicityReport u = validate(t);
    CHECK(u.kind == Episodicity::unbounded);
    CHECK_FALSE(u.horizon.has_value());
    REQUIRE_FALSE(u.cycle.empty());
    CHECK(std::find(u.cycle.begin(), u.cycle.end(), StateId{0}) != u.cycle.end());
    CHECK_ERROR_CODE(require_bounded(t), ErrorCode::not_bounded_episodic);

    const EpisodicityReport n = validate(self_loop());
    CHECK(n.kind == Episodicity::non_episodic);
    CHECK(n.end_component == std::vector<StateId>{0});
    CHECK(to_string(n.kind) == "non-episodic");
}

TEST_CASE("layer partition by longest path") {
    const LayerPartition lp = layer_partition(build_chain_mdp(3));
    REQUIRE(lp.horizon() == 3);
    CHECK(lp.layers[0] == std::vector<StateId>{2});
    CHECK(lp.layers[1] == std::vector<StateId>{1});
    CHECK(lp.layers[2] == std::vector<StateId>{0});
    CHECK(lp.layer_of == std::vector<std::size_t>{3, 2, 1});
    CHECK(layer_partition(build_chain_mdp(4)).horizon() == 4);
}

TEST_CASE("controllable states") {
    const ControllableStates chain = controllable_states(build_chain_mdp(4));
    CHECK(chain.controllable == std::vector<StateId>{1});
    CHECK(chain.roots == std::vector<StateId>{1});

    // s2 is entered only through s1's exercise, but go_home at s1 makes the
    // difference, so s2 counts as well. s1 stays the only root.
    const ControllableStates g = controllable_states(gym().mdp);
    CHECK(g.controllable == std::vector<StateId>{1, 2});
    CHECK(g.roots == std::vector<StateId>{1});

    MdpBuilder b({"s0", "s1"}, {"x", "y"});
    for (const char* a : {"x", "y"}) b.transition("s0", a, "s1", 1.0).transition("s1", a, "TERMINAL", 1.0);
    b.initial("s0", 1.0);
    CHECK(controllable_states(b.build()).controllable.empty());
}

TEST_CASE("termination bound") {
    const Mdp t = tempt().mdp;
    // Frozen from a hand count: the worst policy goes up once, then uses the
    // 30-step down path to stall; one escape chance per visit to s1.
    CHECK(termination_bound(t, 2) == 0.0);
    CHECK(termination_bound(t, 31) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(termination_bound(t, 32) == doctest::Approx(1.0 - 0.99 * 0.99).epsilon(1e-12));
    CHECK(termination_bound(build_chain_mdp(4), 4) == 1.0);
    CHECK(termination_bound(build_chain_mdp(4), 3) == 0.0);
    CHECK_ERROR_CODE(termination_bound(self_loop(), 50), ErrorCode::not_episodic);
}

TEST_CASE("feasible sites and reachability") {
    const Mdp d = delay().mdp;
    const auto f = feasible_sites(d, layer_partition(d));
    REQUIRE(f.size() == 5);
    CHECK(f[0] == std::vector<bool>{true, false, false, false});
    CHECK(f[2] == std::vector<bool>{true, true, true, false});
    CHECK(f[4] == std::vector<bool>{true, true, true, true});  // s1 -> s2 -> s4 reaches it at t = 2

    const auto r = reachable_from(gym().mdp, 0);
    CHECK(r == std::vector<bool>{false, true, true});
}

TEST_CASE("reward magnitude ignores zero-probability triples") {
    const Scenario g = gym();
    Reward r = g.reward;
    r.set(0, g.mdp.action_id("buy"), 2, 1000.0);  // s0 never moves to s2
    CHECK(r.max_abs(g.mdp) == 30.0);
}
