#include "tirl/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tirl {

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Scenario gym() {
    MdpBuilder b({"s0", "s1", "s2"}, {"buy", "exercise", "enjoy", "go_home"});
    b.transition("s0", "buy", "s1", 1.0)
        .transition("s0", "go_home", "TERMINAL", 1.0)
        .transition("s1", "exercise", "s2", 1.0)
        .transition("s1", "go_home", "TERMINAL", 1.0)
        .transition("s2", "enjoy", "TERMINAL", 1.0)
        .initial("s0", 1.0);
    Mdp mdp = b.build();
    Reward r(mdp);
    r.set(0, mdp.action_id("buy"), 1, -1.0);
    r.set(1, mdp.action_id("exercise"), 2, -16.0);
    r.set(2, mdp.action_id("enjoy"), mdp.terminal(), 30.0);

    Scenario sc{"gym", std::move(mdp), std::move(r), Discount::hyperbolic(1.0), {}};
    auto& e = sc.expected;
    e["G(go_home)"] = {0.0, 0.0, "return from s0"};
    e["G(buy,go_home)"] = {-1.0, 0.0, "return from s0"};
    e["G(buy,exercise,enjoy)"] = {1.0, 0.0, "return from s0"};
    e["G_s1(go_home)"] = {0.0, 0.0, "return from s1"};
    e["G_s1(exercise,enjoy)"] = {-1.0, 0.0, "return from s1"};
    e["QN(s0,buy)"] = {1.0, 0.0, ""};
    e["QN(s0,go_home)"] = {0.0, 0.0, ""};
    e["QN(s1,exercise)"] = {-1.0, 0.0, ""};
    e["QN(s1,go_home)"] = {0.0, 0.0, ""};
    e["QR(s1,1,exercise)"] = {2.0, 0.0, "-16 d(1) + 30 d(2)"};
    e["QR(s1,1,go_home)"] = {0.0, 0.0, ""};
    e["QS(s0,buy)"] = {-1.0, 0.0, "s1 goes home"};
    e["QS(s0,go_home)"] = {0.0, 0.0, ""};
    e["W(s1,1)"] = {2.0, 0.0, ""};
    e["W(s1,0)"] = {0.0, 0.0, ""};
    e["boltzmann_sophisticated(s0,go_home)"] = {1.0 / (1.0 + std::exp(-1.0)), 1e-12, "beta = 1"};
    e["J_undiscounted(buy,exercise)"] = {13.0, 0.0, "-1 - 16 + 30"};
    e["horizon"] = {3.0, 0.0, ""};
    return sc;
}

Scenario delay() {
    MdpBuilder b({"s0", "s1", "s2", "s3", "s4"}, {"a1", "a2"});
    for (const char* a : {"a1", "a2"}) {
        b.transition("s0", a, "s1", 1.0);
        b.transition("s1", a, "s2", 1.0);
        b.transition("s3", a, "TERMINAL", 1.0);
        b.transition("s4", a, "TERMINAL", 1.0);
    }
    b.transition("s2", "a1", "s3", 1.0).transition("s2", "a2", "s4", 1.0);
    b.initial("s0", 0.5).initial("s2", 0.5);
    Mdp mdp = b.build();
    Reward r(mdp);
    r.set(2, 0, 3, 2.0);
    r.set(4, 0, mdp.terminal(), 3.0);
    r.set(4, 1, mdp.terminal(), 3.0);

    Scenario sc{"delay", std::move(mdp), std::move(r), Discount::hyperbolic(1.0), {}};
    auto& e = sc.expected;
    e["QR(s2,0,a1)"] = {2.0, 0.0, ""};
    e["QR(s2,0,a2)"] = {1.5, 0.0, "3 d(1)"};
    e["QR(s2,2,a1)"] = {2.0 / 3.0, 0.0, "2 d(2)"};
    e["QR(s2,2,a2)"] = {0.75, 0.0, "3 d(3)"};
    e["horizon"] = {4.0, 0.0, ""};
    return sc;
}

Scenario crossroads() {
    MdpBuilder b({"s0", "s1", "s2", "s3"}, {"left", "right"});
    b.transition("s0", "left", "s1", 1.0)
        .transition("s0", "right", "TERMINAL", 1.0)
        .transition("s1", "left", "s2", 1.0)
        .transition("s1", "right", "s3", 1.0);
    for (const char* a : {"left", "right"}) {
        b.transition("s2", a, "TERMINAL", 1.0);
        b.transition("s3", a, "TERMINAL", 1.0);
    }
    b.initial("s0", 1.0);
    Mdp mdp = b.build();
    Reward r(mdp);
    r.set(0, 1, mdp.terminal(), 0.5);
    r.set(1, 0, 3, 1.0);  // unreachable, but the reward is stated for every action
    r.set(1, 1, 3, 1.0);
    r.set(2, 0, mdp.terminal(), 2.0);
    r.set(2, 1, mdp.terminal(), 2.0);

    Scenario sc{"crossroads", std::move(mdp), std::move(r), Discount::hyperbolic(1.0), {}};
    auto& e = sc.expected;
    e["Q_left(s0,left)"] = {2.0 / 3.0, 0.0, "always left"};
    e["Q_right(s0,left)"] = {0.5, 0.0, "always right"};
    e["Q_pi3(s0,left)"] = {7.0 / 12.0, 0.0, "50/50 mix"};
    e["Q_pi3(s0,right)"] = {0.5, 0.0, "50/50 mix"};
    e["QS(s1,left)"] = {1.0, 0.0, "tie at s1"};
    e["QS(s1,right)"] = {1.0, 0.0, "tie at s1"};
    e["horizon"] = {3.0, 0.0, ""};
    return sc;
}

Scenario tempt() {
    constexpr std::size_t kStates = 31;  // s0..s30; the sink stands in for s31
    std::vector<std::string> names;
    for (std::size_t i = 0; i < kStates; ++i) names.push_back("s" + std::to_string(i));
    MdpBuilder b(names, {"up", "down"});
    const StateId T = b.terminal();
    b.transition(0, 0, 1, 1.0).transition(0, 1, 2, 1.0);
    for (ActionId a = 0; a < 2; ++a) {
        b.transition(1, a, 0, 0.99).transition(1, a, T, 0.01);
        for (StateId s = 2; s < kStates; ++s) b.transition(s, a, s + 1 < kStates ? s + 1 : T, 1.0);
    }
    b.initial(0, 1.0);
    Mdp mdp = b.build();
    Reward r(mdp);
    r.set(0, 0, 1, 1.0);
    r.set(30, 0, T, 100.0);
    r.set(30, 1, T, 100.0);

    Scenario sc{"tempt", std::move(mdp), std::move(r), Discount::hyperbolic(1.0), {}};
    auto& e = sc.expected;
    e["Q_up(s0,up)"] = {3.008, 1e-2, "always up; sum_k 0.99^k / (2k + 1)"};
    e["Q_up(s0,down)"] = {10.0 / 3.0, 1e-9, "100 d(29)"};
    // 1 + 0.99 * 100 d(31). Rounding the 0.99 return probability to 1 gives 4.125.
    e["Q_down(s0,up)"] = {4.09375, 1e-9, "down at s0; 1 + 0.99 * 100 / 32"};
    e["Q_down(s0,down)"] = {10.0 / 3.0, 1e-9, "100 d(29)"};
    return sc;
}

Scenario random_mdp(std::uint64_t seed, const RandomMdpOptions& o) {
    if (o.num_states < 1 || o.num_actions < 1 || o.branching < 1 || !(o.reward_low <= o.reward_high))
        throw Error(ErrorCode::parameter_out_of_range, "random MDP needs >= 1 state, action and successor");
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return unit_uniform(rng()); };

    std::vector<std::string> states, actions;
    for (std::size_t i = 0; i < o.num_states; ++i) states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < o.num_actions; ++i) actions.push_back("a" + std::to_string(i));
    MdpBuilder b(states, actions);
    const StateId T = b.terminal();

    std::vector<std::vector<std::pair<StateId, double>>> rows;
    for (StateId s = 0; s < o.num_states; ++s)
        for (ActionId a = 0; a < o.num_actions; ++a) {
            std::vector<StateId> pool;
            for (StateId n = s + 1; n < o.num_states; ++n) pool.push_back(n);
            pool.push_back(T);
            // Partial Fisher-Yates for the first `k` picks.
            const std::size_t k = std::min(o.branching, pool.size());
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(uniform() * static_cast<double>(pool.size() - i));
                std::swap(pool[i], pool[std::min(j, pool.size() - 1)]);
            }
            std::vector<StateId> picked(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(picked.begin(), picked.end());
            std::vector<double> w(k);
            for (double& x : w) x = 0.05 + uniform();
            const double sum = std::accumulate(w.begin(), w.end(), 0.0);
            std::vector<std::pair<StateId, double>> row;
            double used = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const double p = i + 1 == k ? 1.0 - used : w[i] / sum;
                used += p;
                b.transition(s, a, picked[i], p);
                row.emplace_back(picked[i], p);
            }
            rows.push_back(std::move(row));
        }
    b.initial(0, 1.0);
    Mdp mdp = b.build();
    Reward r(mdp);
    std::size_t idx = 0;
    for (StateId s = 0; s < o.num_states; ++s)
        for (ActionId a = 0; a < o.num_actions; ++a, ++idx)
            for (const auto& [next, p] : rows[idx]) r.set(s, a, next, o.reward_low + (o.reward_high - o.reward_low) * uniform());

    return Scenario{"random-" + std::to_string(seed), std::move(mdp), std::move(r), Discount::hyperbolic(1.0), {}};
}

}  // namespace tirl
