#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"
#include "tirl/shaping.hpp"

namespace gen {

// Hand-rolled generators for property tests. Everything is driven by one
// mt19937_64 so a failing case is replayed from its seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * tirl_unit(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
    bool coin(double p = 0.5) { return tirl_unit() < p; }
    // Multiples of 1/4 in [lo, hi]; exact in binary.
    double quarter(int lo, int hi) { return static_cast<double>(lo * 4 + static_cast<int>(below((hi - lo) * 4 + 1))) / 4.0; }

private:
    double tirl_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 eng_;
};

struct MdpShape {
    std::size_t states = 3;
    std::size_t actions = 2;
    std::size_t max_branching = 3;
    double availability = 0.75;  ///< chance that a non-default action exists at a state
    bool dyadic = false;         ///< probabilities in eighths
};

// Bounded by construction: state i only moves to j > i or the terminal.
inline tirl::Mdp bounded_mdp(Rng& rng, const MdpShape& shape) {
    std::vector<std::string> states, actions;
    for (std::size_t i = 0; i < shape.states; ++i) states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < shape.actions; ++i) actions.push_back("a" + std::to_string(i));
    tirl::MdpBuilder b(states, actions);
    const tirl::StateId T = b.terminal();
    for (tirl::StateId s = 0; s < shape.states; ++s) {
        for (tirl::ActionId a = 0; a < shape.actions; ++a) {
            if (a > 0 && !rng.coin(shape.availability)) continue;
            std::vector<tirl::StateId> pool;
            for (tirl::StateId n = s + 1; n < shape.states; ++n) pool.push_back(n);
            pool.push_back(T);
            std::shuffle(pool.begin(), pool.end(), std::mt19937_64(rng.below(1u << 30)));
            const std::size_t k = 1 + rng.below(std::min(shape.max_branching, pool.size()));
            std::vector<double> w(k);
            if (shape.dyadic) {
                // Split 8 eighths, each successor getting at least one.
                std::vector<int> units(k, 1);
                for (int left = 8 - static_cast<int>(k); left > 0; --left) ++units[rng.below(k)];
                for (std::size_t i = 0; i < k; ++i) w[i] = units[i] / 8.0;
            } else {
                double sum = 0.0;
                for (double& x : w) sum += (x = 0.1 + rng.uniform(0.0, 1.0));
                for (double& x : w) x /= sum;
            }
            double used = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const double p = (i + 1 == k && !shape.dyadic) ? 1.0 - used : w[i];
                used += p;
                b.transition(s, a, pool[i], p);
            }
        }
    }
    b.initial(0, 1.0);
    return b.build();
}

inline tirl::Reward reward(Rng& rng, const tirl::Mdp& mdp, bool dyadic = false) {
    tirl::Reward r(mdp);
    for (tirl::StateId s = 0; s < mdp.num_states(); ++s)
        for (tirl::ActionId a : mdp.available(s))
            for (const auto& o : mdp.outcomes(s, a)) r.set(s, a, o.next, dyadic ? rng.quarter(-4, 4) : rng.uniform(-5, 5));
    return r;
}

inline tirl::Discount discount(Rng& rng) {
    switch (rng.below(4)) {
        case 0: return tirl::Discount::exponential(rng.uniform(0.2, 1.0));
        case 1: return tirl::Discount::hyperbolic(rng.uniform(0.2, 3.0));
        case 2: return tirl::Discount::bounded_planning(1 + rng.below(3));
        default: {
            std::vector<double> t{1.0};
            for (int i = 0; i < 8; ++i) t.push_back(t.back() * rng.uniform(0.3, 1.0));
            return tirl::Discount::table(t);
        }
    }
}

inline tirl::Potential potential(Rng& rng, std::size_t n) {
    tirl::Potential phi(n);
    for (double& x : phi) x = rng.uniform(-3, 3);
    return phi;
}

}  // namespace gen

// Runs `body(seed)` for seeds 0..n-1 and names the seed on failure.
inline void for_seeds(std::uint64_t n, const std::function<void(std::uint64_t)>& body) {
    for (std::uint64_t seed = 0; seed < n; ++seed) {
        CAPTURE(seed);
        body(seed);
    }
}

// Checks that `f` throws tirl::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected_code)                              \
    do {                                                                   \
        bool thrown_ = false;                                              \
        try {                                                              \
            (void)(expr);                                                  \
        } catch (const tirl::Error& e_) {                                  \
            thrown_ = true;                                                \
            CHECK_MESSAGE(e_.code() == (expected_code), e_.what());        \
        }                                                                  \
        CHECK_MESSAGE(thrown_, "expected an error from " #expr);           \
    } while (0)
