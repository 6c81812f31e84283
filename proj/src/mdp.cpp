#include "tirl/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace tirl {

std::string_view to_string(Episodicity e) {
    switch (e) {
        case Episodicity::bounded: return "bounded";
        case Episodicity::unbounded: return "unbounded";
        case Episodicity::non_episodic: return "non-episodic";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Mdp

const std::string& Mdp::state_name(StateId s) const {
    static const std::string terminal_name = "TERMINAL";
    if (s == terminal()) return terminal_name;
    return state_names_.at(s);
}

StateId Mdp::state_id(std::string_view name) const {
    if (name == "TERMINAL") return terminal();
    auto it = std::find(state_names_.begin(), state_names_.end(), name);
    if (it == state_names_.end())
        throw Error(ErrorCode::unknown_state_id, "unknown state '" + std::string(name) + "'");
    return static_cast<StateId>(it - state_names_.begin());
}

ActionId Mdp::action_id(std::string_view name) const {
    auto it = std::find(action_names_.begin(), action_names_.end(), name);
    if (it == action_names_.end())
        throw Error(ErrorCode::unknown_state_id, "unknown action '" + std::string(name) + "'");
    return static_cast<ActionId>(it - action_names_.begin());
}

std::span<const Outcome> Mdp::outcomes(StateId s, ActionId a) const {
    return rows_.at(s * num_actions() + a);
}

double Mdp::probability(StateId s, ActionId a, StateId next) const {
    for (const auto& o : outcomes(s, a))
        if (o.next == next) return o.probability;
    return 0.0;
}

bool Mdp::is_available(StateId s, ActionId a) const {
    const auto& av = available_.at(s);
    return std::binary_search(av.begin(), av.end(), a);
}

// ---------------------------------------------------------------------------
// MdpBuilder

MdpBuilder::MdpBuilder(std::vector<std::string> state_names, std::vector<std::string> action_names)
    : state_names_(std::move(state_names)),
      action_names_(std::move(action_names)),
      rows_(state_names_.size() * action_names_.size(), std::vector<double>(state_names_.size() + 1, 0.0)),
      touched_(state_names_.size() * action_names_.size(), false),
      initial_(state_names_.size(), 0.0) {
    if (action_names_.empty()) throw Error(ErrorCode::parameter_out_of_range, "at least one action is required");
}

StateId MdpBuilder::lookup_state(std::string_view name, bool allow_terminal) const {
    if (name == "TERMINAL") {
        if (!allow_terminal)
            throw Error(ErrorCode::malformed_distribution, "terminal state cannot be a source or initial state");
        return terminal();
    }
    auto it = std::find(state_names_.begin(), state_names_.end(), name);
    if (it == state_names_.end())
        throw Error(ErrorCode::unknown_state_id, "unknown state '" + std::string(name) + "'");
    return static_cast<StateId>(it - state_names_.begin());
}

ActionId MdpBuilder::lookup_action(std::string_view name) const {
    auto it = std::find(action_names_.begin(), action_names_.end(), name);
    if (it == action_names_.end())
        throw Error(ErrorCode::unknown_state_id, "unknown action '" + std::string(name) + "'");
    return static_cast<ActionId>(it - action_names_.begin());
}

MdpBuilder& MdpBuilder::transition(StateId s, ActionId a, StateId next, double probability) {
    if (s >= num_states()) throw Error(ErrorCode::unknown_state_id, "source state out of range");
    if (a >= action_names_.size()) throw Error(ErrorCode::unknown_state_id, "action out of range");
    if (next > num_states()) throw Error(ErrorCode::unknown_state_id, "successor state out of range");
    const std::size_t row = s * action_names_.size() + a;
    rows_[row][next] = probability;
    touched_[row] = true;
    return *this;
}

MdpBuilder& MdpBuilder::transition(std::string_view s, std::string_view a, std::string_view next,
                                   double probability) {
    return transition(lookup_state(s, false), lookup_action(a), lookup_state(next, true), probability);
}

MdpBuilder& MdpBuilder::initial(StateId s, double probability) {
    if (s >= num_states()) throw Error(ErrorCode::malformed_distribution, "initial state out of range");
    initial_[s] = probability;
    return *this;
}

MdpBuilder& MdpBuilder::initial(std::string_view s, double probability) {
    return initial(lookup_state(s, false), probability);
}

namespace {

void check_and_normalize(std::vector<double>& dist, const std::string& what) {
    double sum = 0.0;
    for (double p : dist) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            std::ostringstream msg;
            msg << what << " has probability " << p << " outside [0, 1]";
            throw Error(ErrorCode::malformed_distribution, msg.str());
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " sums to " << sum;
        throw Error(ErrorCode::malformed_distribution, msg.str());
    }
    if (sum != 1.0)
        for (double& p : dist) p /= sum;
}

}  // namespace

Mdp MdpBuilder::build() const {
    const std::size_t S = num_states();
    const std::size_t A = action_names_.size();
    if (S == 0) throw Error(ErrorCode::parameter_out_of_range, "at least one state is required");

    Mdp mdp;
    mdp.state_names_ = state_names_;
    mdp.action_names_ = action_names_;
    mdp.available_.resize(S);
    mdp.rows_.resize(S * A);

    for (StateId s = 0; s < S; ++s) {
        for (ActionId a = 0; a < A; ++a)
            if (touched_[s * A + a]) mdp.available_[s].push_back(a);
        if (mdp.available_[s].empty())
            throw Error(ErrorCode::malformed_distribution, "state '" + state_names_[s] + "' has no actions");
        for (ActionId a : mdp.available_[s]) {
            std::vector<double> dist = rows_[s * A + a];
            check_and_normalize(dist, "transition (" + state_names_[s] + ", " + action_names_[a] + ")");
            auto& row = mdp.rows_[s * A + a];
            for (StateId next = 0; next <= S; ++next)
                if (dist[next] > 0.0) row.push_back({next, dist[next]});
        }
        const ActionId fallback = mdp.available_[s].front();
        for (ActionId a = 0; a < A; ++a)
            if (!touched_[s * A + a]) mdp.rows_[s * A + a] = mdp.rows_[s * A + fallback];
    }

    mdp.initial_ = initial_;
    check_and_normalize(mdp.initial_, "initial distribution");
    return mdp;
}

// ---------------------------------------------------------------------------
// Reward

Reward::Reward(const Mdp& mdp) : Reward(mdp.num_states(), mdp.num_actions()) {}

Reward::Reward(std::size_t num_states, std::size_t num_actions)
    : num_states_(num_states), num_actions_(num_actions), values_(num_states * num_actions * (num_states + 1), 0.0) {}

double Reward::max_abs(const Mdp& mdp) const {
    double m = 0.0;
    for (StateId s = 0; s < mdp.num_states(); ++s)
        for (ActionId a : mdp.available(s))
            for (const auto& o : mdp.outcomes(s, a)) m = std::max(m, std::abs((*this)(s, a, o.next)));
    return m;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

std::vector<std::vector<StateId>> successor_graph(const Mdp& mdp) {
    std::vector<std::vector<StateId>> succ(mdp.num_states());
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        for (ActionId a : mdp.available(s))
            for (const auto& o : mdp.outcomes(s, a))
                if (!mdp.is_terminal(o.next)) succ[s].push_back(o.next);
        std::sort(succ[s].begin(), succ[s].end());
        succ[s].erase(std::unique(succ[s].begin(), succ[s].end()), succ[s].end());
    }
    return succ;
}

// Returns longest-path layers if acyclic, otherwise a cycle.
struct GraphScan {
    bool acyclic = true;
    std::vector<std::size_t> layer;
    std::vector<StateId> cycle;
};

GraphScan scan_graph(const Mdp& mdp) {
    const auto succ = successor_graph(mdp);
    const std::size_t S = mdp.num_states();
    GraphScan scan;
    scan.layer.assign(S, 0);
    enum class Mark { unvisited, active, done };
    std::vector<Mark> mark(S, Mark::unvisited);
    std::vector<StateId> stack;

    std::function<bool(StateId)> visit = [&](StateId s) -> bool {
        mark[s] = Mark::active;
        stack.push_back(s);
        std::size_t longest = 0;
        for (StateId n : succ[s]) {
            if (mark[n] == Mark::active) {
                auto it = std::find(stack.begin(), stack.end(), n);
                scan.cycle.assign(it, stack.end());
                return false;
            }
            if (mark[n] == Mark::unvisited && !visit(n)) return false;
            longest = std::max(longest, scan.layer[n]);
        }
        scan.layer[s] = longest + 1;
        mark[s] = Mark::done;
        stack.pop_back();
        return true;
    };

    for (StateId s = 0; s < S; ++s) {
        if (mark[s] == Mark::unvisited && !visit(s)) {
            scan.acyclic = false;
            break;
        }
    }
    return scan;
}

}  // namespace

EpisodicityReport validate(const Mdp& mdp) {
    EpisodicityReport report;
    const GraphScan scan = scan_graph(mdp);
    if (scan.acyclic) {
        report.kind = Episodicity::bounded;
        report.horizon = *std::max_element(scan.layer.begin(), scan.layer.end());
        return report;
    }
    report.cycle = scan.cycle;

    // Greatest set U such that every state in U has an action staying inside U.
    const std::size_t S = mdp.num_states();
    std::vector<bool> inside(S, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < S; ++s) {
            if (!inside[s]) continue;
            bool can_stay = false;
            for (ActionId a : mdp.available(s)) {
                bool closed = true;
                for (const auto& o : mdp.outcomes(s, a))
                    if (mdp.is_terminal(o.next) || !inside[o.next]) {
                        closed = false;
                        break;
                    }
                if (closed) {
                    can_stay = true;
                    break;
                }
            }
            if (!can_stay) {
                inside[s] = false;
                changed = true;
            }
        }
    }
    for (StateId s = 0; s < S; ++s)
        if (inside[s]) report.end_component.push_back(s);
    report.kind = report.end_component.empty() ? Episodicity::unbounded : Episodicity::non_episodic;
    return report;
}

LayerPartition layer_partition(const Mdp& mdp) {
    const GraphScan scan = scan_graph(mdp);
    if (!scan.acyclic)
        throw Error(ErrorCode::not_bounded_episodic, "transition graph has a cycle; no finite horizon");
    LayerPartition partition;
    partition.layer_of = scan.layer;
    const std::size_t H = *std::max_element(scan.layer.begin(), scan.layer.end());
    partition.layers.resize(H);
    for (StateId s = 0; s < mdp.num_states(); ++s) partition.layers[scan.layer[s] - 1].push_back(s);
    return partition;
}

LayerPartition require_bounded(const Mdp& mdp) { return layer_partition(mdp); }

std::vector<bool> reachable_from(const Mdp& mdp, StateId s) {
    const auto succ = successor_graph(mdp);
    std::vector<bool> seen(mdp.num_states(), false);
    std::vector<StateId> frontier(succ[s].begin(), succ[s].end());
    while (!frontier.empty()) {
        StateId u = frontier.back();
        frontier.pop_back();
        if (seen[u]) continue;
        seen[u] = true;
        for (StateId v : succ[u])
            if (!seen[v]) frontier.push_back(v);
    }
    return seen;
}

ControllableStates controllable_states(const Mdp& mdp) {
    const std::size_t S = mdp.num_states();
    std::vector<bool> is_controllable(S, false);
    for (StateId s = 0; s < S; ++s) {
        const auto av = mdp.available(s);
        for (std::size_t i = 0; i < av.size(); ++i)
            for (std::size_t j = i + 1; j < av.size(); ++j)
                for (StateId next = 0; next < S; ++next)
                    if (std::abs(mdp.probability(s, av[i], next) - mdp.probability(s, av[j], next)) >
                        kProbabilityTolerance)
                        is_controllable[next] = true;
    }

    ControllableStates result;
    for (StateId s = 0; s < S; ++s)
        if (is_controllable[s]) result.controllable.push_back(s);

    std::vector<bool> reached_by_other(S, false);
    for (StateId c : result.controllable) {
        const auto reach = reachable_from(mdp, c);
        for (StateId other : result.controllable)
            if (other != c && reach[other]) reached_by_other[other] = true;
    }
    for (StateId c : result.controllable)
        if (!reached_by_other[c]) result.roots.push_back(c);
    return result;
}

double termination_bound(const Mdp& mdp, std::size_t steps) {
    if (validate(mdp).kind == Episodicity::non_episodic)
        throw Error(ErrorCode::not_episodic, "some policy avoids the terminal forever");
    const std::size_t S = mdp.num_states();
    std::vector<double> q(S, 0.0), next(S, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        for (StateId s = 0; s < S; ++s) {
            double worst = 1.0;
            for (ActionId a : mdp.available(s)) {
                double p = 0.0;
                for (const auto& o : mdp.outcomes(s, a)) p += o.probability * (mdp.is_terminal(o.next) ? 1.0 : q[o.next]);
                worst = std::min(worst, p);
            }
            next[s] = worst;
        }
        q.swap(next);
    }
    return *std::min_element(q.begin(), q.end());
}

std::vector<std::vector<bool>> feasible_sites(const Mdp& mdp, const LayerPartition& layers) {
    const std::size_t S = mdp.num_states();
    const std::size_t H = layers.horizon();
    const auto succ = successor_graph(mdp);
    std::vector<std::vector<bool>> feasible(S, std::vector<bool>(H, false));
    for (StateId s = 0; s < S; ++s) feasible[s][0] = true;
    for (std::size_t t = 0; t + 1 < H; ++t)
        for (StateId s = 0; s < S; ++s)
            if (feasible[s][t])
                for (StateId n : succ[s]) feasible[n][t + 1] = true;
    return feasible;
}

}  // namespace tirl
