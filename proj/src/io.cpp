#include "tirl/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#ifndef TIRL_VERSION
#define TIRL_VERSION "0.0.0"
#endif

namespace tirl {

namespace {

[[noreturn]] void fail(std::string_view source, const std::string& where, const std::string& what) {
    throw Error(ErrorCode::parse_error, std::string(source) + ": " + where + ": " + what);
}

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

Json parse_json(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        fail(source, line_col(text, at), msg);
    }
}

void require_keys(const Json& j, const std::set<std::string>& allowed, std::string_view source,
                  const std::string& path) {
    if (!j.is_object()) fail(source, path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) fail(source, path + "/" + key, "unknown key");
}

double number(const Json& j, std::string_view source, const std::string& path) {
    if (!j.is_number()) fail(source, path, "expected a number");
    return j.get<double>();
}

const Json& member(const Json& j, const char* key, std::string_view source, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) fail(source, path, std::string("missing key \"") + key + "\"");
    return *it;
}

std::vector<std::string> names(const Json& j, std::string_view source, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(source, path, "expected a non-empty array of names");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) fail(source, path + "/" + std::to_string(i), "expected a string");
        std::string name = j[i].get<std::string>();
        if (name.empty() || name == "TERMINAL") fail(source, path + "/" + std::to_string(i), "reserved or empty name");
        if (!seen.insert(name).second) fail(source, path + "/" + std::to_string(i), "duplicate name \"" + name + "\"");
        out.push_back(std::move(name));
    }
    return out;
}

std::size_t index_of(const std::vector<std::string>& list, const std::string& name, bool allow_terminal,
                     std::string_view source, const std::string& path) {
    if (allow_terminal && name == "TERMINAL") return list.size();
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == name) return i;
    throw Error(ErrorCode::unknown_state_id, std::string(source) + ": " + path + ": unknown name \"" + name + "\"");
}

}  // namespace

Json discount_to_json(const Discount& d) {
    Json j;
    j["family"] = std::string(to_string(d.family()));
    switch (d.family()) {
        case DiscountFamily::exponential: j["gamma"] = d.parameter(); break;
        case DiscountFamily::hyperbolic: j["k"] = d.parameter(); break;
        case DiscountFamily::bounded_planning: j["n"] = static_cast<std::size_t>(d.parameter()); break;
        case DiscountFamily::table: j["values"] = d.table_values(); break;
    }
    return j;
}

Discount discount_from_json(const Json& j, std::string_view path, std::string_view source) {
    const std::string p(path);
    if (!j.is_object()) fail(source, p, "expected an object");
    const Json& fam = member(j, "family", source, p);
    if (!fam.is_string()) fail(source, p + "/family", "expected a string");
    const std::string family = fam.get<std::string>();
    if (family == "exponential") {
        require_keys(j, {"family", "gamma"}, source, p);
        return Discount::exponential(number(member(j, "gamma", source, p), source, p + "/gamma"));
    }
    if (family == "hyperbolic") {
        require_keys(j, {"family", "k"}, source, p);
        return Discount::hyperbolic(number(member(j, "k", source, p), source, p + "/k"));
    }
    if (family == "bounded_planning") {
        require_keys(j, {"family", "n"}, source, p);
        const Json& n = member(j, "n", source, p);
        if (!n.is_number_unsigned()) fail(source, p + "/n", "expected a non-negative integer");
        return Discount::bounded_planning(n.get<std::size_t>());
    }
    if (family == "table") {
        require_keys(j, {"family", "values"}, source, p);
        const Json& v = member(j, "values", source, p);
        if (!v.is_array()) fail(source, p + "/values", "expected an array");
        std::vector<double> values;
        for (std::size_t i = 0; i < v.size(); ++i)
            values.push_back(number(v[i], source, p + "/values/" + std::to_string(i)));
        return Discount::table(std::move(values));
    }
    fail(source, p + "/family", "unknown discount family \"" + family + "\"");
}

Environment parse_environment(std::string_view text, std::string_view source) {
    const Json doc = parse_json(text, source);
    require_keys(doc, {"states", "actions", "initial", "transitions", "reward", "discount"}, source, "");
    const auto states = names(member(doc, "states", source, ""), source, "/states");
    const auto actions = names(member(doc, "actions", source, ""), source, "/actions");
    MdpBuilder b(states, actions);

    const Json& initial = member(doc, "initial", source, "");
    if (!initial.is_object()) fail(source, "/initial", "expected an object");
    for (const auto& [name, p] : initial.items())
        b.initial(index_of(states, name, false, source, "/initial/" + name), number(p, source, "/initial/" + name));

    const Json& transitions = member(doc, "transitions", source, "");
    if (!transitions.is_object()) fail(source, "/transitions", "expected an object");
    for (const auto& [s, row] : transitions.items()) {
        const std::string ps = "/transitions/" + s;
        const StateId si = index_of(states, s, false, source, ps);
        if (!row.is_object()) fail(source, ps, "expected an object");
        for (const auto& [a, outcomes] : row.items()) {
            const std::string pa = ps + "/" + a;
            const ActionId ai = index_of(actions, a, false, source, pa);
            if (!outcomes.is_object() || outcomes.empty()) fail(source, pa, "expected a non-empty object");
            for (const auto& [next, p] : outcomes.items())
                b.transition(si, ai, index_of(states, next, true, source, pa + "/" + next),
                             number(p, source, pa + "/" + next));
        }
    }

    Environment env{b.build(), Reward(), Discount::hyperbolic(1.0)};
    env.reward = Reward(env.mdp);
    if (const auto it = doc.find("reward"); it != doc.end()) {
        if (!it->is_object()) fail(source, "/reward", "expected an object");
        for (const auto& [s, row] : it->items()) {
            const std::string ps = "/reward/" + s;
            const StateId si = index_of(states, s, false, source, ps);
            if (!row.is_object()) fail(source, ps, "expected an object");
            for (const auto& [a, values] : row.items()) {
                const std::string pa = ps + "/" + a;
                const ActionId ai = index_of(actions, a, false, source, pa);
                if (!env.mdp.is_available(si, ai)) fail(source, pa, "reward given for an unavailable action");
                if (!values.is_object()) fail(source, pa, "expected an object");
                for (const auto& [next, v] : values.items()) {
                    const double value = number(v, source, pa + "/" + next);
                    if (!std::isfinite(value)) fail(source, pa + "/" + next, "reward must be finite");
                    env.reward.set(si, ai, index_of(states, next, true, source, pa + "/" + next), value);
                }
            }
        }
    }
    env.discount = discount_from_json(member(doc, "discount", source, ""), "/discount", source);
    return env;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Environment load_environment(const std::string& path) { return parse_environment(read_file(path), path); }

Json environment_to_json(const Mdp& mdp, const Reward& reward, const Discount& discount) {
    Json doc;
    doc["states"] = mdp.state_names();
    doc["actions"] = mdp.action_names();
    Json initial = Json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s)
        if (mdp.initial()[s] > 0.0) initial[mdp.state_name(s)] = mdp.initial()[s];
    doc["initial"] = initial;
    Json transitions = Json::object();
    Json rewards = Json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s)
        for (ActionId a : mdp.available(s)) {
            for (const Outcome& o : mdp.outcomes(s, a))
                transitions[mdp.state_name(s)][mdp.action_name(a)][mdp.state_name(o.next)] = o.probability;
            for (StateId next = 0; next <= mdp.num_states(); ++next) {
                const double r = reward(s, a, next);
                if (r != 0.0) rewards[mdp.state_name(s)][mdp.action_name(a)][mdp.state_name(next)] = r;
            }
        }
    doc["transitions"] = transitions;
    doc["reward"] = rewards;
    doc["discount"] = discount_to_json(discount);
    return doc;
}

std::string serialize_environment(const Mdp& mdp, const Reward& reward, const Discount& discount) {
    return dump(environment_to_json(mdp, reward, discount));
}

Potential parse_potential(std::string_view text, const Mdp& mdp, std::string_view source) {
    const Json doc = parse_json(text, source);
    if (!doc.is_object()) fail(source, "", "expected an object mapping state names to potentials");
    Potential phi(mdp.num_states(), 0.0);
    for (const auto& [name, v] : doc.items()) {
        if (name == "TERMINAL") fail(source, "/" + name, "the terminal potential is fixed at 0");
        phi[index_of(mdp.state_names(), name, false, source, "/" + name)] = number(v, source, "/" + name);
    }
    return phi;
}

Potential load_potential(const std::string& path, const Mdp& mdp) {
    return parse_potential(read_file(path), mdp, path);
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::parse_error, "sha256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string tool_version() { return TIRL_VERSION; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tirl
