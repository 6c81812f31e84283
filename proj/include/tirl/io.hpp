#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "tirl/discount.hpp"
#include "tirl/mdp.hpp"
#include "tirl/policy.hpp"
#include "tirl/shaping.hpp"

namespace tirl {

using Json = nlohmann::json;

/// An environment file: transitions, initial distribution, reward, discount.
///
///   {
///     "states": ["s0", "s1"], "actions": ["go", "stop"],
///     "initial": {"s0": 1},
///     "transitions": {"s0": {"go": {"s1": 1}, "stop": {"TERMINAL": 1}}, ...},
///     "reward": {"s0": {"go": {"s1": -1}}},
///     "discount": {"family": "hyperbolic", "k": 1}
///   }
///
/// Omitted reward triples are 0. See docs/file-format.md.
struct Environment {
    Mdp mdp;
    Reward reward;
    Discount discount;
};

/// Throws parse_error with "<source>:line:col" for syntax errors and the JSON
/// path for structural ones; malformed_distribution / unknown_state_id come
/// from the MDP builder.
Environment parse_environment(std::string_view text, std::string_view source = "<input>");
Environment load_environment(const std::string& path);

Json environment_to_json(const Mdp& mdp, const Reward& reward, const Discount& discount);
/// Canonical text: sorted keys, 2-space indent, shortest round-trip numbers,
/// zero rewards and rewards of unavailable actions left out, trailing newline.
std::string serialize_environment(const Mdp& mdp, const Reward& reward, const Discount& discount);

Json discount_to_json(const Discount& d);
/// Throws parse_error for structural problems, parameter_out_of_range for bad values.
Discount discount_from_json(const Json& j, std::string_view path = "/discount", std::string_view source = "<input>");

/// {"s0": 0.5, ...}; missing states get 0, TERMINAL is rejected.
Potential parse_potential(std::string_view text, const Mdp& mdp, std::string_view source = "<input>");
Potential load_potential(const std::string& path, const Mdp& mdp);

std::string read_file(const std::string& path);
std::string sha256_hex(std::string_view bytes);
std::string tool_version();

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace tirl
