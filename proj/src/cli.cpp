#include "tirl/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "tirl/behaviour.hpp"
#include "tirl/evaluation.hpp"
#include "tirl/io.hpp"
#include "tirl/probes.hpp"
#include "tirl/reproduce.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/shaping.hpp"
#include "tirl/solvers.hpp"

namespace tirl {

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

struct Input {
    std::string path;
    std::string bytes;
};

Input read_input(const std::string& path) { return {path, read_file(path)}; }

Json provenance(const std::vector<Input>& inputs, Json parameters) {
    Json p;
    p["tool"] = "tirl";
    p["version"] = tool_version();
    Json files = Json::array();
    for (const auto& in : inputs) files.push_back({{"path", in.path}, {"sha256", sha256_hex(in.bytes)}});
    p["inputs"] = files;
    p["parameters"] = std::move(parameters);
    return p;
}

void emit(std::ostream& out, const std::string& command, const std::vector<Input>& inputs, Json parameters,
          Json result) {
    Json doc;
    doc["command"] = command;
    doc["provenance"] = provenance(inputs, std::move(parameters));
    doc["result"] = std::move(result);
    out << dump(doc);
}

Json names_of(const Mdp& mdp, const std::vector<StateId>& states) {
    Json j = Json::array();
    for (StateId s : states) j.push_back(mdp.state_name(s));
    return j;
}

Json q_row(const Mdp& mdp, StateId s, std::span<const double> q) {
    Json row = Json::object();
    for (ActionId a : mdp.available(s)) row[mdp.action_name(a)] = q[a];
    return row;
}

Json q_json(const Mdp& mdp, const QTable& q) {
    Json j = Json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s) j[mdp.state_name(s)] = q_row(mdp, s, q.row(s));
    return j;
}

Json timed_q_json(const Mdp& mdp, const TimedQTable& q, const std::vector<std::vector<bool>>& feasible) {
    Json j = Json::array();
    for (std::size_t t = 0; t < q.num_times(); ++t) {
        Json slice = Json::object();
        for (StateId s = 0; s < mdp.num_states(); ++s)
            if (feasible[s][t]) slice[mdp.state_name(s)] = q_row(mdp, s, q.row(s, t));
        j.push_back({{"time", t}, {"q", slice}});
    }
    return j;
}

Json policy_json(const Mdp& mdp, const Policy& pi, const std::vector<std::vector<bool>>* feasible = nullptr) {
    if (pi.kind() == PolicyKind::stationary) {
        Json j = Json::object();
        for (StateId s = 0; s < mdp.num_states(); ++s) j[mdp.state_name(s)] = q_row(mdp, s, pi.distribution(s));
        return j;
    }
    Json j = Json::array();
    for (std::size_t t = 0; t < pi.num_times(); ++t) {
        Json slice = Json::object();
        for (StateId s = 0; s < mdp.num_states(); ++s)
            if (!feasible || (*feasible)[s][t]) slice[mdp.state_name(s)] = q_row(mdp, s, pi.distribution(s, t));
        j.push_back({{"time", t}, {"policy", slice}});
    }
    return j;
}

Json reward_json(const Mdp& mdp, const Reward& r) {
    return environment_to_json(mdp, r, Discount::hyperbolic(1.0))["reward"];
}

Json comparison_json(const Mdp& mdp, const ModelComparison& c) {
    Json j;
    j["model"] = std::string(to_string(c.model));
    j["equal"] = c.equal;
    j["deviation"] = c.deviation;
    j["state"] = c.state ? Json(mdp.state_name(*c.state)) : Json();
    j["time"] = c.time ? Json(*c.time) : Json();
    return j;
}

Json report_json(const Mdp& mdp, const ProbeReport& r) {
    Json j;
    Json src = Json::array(), tgt = Json::array();
    for (const auto& c : r.source) src.push_back(comparison_json(mdp, c));
    for (const auto& c : r.target) tgt.push_back(comparison_json(mdp, c));
    j["source"] = src;
    j["target"] = tgt;
    j["equal_under_source"] = r.equal_under_source();
    j["max_source_deviation"] = r.max_source_deviation();
    j["differ_under_target"] = r.differ_under_target();
    j["witness_state"] = r.witness_state ? Json(mdp.state_name(*r.witness_state)) : Json();
    if (r.optimal_flip)
        j["optimal_flip"] = {{"gamma", r.optimal_flip->gamma},
                             {"x", r.optimal_flip->x},
                             {"state", mdp.state_name(r.optimal_flip->state)}};
    else
        j["optimal_flip"] = Json();
    j["succeeded"] = r.succeeded();
    return j;
}

Json potential_json(const Mdp& mdp, const Potential& phi) {
    Json j = Json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s) j[mdp.state_name(s)] = phi[s];
    return j;
}

int cmd_validate(const std::string& path, std::ostream& out) {
    const Input in = read_input(path);
    const Environment env = parse_environment(in.bytes, path);
    const Mdp& m = env.mdp;
    const EpisodicityReport rep = validate(m);
    Json r;
    r["class"] = std::string(to_string(rep.kind));
    r["horizon"] = rep.horizon ? Json(*rep.horizon) : Json();
    r["cycle"] = names_of(m, rep.cycle);
    r["end_component"] = names_of(m, rep.end_component);
    if (rep.kind == Episodicity::bounded) {
        Json layers = Json::array();
        for (const auto& layer : layer_partition(m).layers) layers.push_back(names_of(m, layer));
        r["layers"] = layers;
    }
    if (rep.kind != Episodicity::non_episodic) {
        const ControllableStates cs = controllable_states(m);
        r["controllable"] = names_of(m, cs.controllable);
        r["controllable_roots"] = names_of(m, cs.roots);
    }
    emit(out, "validate", {in}, Json::object(), r);
    return rep.kind == Episodicity::non_episodic ? kVerdictFailed : kOk;
}

int cmd_solve(const std::string& path, const std::string& model_name, const std::string& convention_name,
              double tie_eps, std::ostream& out) {
    const Input in = read_input(path);
    const Environment env = parse_environment(in.bytes, path);
    const Mdp& m = env.mdp;
    const Model model = parse_model(model_name);
    const QConvention convention = parse_convention(convention_name);
    Json params{{"model", model_name}, {"convention", convention_name}, {"tie_eps", tie_eps}};
    Json r;
    switch (model) {
        case Model::resolute: {
            const auto feasible = feasible_sites(m, require_bounded(m));
            const TimedQTable q = resolute_q(m, env.reward, env.discount, convention);
            r["q"] = timed_q_json(m, q, feasible);
            r["policy"] = policy_json(m, resolute_policy(m, q, tie_eps), &feasible);
            break;
        }
        case Model::naive: {
            const QTable q = naive_q(m, env.reward, env.discount);
            r["q"] = q_json(m, q);
            r["policy"] = policy_json(m, greedy_policy(m, q, tie_eps));
            break;
        }
        case Model::sophisticated: {
            const auto sol = sophisticated_canonical(m, env.reward, env.discount, tie_eps);
            r["q"] = q_json(m, sol.q);
            r["policy"] = policy_json(m, sol.policy);
            break;
        }
    }
    emit(out, "solve", {in}, params, r);
    return kOk;
}

int cmd_boltzmann(const std::string& path, const std::string& model_name, double beta,
                  const std::string& convention_name, double tie_eps, std::ostream& out) {
    const Input in = read_input(path);
    const Environment env = parse_environment(in.bytes, path);
    ModelSpec spec{parse_model(model_name), beta, env.discount, parse_convention(convention_name), tie_eps};
    const Policy pi = apply_model(env.mdp, env.reward, spec);
    std::vector<std::vector<bool>> feasible;
    if (spec.model == Model::resolute) feasible = feasible_sites(env.mdp, layer_partition(env.mdp));
    Json params{{"model", model_name}, {"beta", beta}, {"convention", convention_name}, {"tie_eps", tie_eps}};
    emit(out, "boltzmann", {in}, params,
         Json{{"policy", policy_json(env.mdp, pi, feasible.empty() ? nullptr : &feasible)}});
    return kOk;
}

int cmd_shape(const std::string& path, const std::string& model_name, const std::string& phi_path,
              std::optional<double> gamma, double tie_eps, const std::string& output, std::ostream& out) {
    const Input in = read_input(path);
    const Environment env = parse_environment(in.bytes, path);
    const Potential phi = load_potential(phi_path, env.mdp);
    Reward shaped;
    if (model_name == "naive") {
        shaped = apply_naive_shaping(env.mdp, env.reward, env.discount, phi);
    } else if (model_name == "sophisticated") {
        shaped = apply_sophisticated_shaping(env.mdp, env.reward, env.discount, phi, tie_eps);
    } else {
        if (!gamma) {
            if (env.discount.family() != DiscountFamily::exponential)
                throw Error(ErrorCode::parameter_out_of_range, "classic shaping needs --gamma for a non-exponential discount");
            gamma = env.discount.parameter();
        }
        shaped = apply_classic_shaping(env.reward, phi, *gamma);
    }
    const std::string text = serialize_environment(env.mdp, shaped, env.discount);
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw Error(ErrorCode::parse_error, output + ": cannot write file");
        f << text;
    }
    return kOk;
}

int cmd_check_equiv(const std::string& path1, const std::string& path2, const std::string& model_name, double beta,
                    const std::string& convention_name, double shift_tol, double policy_tol, double tie_eps,
                    std::ostream& out) {
    const Input in1 = read_input(path1), in2 = read_input(path2);
    const Environment e1 = parse_environment(in1.bytes, path1);
    const Environment e2 = parse_environment(in2.bytes, path2);
    const Reward none1(e1.mdp), none2(e2.mdp);
    if (environment_to_json(e1.mdp, none1, e1.discount) != environment_to_json(e2.mdp, none2, e2.discount))
        throw Error(ErrorCode::parameter_out_of_range, "the two files differ in more than the reward");
    const Mdp& m = e1.mdp;
    const Model model = parse_model(model_name);
    const QConvention convention = parse_convention(convention_name);

    ModelSpec spec{model, beta, e1.discount, convention, tie_eps};
    const Policy p1 = apply_model(m, e1.reward, spec);
    const Policy p2 = apply_model(m, e2.reward, spec);
    std::vector<std::vector<bool>> mask;
    if (model == Model::resolute) mask = feasible_sites(m, require_bounded(m));
    const PolicyComparison cmp = policies_equal(p1, p2, policy_tol, mask.empty() ? nullptr : &mask);

    Json r;
    r["policies_equal"] = cmp.equal;
    r["policy_deviation"] = cmp.deviation;
    r["first_difference"] = cmp.state ? Json{{"state", m.state_name(*cmp.state)}, {"time", cmp.time ? *cmp.time : 0}}
                                      : Json();
    bool shift_found = false;
    if (model == Model::resolute) {
        const auto phi = resolute_shift_test(m, e1.discount, e1.reward, e2.reward, convention, shift_tol);
        shift_found = phi.has_value();
        if (phi) {
            Json slices = Json::array();
            for (std::size_t t = 0; t < phi->size(); ++t) {
                Json slice = Json::object();
                for (StateId s = 0; s < m.num_states(); ++s)
                    if (!std::isnan((*phi)[t][s])) slice[m.state_name(s)] = (*phi)[t][s];
                slices.push_back({{"time", t}, {"potential", slice}});
            }
            r["potential"] = slices;
        } else {
            r["potential"] = Json();
        }
    } else {
        const auto phi = check_shaping_equivalence(m, e1.discount, e1.reward, e2.reward, model, shift_tol, tie_eps);
        shift_found = phi.has_value();
        r["potential"] = phi ? potential_json(m, *phi) : Json();
    }
    r["equivalent"] = cmp.equal && shift_found;
    Json params{{"model", model_name},         {"beta", beta},         {"convention", convention_name},
                {"shift_tol", shift_tol},      {"policy_tol", policy_tol}, {"tie_eps", tie_eps}};
    emit(out, "check-equiv", {in1, in2}, params, r);
    return cmp.equal && shift_found ? kOk : kVerdictFailed;
}

struct ProbeArgs {
    std::string kind = "chain";
    std::string d1 = "hyperbolic:1";
    std::string d2 = "exponential:0.5";
    double beta1 = 1.0, beta2 = 1.0, x = 1.0;
    std::size_t t = 2, length = 4, actions = 2;
    std::optional<double> gamma;
    std::string convention = "time_weighted";
    double tol = 1e-9;
    std::string path;
};

int cmd_probe(const ProbeArgs& a, std::ostream& out) {
    const Discount d1 = Discount::parse(a.d1), d2 = Discount::parse(a.d2);
    ProbeOptions opts;
    opts.beta1 = a.beta1;
    opts.beta2 = a.beta2;
    opts.convention = parse_convention(a.convention);
    opts.tol = a.tol;
    opts.flip_gamma = a.gamma;
    Json params{{"kind", a.kind},     {"d1", d1.to_spec()},   {"d2", d2.to_spec()}, {"beta1", a.beta1},
                {"beta2", a.beta2},   {"x", a.x},             {"convention", a.convention}, {"tol", a.tol},
                {"gamma", a.gamma ? Json(*a.gamma) : Json()}};
    std::vector<Input> inputs;
    Json r;
    bool ok = false;
    if (a.kind == "chain") {
        if (!a.path.empty()) throw Error(ErrorCode::parameter_out_of_range, "the chain probe builds its own MDP");
        const Mdp chain = build_chain_mdp(a.length, a.actions);
        const ProbeResult res = chain_counterexample(chain, Reward(chain), d1, d2, a.t, a.x, opts);
        params["t"] = a.t;
        params["length"] = a.length;
        params["actions"] = a.actions;
        r["report"] = report_json(chain, res.report);
        r["r2"] = reward_json(chain, res.r2);
        ok = res.report.succeeded();
    } else {
        if (a.path.empty()) throw Error(ErrorCode::parameter_out_of_range, "the controllable probe needs an environment file");
        inputs.push_back(read_input(a.path));
        const Environment env = parse_environment(inputs.back().bytes, a.path);
        const ProbeResult res = controllable_counterexample(env.mdp, env.reward, d1, d2, a.x, opts);
        r["controlled_state"] = env.mdp.state_name(*res.report.parameters.controlled_state);
        r["report"] = report_json(env.mdp, res.report);
        r["r2"] = reward_json(env.mdp, res.r2);
        ok = res.report.succeeded();
    }
    emit(out, "probe", inputs, params, r);
    return ok ? kOk : kVerdictFailed;
}

int cmd_reproduce(const std::string& target, std::ostream& out) {
    std::vector<std::string> targets;
    if (target == "all") {
        targets = reproduce_targets();
    } else {
        targets.push_back(target);
    }
    bool all = true;
    for (const auto& t : targets) {
        const GoldenTable table = reproduce(t);
        out << render(table);
        all = all && table.passed();
    }
    if (targets.size() > 1) out << "overall: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? kOk : kVerdictFailed;
}

int cmd_oracle(const std::string& path, const std::string& check, std::uint64_t cap, std::ostream& out) {
    const Input in = read_input(path);
    const Environment env = parse_environment(in.bytes, path);
    require_bounded(env.mdp);
    const bool values = check == "values" || check == "all";
    const bool classes = check == "classes" || check == "all";
    const OracleAgreement ag = solver_oracle_agreement(env.mdp, env.reward, env.discount, values, classes, cap);
    Json r;
    r["exact"] = ag.exact;
    if (values) {
        r["policies_valued"] = ag.policies_valued;
        r["max_value_gap"] = ag.max_value_gap;
    }
    if (classes) {
        r["memberships_checked"] = ag.memberships_checked;
        r["class_mismatches"] = ag.class_mismatches;
        r["first_mismatch"] = ag.class_mismatches ? Json(ag.first_mismatch) : Json();
    }
    const bool agree = ag.class_mismatches == 0 && ag.max_value_gap <= 1e-9;
    r["agree"] = agree;
    emit(out, "oracle", {in}, Json{{"check", check}, {"cap", cap}}, r);
    return agree ? kOk : kVerdictFailed;
}

int cmd_export(const std::string& name, std::uint64_t seed, std::size_t states, std::size_t actions,
               std::size_t branching, std::ostream& out) {
    std::optional<Scenario> sc;
    if (name == "gym") sc = gym();
    if (name == "delay") sc = delay();
    if (name == "crossroads") sc = crossroads();
    if (name == "tempt") sc = tempt();
    if (name == "random") {
        RandomMdpOptions o;
        o.num_states = states;
        o.num_actions = actions;
        o.branching = branching;
        sc = random_mdp(seed, o);
    }
    out << serialize_environment(sc->mdp, sc->reward, sc->discount);
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Planning-model solvers, reward-ambiguity probes and reproduction checks"};
    app.name("tirl");
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    const std::vector<std::string> models{"resolute", "naive", "sophisticated"};
    const std::vector<std::string> conventions{"time_weighted", "literal"};
    std::string path, path2, model = "naive", convention = "time_weighted", phi, output, check = "all", target;
    double beta = 1.0, tie_eps = kDefaultTieEps, shift_tol = 1e-6, policy_tol = 1e-9;
    std::optional<double> gamma;
    std::uint64_t cap = kDefaultEnumerationCap;
    ProbeArgs probe;

    auto* validate_cmd = app.add_subcommand("validate", "Classify an environment and list its layers");
    validate_cmd->add_option("path", path, "environment file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Q-table and greedy policy of a planning model");
    solve_cmd->add_option("path", path, "environment file")->required();
    solve_cmd->add_option("--model", model)->check(CLI::IsMember(models))->capture_default_str();
    solve_cmd->add_option("--convention", convention)->check(CLI::IsMember(conventions))->capture_default_str();
    solve_cmd->add_option("--tie-eps", tie_eps)->check(CLI::PositiveNumber)->capture_default_str();

    auto* boltz_cmd = app.add_subcommand("boltzmann", "Softmax policy of a planning model");
    boltz_cmd->add_option("path", path, "environment file")->required();
    boltz_cmd->add_option("--model", model)->check(CLI::IsMember(models))->capture_default_str();
    boltz_cmd->add_option("--beta", beta)->check(CLI::NonNegativeNumber)->capture_default_str();
    boltz_cmd->add_option("--convention", convention)->check(CLI::IsMember(conventions))->capture_default_str();
    boltz_cmd->add_option("--tie-eps", tie_eps)->check(CLI::PositiveNumber)->capture_default_str();

    auto* shape_cmd = app.add_subcommand("shape", "Write the environment with a shaped reward");
    shape_cmd->add_option("path", path, "environment file")->required();
    shape_cmd->add_option("--model", model)
        ->check(CLI::IsMember({"naive", "sophisticated", "classic"}))
        ->capture_default_str();
    shape_cmd->add_option("--phi", phi, "potential file")->required();
    shape_cmd->add_option("--gamma", gamma, "classic shaping factor; defaults to the exponential discount's gamma");
    shape_cmd->add_option("--tie-eps", tie_eps)->check(CLI::PositiveNumber)->capture_default_str();
    shape_cmd->add_option("-o,--output", output, "write here instead of stdout");

    auto* equiv_cmd = app.add_subcommand("check-equiv", "Do two rewards give the same softmax policy?");
    equiv_cmd->add_option("path", path, "first environment file")->required();
    equiv_cmd->add_option("path2", path2, "second environment file")->required();
    equiv_cmd->add_option("--model", model)->check(CLI::IsMember(models))->capture_default_str();
    equiv_cmd->add_option("--beta", beta)->check(CLI::PositiveNumber)->capture_default_str();
    equiv_cmd->add_option("--convention", convention)->check(CLI::IsMember(conventions))->capture_default_str();
    equiv_cmd->add_option("--shift-tol", shift_tol)->check(CLI::PositiveNumber)->capture_default_str();
    equiv_cmd->add_option("--policy-tol", policy_tol)->check(CLI::PositiveNumber)->capture_default_str();
    equiv_cmd->add_option("--tie-eps", tie_eps)->check(CLI::PositiveNumber)->capture_default_str();

    auto* probe_cmd = app.add_subcommand("probe", "Build a reward pair that one discount cannot tell apart");
    probe_cmd->add_option("--kind", probe.kind)->check(CLI::IsMember({"chain", "controllable"}))->capture_default_str();
    probe_cmd->add_option("--d1", probe.d1, "source discount, e.g. hyperbolic:1")->capture_default_str();
    probe_cmd->add_option("--d2", probe.d2, "target discount")->capture_default_str();
    probe_cmd->add_option("--beta1", probe.beta1)->check(CLI::PositiveNumber)->capture_default_str();
    probe_cmd->add_option("--beta2", probe.beta2)->check(CLI::PositiveNumber)->capture_default_str();
    probe_cmd->add_option("--x", probe.x)->capture_default_str();
    probe_cmd->add_option("--t", probe.t, "chain step carrying the surgery")->capture_default_str();
    probe_cmd->add_option("--length", probe.length, "chain states")->capture_default_str();
    probe_cmd->add_option("--actions", probe.actions, "chain actions")->capture_default_str();
    probe_cmd->add_option("--gamma", probe.gamma, "also search an optimal-policy flip under gamma^t");
    probe_cmd->add_option("--convention", probe.convention)->check(CLI::IsMember(conventions))->capture_default_str();
    probe_cmd->add_option("--tol", probe.tol, "policy equality tolerance")->capture_default_str();
    probe_cmd->add_option("path", probe.path, "environment file (controllable probe)");

    auto* repro_cmd = app.add_subcommand("reproduce", "Golden checks on the built-in examples");
    std::vector<std::string> targets = reproduce_targets();
    targets.push_back("all");
    repro_cmd->add_option("target", target)->required()->check(CLI::IsMember(targets));

    auto* oracle_cmd = app.add_subcommand("oracle", "Compare solvers with brute-force enumeration");
    oracle_cmd->add_option("path", path, "environment file")->required();
    oracle_cmd->add_option("--check", check)->check(CLI::IsMember({"values", "classes", "all"}))->capture_default_str();
    oracle_cmd->add_option("--cap", cap, "largest policy space to enumerate")->capture_default_str();

    auto* export_cmd = app.add_subcommand("export", "Print a built-in scenario as an environment file");
    std::string scenario;
    std::uint64_t seed = 0;
    std::size_t states = 4, actions = 2, branching = 2;
    export_cmd->add_option("scenario", scenario)
        ->required()
        ->check(CLI::IsMember({"gym", "delay", "crossroads", "tempt", "random"}));
    export_cmd->add_option("--seed", seed, "random scenario seed")->capture_default_str();
    export_cmd->add_option("--states", states)->capture_default_str();
    export_cmd->add_option("--actions", actions)->capture_default_str();
    export_cmd->add_option("--branching", branching)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "tirl: " << e.what() << "\n";
        err << "run 'tirl --help' for usage\n";
        return kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(path, out);
        if (*solve_cmd) return cmd_solve(path, model, convention, tie_eps, out);
        if (*boltz_cmd) return cmd_boltzmann(path, model, beta, convention, tie_eps, out);
        if (*shape_cmd) return cmd_shape(path, model, phi, gamma, tie_eps, output, out);
        if (*equiv_cmd)
            return cmd_check_equiv(path, path2, model, beta, convention, shift_tol, policy_tol, tie_eps, out);
        if (*probe_cmd) return cmd_probe(probe, out);
        if (*repro_cmd) return cmd_reproduce(target, out);
        if (*oracle_cmd) return cmd_oracle(path, check, cap, out);
        if (*export_cmd) return cmd_export(scenario, seed, states, actions, branching, out);
    } catch (const Error& e) {
        err << "tirl: " << e.what() << "\n";
        return kUsage;
    } catch (const Json::exception& e) {
        err << "tirl: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace tirl
