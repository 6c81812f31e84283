#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tirl/behaviour.hpp"
#include "tirl/cli.hpp"
#include "tirl/io.hpp"
#include "tirl/probes.hpp"
#include "tirl/reproduce.hpp"
#include "tirl/scenarios.hpp"
#include "tirl/shaping.hpp"
#include "tirl/solvers.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace tirl;

namespace {

// Rows over every action; unavailable actions are reported as None.
py::list q_rows(const Mdp& m, const QTable& q) {
    py::list out;
    for (StateId s = 0; s < m.num_states(); ++s) {
        py::list row;
        for (ActionId a = 0; a < m.num_actions(); ++a) row.append(m.is_available(s, a) ? py::cast(q(s, a)) : py::none());
        out.append(row);
    }
    return out;
}

py::list policy_rows(const Policy& pi) {
    py::list out;
    for (std::size_t t = 0; t < pi.num_times(); ++t) {
        py::list slice;
        for (StateId s = 0; s < pi.num_states(); ++s) {
            const auto d = pi.distribution(s, t);
            slice.append(std::vector<double>(d.begin(), d.end()));
        }
        out.append(slice);
    }
    return pi.kind() == PolicyKind::stationary ? py::list(out[0]) : out;
}

Environment scenario(const std::string& name, std::uint64_t seed, std::size_t states, std::size_t actions,
                     std::size_t branching) {
    Scenario sc = [&] {
        if (name == "gym") return gym();
        if (name == "delay") return delay();
        if (name == "crossroads") return crossroads();
        if (name == "tempt") return tempt();
        if (name == "random") return random_mdp(seed, {states, actions, branching});
        throw Error(ErrorCode::parameter_out_of_range, "unknown scenario \"" + name + "\"");
    }();
    return Environment{std::move(sc.mdp), std::move(sc.reward), sc.discount};
}

Environment with_reward(const Environment& env, Reward r) { return Environment{env.mdp, std::move(r), env.discount}; }

}  // namespace

PYBIND11_MODULE(_tirl, m) {
    m.doc() = "Time-inconsistent planning models, reward shaping and ambiguity probes";
    py::register_exception<Error>(m, "TirlError", PyExc_ValueError);

    py::class_<Environment>(m, "Environment")
        .def_static("from_json", [](const std::string& text) { return parse_environment(text); }, "text"_a)
        .def_static("load", &load_environment, "path"_a)
        .def_static("scenario", &scenario, "name"_a, "seed"_a = 0, "states"_a = 4, "actions"_a = 2, "branching"_a = 2)
        .def("to_json", [](const Environment& e) { return serialize_environment(e.mdp, e.reward, e.discount); })
        .def_property_readonly("states", [](const Environment& e) { return e.mdp.state_names(); })
        .def_property_readonly("actions", [](const Environment& e) { return e.mdp.action_names(); })
        .def_property_readonly("discount", [](const Environment& e) { return e.discount.to_spec(); })
        .def("available", [](const Environment& e, StateId s) {
            const auto av = e.mdp.available(s);
            return std::vector<ActionId>(av.begin(), av.end());
        }, "state"_a)
        .def("reward", [](const Environment& e, StateId s, ActionId a, StateId next) { return e.reward(s, a, next); },
             "state"_a, "action"_a, "next"_a)
        .def("validate", [](const Environment& e) {
            const EpisodicityReport r = validate(e.mdp);
            py::dict out;
            out["class"] = std::string(to_string(r.kind));
            out["horizon"] = r.horizon ? py::cast(*r.horizon) : py::none();
            return out;
        })
        .def("__repr__", [](const Environment& e) {
            std::ostringstream o;
            o << "<Environment states=" << e.mdp.num_states() << " actions=" << e.mdp.num_actions() << " discount="
              << e.discount.to_spec() << ">";
            return o.str();
        });

    m.def("naive_q", [](const Environment& e) { return q_rows(e.mdp, naive_q(e.mdp, e.reward, e.discount)); }, "env"_a);
    m.def("resolute_q", [](const Environment& e, const std::string& convention) {
        const TimedQTable q = resolute_q(e.mdp, e.reward, e.discount, parse_convention(convention));
        py::list out;
        for (std::size_t t = 0; t < q.num_times(); ++t) {
            py::list slice;
            for (StateId s = 0; s < e.mdp.num_states(); ++s) {
                const auto r = q.row(s, t);
                slice.append(std::vector<double>(r.begin(), r.end()));
            }
            out.append(slice);
        }
        return out;
    }, "env"_a, "convention"_a = "time_weighted");
    m.def("sophisticated", [](const Environment& e, double tie_eps) {
        const SophisticatedSolution sol = sophisticated_canonical(e.mdp, e.reward, e.discount, tie_eps);
        return py::make_tuple(q_rows(e.mdp, sol.q), policy_rows(sol.policy));
    }, "env"_a, "tie_eps"_a = kDefaultTieEps);

    m.def("boltzmann", [](const Environment& e, const std::string& model, double beta, const std::string& convention) {
        const ModelSpec spec{parse_model(model), beta, e.discount, parse_convention(convention)};
        return policy_rows(apply_model(e.mdp, e.reward, spec));
    }, "env"_a, "model"_a = "naive", "beta"_a = 1.0, "convention"_a = "time_weighted");

    m.def("shape", [](const Environment& e, const Potential& phi, const std::string& model) {
        if (model == "naive") return with_reward(e, apply_naive_shaping(e.mdp, e.reward, e.discount, phi));
        if (model == "sophisticated") return with_reward(e, apply_sophisticated_shaping(e.mdp, e.reward, e.discount, phi));
        throw Error(ErrorCode::parameter_out_of_range, "shape model must be naive or sophisticated");
    }, "env"_a, "phi"_a, "model"_a = "naive");
    m.def("shaping_potential", [](const Environment& a, const Environment& b, const std::string& model, double tol) {
        return check_shaping_equivalence(a.mdp, a.discount, a.reward, b.reward, parse_model(model), tol);
    }, "env"_a, "other"_a, "model"_a = "naive", "tol"_a = 1e-6,
       "Potential phi with Q_other = Q_env - phi, or None.");

    m.def("chain_probe", [](std::size_t length, std::size_t t, const std::string& d1, const std::string& d2, double x) {
        const Mdp chain = build_chain_mdp(length);
        const ProbeResult r = chain_counterexample(chain, Reward(chain), Discount::parse(d1), Discount::parse(d2), t, x);
        return py::dict("equal_under_source"_a = r.report.equal_under_source(),
                        "differ_under_target"_a = r.report.differ_under_target(),
                        "succeeded"_a = r.report.succeeded());
    }, "length"_a = 4, "t"_a = 2, "d1"_a = "hyperbolic:1", "d2"_a = "exponential:0.5", "x"_a = 1.0);

    m.def("reproduce", [](const std::string& target) {
        const GoldenTable t = reproduce(target);
        return py::make_tuple(t.passed(), render(t));
    }, "target"_a);
    m.def("reproduce_targets", &reproduce_targets);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"tirl"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "args"_a, "Runs the command-line tool in process; returns (exit code, stdout, stderr).");

    m.attr("__version__") = tool_version();
}
