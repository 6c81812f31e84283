#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tirl/cli.hpp"
#include "tirl/io.hpp"

using namespace tirl;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "tirl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Writes `text` to a file that is removed when the guard dies.
struct TempFile {
    std::string path;
    TempFile(std::string p, const std::string& text) : path(std::move(p)) { std::ofstream(path) << text; }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("help and version") {
    const Run h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("reproduce") != std::string::npos);
    const Run v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out == tool_version() + "\n");
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("export then validate and solve") {
    const Run ex = run({"export", "gym"});
    REQUIRE(ex.code == 0);
    TempFile env("cli_gym.json", ex.out);

    const Run val = run({"validate", env.path});
    CHECK(val.code == 0);
    const Json doc = Json::parse(val.out);
    CHECK(doc["command"] == "validate");
    CHECK(doc["result"]["class"] == "bounded");
    CHECK(doc["result"]["horizon"] == 3);
    CHECK(doc["provenance"]["inputs"][0]["sha256"] == sha256_hex(ex.out));

    const Run a = run({"solve", env.path, "--model", "sophisticated"});
    const Run b = run({"solve", env.path, "--model", "sophisticated"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Json sol = Json::parse(a.out);
    CHECK(sol["result"]["policy"]["s0"]["go_home"] == 1.0);
    CHECK(sol["result"]["q"]["s0"]["buy"].get<double>() == doctest::Approx(-1.0));

    const Run res = run({"solve", env.path, "--model", "resolute", "--convention", "literal"});
    CHECK(res.code == 0);
    CHECK(Json::parse(res.out)["result"]["q"][1]["q"]["s1"]["exercise"].get<double>() == doctest::Approx(-6.0));

    const Run bz = run({"boltzmann", env.path, "--model", "naive", "--beta", "2"});
    CHECK(bz.code == 0);
    CHECK(Json::parse(bz.out)["result"]["policy"]["s0"]["buy"].get<double>() ==
          doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));

    CHECK(run({"solve", env.path, "--model", "greedy"}).code == 2);
}

TEST_CASE("validate flags non-episodic files") {
    TempFile loop("cli_loop.json", R"({"states": ["a"], "actions": ["x"], "initial": {"a": 1},
        "transitions": {"a": {"x": {"a": 1}}}, "discount": {"family": "hyperbolic", "k": 1}})");
    const Run r = run({"validate", loop.path});
    CHECK(r.code == 1);
    const Json doc = Json::parse(r.out);
    CHECK(doc["result"]["class"] == "non-episodic");
    CHECK(doc["result"]["end_component"] == Json::array({"a"}));

    TempFile broken("cli_broken.json", "{\"states\": [");
    const Run p = run({"validate", broken.path});
    CHECK(p.code == 2);
    CHECK(p.err.find("cli_broken.json: 1:") != std::string::npos);
    CHECK(run({"validate", "no_such_file.json"}).code == 2);
}

TEST_CASE("shape then check-equiv") {
    TempFile env("cli_cross.json", run({"export", "crossroads"}).out);
    TempFile phi("cli_phi.json", R"({"s0": 1.5, "s2": -0.5})");
    for (const char* model : {"naive", "sophisticated"}) {
        CAPTURE(model);
        const Run sh = run({"shape", env.path, "--model", model, "--phi", phi.path});
        REQUIRE(sh.code == 0);
        TempFile shaped("cli_shaped.json", sh.out);
        const Run eq = run({"check-equiv", env.path, shaped.path, "--model", model});
        CHECK(eq.code == 0);
        const Json doc = Json::parse(eq.out);
        CHECK(doc["result"]["equivalent"] == true);
        CHECK(doc["result"]["potential"]["s0"].get<double>() == doctest::Approx(1.5));
    }
    // A classic shaping under a hyperbolic discount needs an explicit factor.
    CHECK(run({"shape", env.path, "--model", "classic", "--phi", phi.path}).code == 2);
    CHECK(run({"shape", env.path, "--model", "classic", "--phi", phi.path, "--gamma", "0.5"}).code == 0);

    TempFile other("cli_delay.json", run({"export", "delay"}).out);
    CHECK(run({"check-equiv", env.path, other.path}).code == 2);
}

TEST_CASE("probe and reproduce") {
    const Run chain = run({"probe", "--kind", "chain", "--gamma", "0.5"});
    CHECK(chain.code == 0);
    const Json doc = Json::parse(chain.out);
    CHECK(doc["result"]["report"]["succeeded"] == true);
    CHECK(doc["result"]["report"]["optimal_flip"].is_object());

    CHECK(run({"probe", "--kind", "chain", "--d2", "hyperbolic:1"}).code == 2);
    TempFile gym("cli_probe_gym.json", run({"export", "gym"}).out);
    CHECK(run({"probe", "--kind", "controllable", "--d2", "exponential:0.9", gym.path}).code == 0);
    CHECK(run({"probe", "--kind", "controllable", gym.path}).code == 1);

    const Run rep = run({"reproduce", "crossroads"});
    CHECK(rep.code == 0);
    CHECK(rep.out.find("crossroads: PASS") != std::string::npos);
    CHECK(run({"reproduce", "everything"}).code == 2);
}

TEST_CASE("oracle subcommand") {
    TempFile env("cli_rand.json", run({"export", "random", "--seed", "5", "--states", "3"}).out);
    const Run r = run({"oracle", env.path});
    CHECK(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["result"]["agree"] == true);
    CHECK(doc["result"]["class_mismatches"] == 0);
    CHECK(run({"oracle", env.path, "--cap", "2"}).code == 2);
}
