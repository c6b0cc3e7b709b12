#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcam/cli.hpp"
#include "qcam/errors.hpp"
#include "qcam/oracles.hpp"

using namespace qcam;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

double last_field(const std::string& line) {
    const auto pos = line.find_last_of(',');
    return std::stod(line.substr(pos + 1));
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("measure command prints the requested value") {
    cli::RunConfig cfg;
    cfg.command = "measure";
    cfg.state = "ghz";
    cfg.n = 6;
    cfg.theta = 0.8;
    cfg.measure = "m_hs";
    std::ostringstream out, diag;
    CHECK(cli::run(cfg, out, diag) == 0);
    const auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].find("value") != std::string::npos);
    CHECK(last_field(rows[1]) == doctest::Approx(oracle::ghz_m_hs(6, 0.8)).epsilon(1e-10));
}

TEST_CASE("mode table lists each nonnegative gap once") {
    cli::RunConfig cfg;
    cfg.command = "modes";
    cfg.state = "coherent";
    cfg.n = 4;
    std::ostringstream out, diag;
    CHECK(cli::run(cfg, out, diag) == 0);
    const auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 6);  // header + gaps 0..4
    CHECK(rows[0] == "omega,a_tr,a_hs");
}

TEST_CASE("json format carries the full reproducibility record") {
    cli::RunConfig cfg;
    cfg.command = "measure";
    cfg.state = "ghz";
    cfg.n = 5;
    cfg.format = "json";
    cfg.seed = 99;
    std::ostringstream out, diag;
    CHECK(cli::run(cfg, out, diag) == 0);
    const nlohmann::json doc = nlohmann::json::parse(out.str());
    CHECK(doc["command"] == "measure");
    CHECK(doc["version"] == std::string(cli::kVersion));
    CHECK(doc["seed"] == 99);
    CHECK(doc["config"]["n"] == 5);
    CHECK(doc["tolerances"].contains("trace_one"));
    REQUIRE(doc["rows"].is_array());
    CHECK(doc["rows"].size() == 1);
}

TEST_CASE("csv output file gets a metadata sidecar") {
    cli::RunConfig cfg;
    cfg.command = "measure";
    cfg.state = "coherent";
    cfg.n = 4;
    cfg.out = "cli_unit_out.csv";
    TempFile f(cfg.out), side(cfg.out + ".meta.json");
    std::ostringstream out, diag;
    CHECK(cli::run(cfg, out, diag) == 0);
    std::ifstream sidecar(side.path);
    REQUIRE(sidecar.good());
    nlohmann::json meta;
    sidecar >> meta;
    CHECK(meta["command"] == "measure");
    CHECK(meta["config"]["state"] == "coherent");
}

TEST_CASE("config file fields load and validate") {
    const std::string path = "cli_unit_cfg.json";
    TempFile f(path);
    {
        std::ofstream os(path);
        os << R"({"theta": 0.3, "n": 7, "state": "ghz", "sigma": 2.5})";
    }
    cli::RunConfig cfg;
    cli::apply_config_json(cfg, path);
    CHECK(cfg.theta == doctest::Approx(0.3));
    CHECK(cfg.n == 7);
    CHECK(cfg.state == "ghz");
    CHECK(cfg.sigma == "2.5");

    {
        std::ofstream os(path);
        os << R"({"no_such_field": 1})";
    }
    cli::RunConfig fresh;
    CHECK_THROWS_AS(cli::apply_config_json(fresh, path), ConfigError);
    {
        std::ofstream os(path);
        os << R"({"theta": "not a number"})";
    }
    CHECK_THROWS_AS(cli::apply_config_json(fresh, path), ConfigError);
    CHECK_THROWS_AS(cli::apply_config_json(fresh, "definitely_missing.json"), ConfigError);
}

TEST_CASE("bad inputs are rejected as configuration errors") {
    std::ostringstream out, diag;
    cli::RunConfig cfg;
    cfg.command = "measure";
    cfg.state = "nosuch";
    CHECK_THROWS_AS(cli::run(cfg, out, diag), ConfigError);

    cli::RunConfig sig;
    sig.command = "measure";
    sig.measure = "m_sigma";
    sig.sigma = "bogus";
    CHECK_THROWS_AS(cli::run(sig, out, diag), ConfigError);

    cli::RunConfig big;
    big.command = "measure";
    big.state = "ghz";
    big.n = 20;
    big.repr = "full";  // 2^20 is far past the representation cap
    CHECK_THROWS_AS(cli::run(big, out, diag), ConfigError);

    cli::RunConfig fmt;
    fmt.command = "measure";
    fmt.format = "yaml";
    CHECK_THROWS_AS(cli::run(fmt, out, diag), ConfigError);
}

TEST_CASE("evolution table has the requested sampling") {
    cli::RunConfig cfg;
    cfg.command = "evolve";
    cfg.state = "ghz";
    cfg.n = 3;
    cfg.channel = "dephasing";
    cfg.samples = 4;
    std::ostringstream out, diag;
    CHECK(cli::run(cfg, out, diag) == 0);
    const auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 5);  // header + 4 recorded times
    CHECK(rows[0].rfind("tau,", 0) == 0);
    // Times increase from zero.
    double prev = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i]);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(std::stod(rows[1]) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("floating cells round-trip through their text form") {
    for (double v : {1.0 / 3.0, 3.14159265358979323846, 1e-17, -2.5e300, 0.0, 6.02214076e23}) {
        const std::string s = cli::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("deterministic output for a fixed seed") {
    auto run_once = [] {
        cli::RunConfig cfg;
        cfg.command = "sweep-n";
        cfg.n_grid = {2, 4};
        cfg.seed = 7;
        std::ostringstream out, diag;
        REQUIRE(cli::run(cfg, out, diag) == 0);
        return out.str();
    };
    CHECK(run_once() == run_once());
}
