#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "circlab/report.hpp"
#include "cli.hpp"

using namespace circlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("circlab-test-" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("spectrum of the identity row") {
    const auto r = run({"spectrum", "--n", "4", "--row", "1,0,0,0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["eigenvalues"].size() == 4);
    for (const auto& e : j["eigenvalues"]) CHECK(e[0].get<double>() == doctest::Approx(1.0));
    CHECK(j["kappa"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"spectrum", "--bogus"}).code == 1);
    CHECK(run({"spectrum", "--n", "3", "--row", "1,2"}).code == 1);
    CHECK(run({"experiment", "table1", "--two-n", "7", "--trials", "1"}).code == 1);
    const auto r = run({"verify-lemmas", "--lemma", "nope"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("lemma sweeps exit cleanly") {
    CHECK(run({"verify-lemmas", "--lemma", "cos-full", "--m", "1000", "--theta-grid", "36"}).code == 0);
    CHECK(run({"verify-lemmas", "--lemma", "cos-half", "--n", "2000", "--k-max", "10"}).code == 0);
    CHECK(run({"verify-lemmas", "--lemma", "vk", "--trials", "20"}).code == 0);
    CHECK(run({"verify-lemmas", "--lemma", "gcd", "--M-max", "200"}).code == 0);
}

TEST_CASE("schur check and maxmod") {
    const auto s = run({"schur", "--two-n", "16", "--check", "--normalization", "unnormalized"});
    CHECK(s.code == 0);
    CHECK(nlohmann::json::parse(s.out)["oracle_relative_difference"].get<double>() < 1e-9);
    CHECK(run({"maxmod", "--n", "128", "--dist", "rademacher"}).code == 0);
    CHECK(run({"lcd", "--vector", "1,1,1,1", "--L", "2"}).code == 0);
    CHECK(run({"lcd", "--vk", "12,1", "--L", "2", "--r-max", "2"}).code == 0);
}

TEST_CASE("experiment outputs and config echo round trip") {
    const auto dir = scratch("echo");
    const auto first = run({"--out-dir", dir.string(), "experiment", "sigmin", "--n", "64,128", "--trials", "25",
                            "--seed", "9", "--dist", "uniform", "--epsilons", "0.5,1"});
    REQUIRE(first.code == 0);
    for (const char* f : {"sigmin_trials.csv", "sigmin_summary.json", "sigmin_config.json", "sigmin_tail.csv"})
        CHECK(fs::exists(dir / f));
    const auto summary = nlohmann::json::parse(slurp(dir / "sigmin_summary.json"));
    CHECK(summary["schema_version"] == kSchemaVersion);
    CHECK(summary["config"]["seed"] == 9);
    CHECK(summary["count"] == 25);

    const auto dir2 = scratch("echo2");
    const auto second = run({"--out-dir", dir2.string(), "experiment", "sigmin", "--config",
                             (dir / "sigmin_summary.json").string()});
    REQUIRE(second.code == 0);
    CHECK(slurp(dir / "sigmin_trials.csv") == slurp(dir2 / "sigmin_trials.csv"));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("flags override the config file") {
    const auto dir = scratch("override");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "cfg.json");
        f << R"({"sizes": [16], "trials": 4, "seed": 3, "distribution": "rademacher"})";
    }
    const auto r = run({"--format", "json", "experiment", "kappa", "--config", (dir / "cfg.json").string(),
                        "--trials", "6"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["trials"] == 6);
    CHECK(j["config"]["distribution"] == "rademacher");
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"sizes": [16], "colour": "blue"})";
    }
    CHECK(run({"experiment", "kappa", "--config", (dir / "bad.json").string()}).code == 1);
    fs::remove_all(dir);
}

TEST_CASE("same argv gives the same output") {
    const std::vector<std::string> args{"--format", "csv", "experiment", "table1", "--two-n", "16", "--trials", "5"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("config json round trips") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::Interlace;
    c.sizes = {8, 16};
    c.distribution.kind = DistributionKind::Rademacher;
    c.xi_star_mode = XiStarMode::Fixed;
    c.xi_star = 0.25;
    c.normalization = FourierNormalization::Unitary;
    const auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
}
