#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "alertswarm/config.hpp"
#include "alertswarm/errors.hpp"
#include "alertswarm/metrics_io.hpp"
#include "alertswarm/runner.hpp"

using namespace alertswarm;
using namespace alertswarm::cli;
namespace fs = std::filesystem;

#ifndef ALERTSWARM_SOURCE_DIR
#define ALERTSWARM_SOURCE_DIR "."
#endif

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("alertswarm_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("empty yaml parses to the default config") {
    const sim::WorldConfig cfg = parse_config("");
    CHECK(cfg.n_agents == 50);
    CHECK(cfg.gso.rho == 0.4);
    CHECK(cfg.thresholds.truth_threshold == 0.5);
}

TEST_CASE("the shipped default config is valid") {
    const fs::path path = fs::path(ALERTSWARM_SOURCE_DIR) / "configs" / "default.yaml";
    const sim::WorldConfig cfg = load_config(path.string());
    CHECK(cfg.n_agents == 50);
    CHECK(cfg.ticks == 300);
    CHECK(cfg.profile_mix == std::array<double, 4>{0.70, 0.10, 0.10, 0.10});
}

TEST_CASE("config diagnostics name field, value and rule") {
    try {
        parse_config("profiles:\n  mix: {honest: 0.5, silent_liar: 0.4}\n");
        FAIL("expected InvalidConfig");
    } catch (const InvalidConfig& e) {
        CHECK(e.field() == std::string("profiles.mix"));
    }

    try {
        parse_config("gso:\n  rho: 1.2\n");
        FAIL("expected InvalidConfig");
    } catch (const InvalidConfig& e) {
        CHECK(std::string(e.what()).find("rho must be in (0,1)") != std::string::npos);
        CHECK(std::string(e.what()).find("1.2") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("world:\n  agents: [\n"), ParseError);
    CHECK_THROWS_AS(parse_config("wrold: {}\n"), InvalidConfig);  // unknown key
    CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ParseError);
}

TEST_CASE("seed resolution: count vs list") {
    CHECK(resolve_seeds("", 42) == std::vector<std::uint64_t>{42});
    CHECK(resolve_seeds("3", 42) == std::vector<std::uint64_t>{42, 43, 44});
    CHECK(resolve_seeds("7,3,11", 42) == std::vector<std::uint64_t>{7, 3, 11});
    CHECK(resolve_seeds("9,", 42) == std::vector<std::uint64_t>{9});
    CHECK_THROWS_AS(resolve_seeds("3,3", 42), InvalidConfig);
    CHECK_THROWS_AS(resolve_seeds("abc", 42), InvalidConfig);
    CHECK_THROWS_AS(resolve_seeds("0", 42), InvalidConfig);
}

TEST_CASE("csv round trip reproduces the summary statistics") {
    sim::WorldConfig cfg;
    cfg.n_agents = 20;
    cfg.ticks = 50;
    cfg.seed = 31;
    cfg.profile_mix = {0.7, 0.1, 0.1, 0.1};
    const sim::MetricsRecord record = sim::run_experiment(cfg);
    const SeedStats direct = seed_stats(record);

    std::stringstream csv;
    write_metrics_csv(record, csv);
    const SeedStats parsed = seed_stats_from_csv(csv, cfg.seed);

    CHECK(parsed.ticks == direct.ticks);
    CHECK(parsed.total_messages == direct.total_messages);
    CHECK(parsed.mean_messages_per_tick == direct.mean_messages_per_tick);
    for (std::size_t k = 1; k < sim::kProfileKindCount; ++k) {
        CHECK(parsed.recall[k] == direct.recall[k]);
        CHECK(parsed.precision[k] == direct.precision[k]);
    }
}

TEST_CASE("run command writes per-seed files plus a summary") {
    TempDir tmp("run");
    const fs::path config = tmp.path / "config.yaml";
    {
        std::ofstream out(config);
        out << "world: {agents: 15, ticks: 30, seed: 5}\n"
            << "profiles:\n  mix: {honest: 0.8, responsive_liar: 0.2}\n";
    }

    RunManifest manifest;
    manifest.config_path = config.string();
    manifest.out_dir = (tmp.path / "out").string();
    manifest.seeds = {5, 6, 7, 8, 9};
    CHECK(run_command(manifest) == kExitOk);

    for (std::uint64_t seed : manifest.seeds) {
        CHECK(fs::exists(tmp.path / "out" / ("metrics_" + std::to_string(seed) + ".csv")));
    }
    CHECK(fs::exists(tmp.path / "out" / "summary.json"));

    const auto summary =
        nlohmann::json::parse(read_file(tmp.path / "out" / "summary.json"));
    CHECK(summary.at("schema_version") == 1);
    CHECK(summary.at("seeds").size() == 5);
    CHECK(summary.at("aggregate").at("seeds") == 5);
}

TEST_CASE("identical manifests produce byte-identical outputs") {
    TempDir tmp("determinism");
    const fs::path config = tmp.path / "config.yaml";
    {
        std::ofstream out(config);
        out << "world: {agents: 12, ticks: 25, seed: 77}\n"
            << "profiles:\n  mix: {honest: 0.75, silent_liar: 0.25}\n";
    }
    RunManifest manifest;
    manifest.config_path = config.string();
    manifest.seeds = {77, 78};
    manifest.format = OutputFormat::Both;

    manifest.out_dir = (tmp.path / "a").string();
    CHECK(run_command(manifest) == kExitOk);
    manifest.out_dir = (tmp.path / "b").string();
    CHECK(run_command(manifest) == kExitOk);

    for (const char* name : {"metrics_77.csv", "metrics_78.csv", "metrics_77.json",
                             "metrics_78.json", "summary.json"}) {
        CHECK(read_file(tmp.path / "a" / name) == read_file(tmp.path / "b" / name));
        CHECK(!read_file(tmp.path / "a" / name).empty());
    }
}

TEST_CASE("report re-aggregates what run wrote") {
    TempDir tmp("report");
    const fs::path config = tmp.path / "config.yaml";
    {
        std::ofstream out(config);
        out << "world: {agents: 15, ticks: 40, seed: 11}\n"
            << "profiles:\n  mix: {honest: 0.8, silent_liar: 0.1, responsive_liar: 0.1}\n";
    }
    RunManifest manifest;
    manifest.config_path = config.string();
    manifest.out_dir = (tmp.path / "out").string();
    manifest.seeds = {11, 12, 13};
    REQUIRE(run_command(manifest) == kExitOk);

    const fs::path report_path = tmp.path / "report.json";
    CHECK(report_command(manifest.out_dir, report_path.string()) == kExitOk);

    const auto run_summary =
        nlohmann::json::parse(read_file(tmp.path / "out" / "summary.json"));
    const auto reported = nlohmann::json::parse(read_file(report_path));

    // The aggregate statistics recomputed from the CSVs must match exactly.
    CHECK(run_summary.at("aggregate") == reported.at("aggregate"));
    CHECK(reported.at("seeds").size() == 3);
}

TEST_CASE("report on an empty directory fails cleanly") {
    TempDir tmp("empty");
    CHECK(report_command(tmp.path.string(), "") == kExitValidationError);
}
