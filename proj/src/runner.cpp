#include "alertswarm/runner.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "alertswarm/config.hpp"
#include "alertswarm/errors.hpp"
#include "alertswarm/log.hpp"
#include "alertswarm/metrics_io.hpp"

namespace fs = std::filesystem;

namespace alertswarm::cli {

namespace {

std::uint64_t parse_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidConfig("seeds", "expected an unsigned integer, got '" + s + "'");
    }
    return std::stoull(s);
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    out.flush();
    if (!out.good()) {
        throw std::runtime_error("failed to write " + path.string());
    }
}

}  // namespace

std::vector<std::uint64_t> resolve_seeds(const std::string& selector,
                                         std::uint64_t base_seed) {
    std::vector<std::uint64_t> seeds;
    if (selector.empty()) {
        seeds.push_back(base_seed);
    } else if (selector.find(',') != std::string::npos) {
        std::string token;
        for (char c : selector + ",") {
            if (c == ',') {
                if (!token.empty()) seeds.push_back(parse_u64(token));
                token.clear();
            } else {
                token += c;
            }
        }
        if (seeds.empty()) throw InvalidConfig("seeds", "empty seed list");
    } else {
        const std::uint64_t count = parse_u64(selector);
        if (count < 1) throw InvalidConfig("seeds", "seed count must be >= 1");
        for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(base_seed + i);
    }

    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
        throw InvalidConfig("seeds", "duplicate seeds in list");
    }
    return seeds;
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "both") return OutputFormat::Both;
    throw InvalidConfig("format", "must be one of csv, json, both (got '" + name + "')");
}

int run_command(const RunManifest& manifest) {
    sim::WorldConfig config;
    try {
        config = load_config(manifest.config_path);
    } catch (const ParseError& e) {
        log_error(std::string("ParseError: ") + e.what());
        return kExitParseError;
    } catch (const InvalidConfig& e) {
        log_error(std::string("ValidationError: ") + e.what());
        return kExitValidationError;
    }
    if (manifest.seeds.empty()) {
        log_error("ValidationError: seeds: at least one seed is required");
        return kExitValidationError;
    }

    std::error_code ec;
    fs::create_directories(manifest.out_dir, ec);
    if (ec) {
        log_error("cannot create output directory " + manifest.out_dir + ": " +
                  ec.message());
        return kExitIoError;
    }

    const std::size_t n = manifest.seeds.size();
    std::vector<SeedStats> stats(n);
    std::vector<std::string> failures(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            const std::uint64_t seed = manifest.seeds[i];
            try {
                sim::WorldConfig run_config = config;
                run_config.seed = seed;
                const sim::MetricsRecord record = sim::run_experiment(run_config);

                const fs::path dir(manifest.out_dir);
                if (manifest.format != OutputFormat::Json) {
                    std::ostringstream csv;
                    write_metrics_csv(record, csv);
                    write_text_file(dir / ("metrics_" + std::to_string(seed) + ".csv"),
                                    csv.str());
                }
                if (manifest.format != OutputFormat::Csv) {
                    write_text_file(dir / ("metrics_" + std::to_string(seed) + ".json"),
                                    metrics_json(record).dump(2) + "\n");
                }
                stats[i] = seed_stats(record);
                log_info("seed " + std::to_string(seed) + " finished (" +
                         std::to_string(record.per_tick.size()) + " ticks)");
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_workers = std::min(n, hw);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool failed = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i].empty()) {
            failed = true;
            log_error("seed " + std::to_string(manifest.seeds[i]) + " failed: " +
                      failures[i]);
        }
    }
    if (failed) return kExitFailure;

    try {
        write_text_file(fs::path(manifest.out_dir) / "summary.json",
                        summary_json(stats).dump(2) + "\n");
    } catch (const std::exception& e) {
        log_error(e.what());
        return kExitIoError;
    }
    log_info("wrote summary for " + std::to_string(n) + " seed(s) to " +
             manifest.out_dir);
    return kExitOk;
}

int validate_command(const std::string& config_path) {
    try {
        (void)load_config(config_path);
    } catch (const ParseError& e) {
        log_error(std::string("ParseError: ") + e.what());
        return kExitParseError;
    } catch (const InvalidConfig& e) {
        log_error(std::string("ValidationError: ") + e.what());
        return kExitValidationError;
    }
    std::cout << "OK: " << config_path << " is a valid config\n";
    return kExitOk;
}

int report_command(const std::string& in_dir, const std::string& out_path) {
    std::vector<std::pair<std::uint64_t, fs::path>> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(in_dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind("metrics_", 0) != 0 || name.size() < 13 ||
            name.substr(name.size() - 4) != ".csv") {
            continue;
        }
        const std::string digits = name.substr(8, name.size() - 12);
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
            continue;
        }
        files.emplace_back(std::stoull(digits), entry.path());
    }
    if (ec) {
        log_error("cannot read directory " + in_dir + ": " + ec.message());
        return kExitIoError;
    }
    if (files.empty()) {
        log_error("no metrics_<seed>.csv files found in " + in_dir);
        return kExitValidationError;
    }
    std::sort(files.begin(), files.end());

    std::vector<SeedStats> stats;
    stats.reserve(files.size());
    for (const auto& [seed, path] : files) {
        std::ifstream in(path);
        if (!in.good()) {
            log_error("cannot read " + path.string());
            return kExitIoError;
        }
        try {
            stats.push_back(seed_stats_from_csv(in, seed));
        } catch (const ParseError& e) {
            log_error(path.string() + ": " + e.what());
            return kExitParseError;
        }
    }

    const std::string doc = summary_json(stats).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        try {
            write_text_file(out_path, doc);
        } catch (const std::exception& e) {
            log_error(e.what());
            return kExitIoError;
        }
    }
    return kExitOk;
}

}  // namespace alertswarm::cli
