#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace alertswarm::cli {

enum class OutputFormat { Csv, Json, Both };

/// One batch of seeded experiments sharing a config.
struct RunManifest {
    std::string config_path;
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    OutputFormat format = OutputFormat::Csv;
};

/// "--seeds 5" is a count (seeds base..base+4, base from the config);
/// "--seeds 3,17,42" is an explicit list. Throws InvalidConfig on bad specs
/// or duplicate seeds.
std::vector<std::uint64_t> resolve_seeds(const std::string& selector,
                                         std::uint64_t base_seed);

OutputFormat parse_format(const std::string& name);

/// Runs every seed (worker pool), writes metrics_<seed>.csv/.json per the
/// format plus summary.json into out_dir. Exit code 0 iff every seed
/// completed and every file was written.
int run_command(const RunManifest& manifest);

/// Parses and validates a config; prints OK or one diagnostic.
int validate_command(const std::string& config_path);

/// Re-aggregates metrics_<seed>.csv files found in a directory into a
/// summary document (stdout, or out_path when given). Statistics that the
/// CSV cannot reconstruct are reported as null.
int report_command(const std::string& in_dir, const std::string& out_path);

// Exit codes shared by the commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;
inline constexpr int kExitIoError = 4;

}  // namespace alertswarm::cli
