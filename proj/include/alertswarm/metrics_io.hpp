#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alertswarm/sim.hpp"

namespace alertswarm::cli {

/// Fixed per-tick CSV header (documented in the README).
std::string metrics_csv_header();

void write_metrics_csv(const sim::MetricsRecord& record, std::ostream& out);

/// JSON mirror of the CSV rows, one object per tick.
nlohmann::ordered_json metrics_json(const sim::MetricsRecord& record);

/// Per-seed final statistics; the common currency of `run` summaries and
/// `report` re-aggregation. Fields that a metrics CSV cannot reconstruct
/// (modal labels, stabilization tick) stay unset when parsed back.
struct SeedStats {
    std::uint64_t seed = 0;
    std::uint64_t ticks = 0;
    bool applicable = false;
    std::uint64_t total_messages = 0;
    double mean_messages_per_tick = 0.0;
    std::array<std::optional<double>, sim::kProfileKindCount> precision;
    std::array<std::optional<double>, sim::kProfileKindCount> recall;
    std::array<std::optional<ThreatLevel>, sim::kProfileKindCount> modal;
    std::optional<Tick> ticks_to_stable;
};

SeedStats seed_stats(const sim::MetricsRecord& record);

/// Parses a metrics CSV back into SeedStats. Throws ParseError on malformed
/// content.
SeedStats seed_stats_from_csv(std::istream& in, std::uint64_t seed);

nlohmann::ordered_json seed_stats_json(const SeedStats& stats);

/// Aggregate summary document (schema_version 1): per-seed blocks plus
/// mean/stdev aggregates of precision, recall and message overhead.
nlohmann::ordered_json summary_json(const std::vector<SeedStats>& seeds);

}  // namespace alertswarm::cli
