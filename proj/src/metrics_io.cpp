#include "alertswarm/metrics_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "alertswarm/errors.hpp"
#include "alertswarm/format.hpp"

namespace alertswarm::cli {

namespace {

constexpr std::array<std::size_t, 3> kAdversarialKinds = {1, 2, 3};

double sample_stdev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

nlohmann::ordered_json stat_block(const std::vector<double>& xs) {
    if (xs.empty()) return nullptr;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    return nlohmann::ordered_json{
        {"mean", mean}, {"stdev", sample_stdev(xs, mean)}, {"count", xs.size()}};
}

}  // namespace

std::string metrics_csv_header() {
    std::string h = "tick,mean_risk_honest,mean_risk_noxious,messages,mean_domain_size,mean_range";
    for (std::size_t k : kAdversarialKinds) {
        const std::string name = sim::kProfileKindNames[k];
        for (const char* stat : {"tp", "fp", "fn", "tn"}) {
            h += ",";
            h += stat;
            h += "_";
            h += name;
        }
    }
    return h;
}

void write_metrics_csv(const sim::MetricsRecord& record, std::ostream& out) {
    out << metrics_csv_header() << "\n";
    for (const auto& row : record.per_tick) {
        out << row.tick << ',' << format_double(row.mean_risk[0]) << ','
            << format_double(row.mean_risk[3]) << ',' << row.messages << ','
            << format_double(row.mean_domain_size) << ','
            << format_double(row.mean_range);
        for (std::size_t k : kAdversarialKinds) {
            const auto tally = sim::kind_tally(row, static_cast<sim::ProfileKind>(k));
            out << ',' << tally.tp << ',' << tally.fp << ',' << tally.fn << ','
                << tally.tn;
        }
        out << '\n';
    }
}

nlohmann::ordered_json metrics_json(const sim::MetricsRecord& record) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : record.per_tick) {
        nlohmann::ordered_json r;
        r["tick"] = row.tick;
        r["mean_risk_honest"] = row.mean_risk[0];
        r["mean_risk_noxious"] = row.mean_risk[3];
        r["messages"] = row.messages;
        r["mean_domain_size"] = row.mean_domain_size;
        r["mean_range"] = row.mean_range;
        for (std::size_t k : kAdversarialKinds) {
            const std::string name = sim::kProfileKindNames[k];
            const auto tally = sim::kind_tally(row, static_cast<sim::ProfileKind>(k));
            r["tp_" + name] = tally.tp;
            r["fp_" + name] = tally.fp;
            r["fn_" + name] = tally.fn;
            r["tn_" + name] = tally.tn;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

SeedStats seed_stats(const sim::MetricsRecord& record) {
    SeedStats s;
    s.seed = record.seed;
    s.ticks = record.per_tick.size();
    s.applicable = record.summary.applicable;
    s.total_messages = record.summary.total_messages;
    s.mean_messages_per_tick = record.summary.mean_messages_per_tick;
    for (std::size_t k : kAdversarialKinds) {
        s.precision[k] = record.summary.kinds[k].precision;
        s.recall[k] = record.summary.kinds[k].recall;
        s.modal[k] = record.summary.kinds[k].modal;
    }
    s.ticks_to_stable = record.summary.ticks_to_stable;
    return s;
}

SeedStats seed_stats_from_csv(std::istream& in, std::uint64_t seed) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("metrics csv: empty file");
    if (line == metrics_csv_header() + "\r") line.pop_back();
    if (line != metrics_csv_header()) {
        throw ParseError("metrics csv: unexpected header: " + line);
    }

    SeedStats s;
    s.seed = seed;
    std::array<std::array<std::uint64_t, 4>, 3> last_tallies{};
    std::uint64_t rows = 0;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 18) {
            throw ParseError("metrics csv: expected 18 fields, got " +
                             std::to_string(fields.size()));
        }
        try {
            s.total_messages += std::stoull(fields[3]);
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    last_tallies[i][j] = std::stoull(fields[6 + i * 4 + j]);
                }
            }
        } catch (const std::exception&) {
            throw ParseError("metrics csv: malformed row: " + line);
        }
        ++rows;
    }

    s.ticks = rows;
    s.applicable = rows > 0;
    if (rows > 0) {
        s.mean_messages_per_tick =
            static_cast<double>(s.total_messages) / static_cast<double>(rows);
        for (std::size_t i = 0; i < 3; ++i) {
            const std::size_t k = kAdversarialKinds[i];
            const auto [tp, fp, fn, tn] = std::tuple{last_tallies[i][0], last_tallies[i][1],
                                                     last_tallies[i][2], last_tallies[i][3]};
            if (tp + fn > 0) {
                s.recall[k] = static_cast<double>(tp) / static_cast<double>(tp + fn);
            }
            if (tp + fp > 0) {
                s.precision[k] = static_cast<double>(tp) / static_cast<double>(tp + fp);
            }
        }
    }
    return s;
}

nlohmann::ordered_json seed_stats_json(const SeedStats& stats) {
    nlohmann::ordered_json j;
    j["seed"] = stats.seed;
    j["ticks"] = stats.ticks;
    j["applicable"] = stats.applicable;
    j["total_messages"] = stats.total_messages;
    if (stats.applicable) {
        j["mean_messages_per_tick"] = stats.mean_messages_per_tick;
    } else {
        j["mean_messages_per_tick"] = nullptr;
    }
    if (stats.ticks_to_stable) {
        j["ticks_to_stable_classification"] = *stats.ticks_to_stable;
    } else {
        j["ticks_to_stable_classification"] = nullptr;
    }
    nlohmann::ordered_json kinds;
    for (std::size_t k : kAdversarialKinds) {
        nlohmann::ordered_json kj;
        kj["expected_label"] =
            to_string(sim::expected_label(static_cast<sim::ProfileKind>(k)));
        kj["precision"] = stats.precision[k] ? nlohmann::ordered_json(*stats.precision[k])
                                             : nlohmann::ordered_json(nullptr);
        kj["recall"] = stats.recall[k] ? nlohmann::ordered_json(*stats.recall[k])
                                       : nlohmann::ordered_json(nullptr);
        kj["modal_label"] = stats.modal[k] ? nlohmann::ordered_json(to_string(*stats.modal[k]))
                                           : nlohmann::ordered_json(nullptr);
        kinds[sim::kProfileKindNames[k]] = std::move(kj);
    }
    j["kinds"] = std::move(kinds);
    return j;
}

nlohmann::ordered_json summary_json(const std::vector<SeedStats>& seeds) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;

    nlohmann::ordered_json seed_blocks = nlohmann::ordered_json::array();
    for (const auto& s : seeds) seed_blocks.push_back(seed_stats_json(s));
    j["seeds"] = std::move(seed_blocks);

    nlohmann::ordered_json agg;
    agg["seeds"] = seeds.size();
    std::vector<double> messages;
    for (const auto& s : seeds) {
        if (s.applicable) messages.push_back(s.mean_messages_per_tick);
    }
    agg["mean_messages_per_tick"] = stat_block(messages);
    nlohmann::ordered_json kinds;
    for (std::size_t k : kAdversarialKinds) {
        std::vector<double> precision;
        std::vector<double> recall;
        for (const auto& s : seeds) {
            if (s.precision[k]) precision.push_back(*s.precision[k]);
            if (s.recall[k]) recall.push_back(*s.recall[k]);
        }
        kinds[sim::kProfileKindNames[k]] = nlohmann::ordered_json{
            {"precision", stat_block(precision)}, {"recall", stat_block(recall)}};
    }
    agg["kinds"] = std::move(kinds);
    j["aggregate"] = std::move(agg);
    return j;
}

}  // namespace alertswarm::cli
