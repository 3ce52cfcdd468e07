#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alertswarm/anomaly.hpp"
#include "alertswarm/awareness.hpp"
#include "alertswarm/gso.hpp"
#include "alertswarm/types.hpp"

namespace alertswarm::sim {

enum class ProfileKind : std::uint8_t {
    Honest = 0,
    SilentTruthful = 1,
    SilentLiar = 2,
    ResponsiveLiar = 3,
};

inline constexpr std::size_t kProfileKindCount = 4;

extern const std::array<const char*, kProfileKindCount> kProfileKindNames;

/// The threat label an archetype is expected to earn.
ThreatLevel expected_label(ProfileKind kind);

/// Behavioral archetype: how (often) an agent answers, and whether it lies.
struct AdversaryProfile {
    ProfileKind kind = ProfileKind::Honest;
    double respond_prob = 0.95;
    double lie_prob = 0.0;
};

std::array<AdversaryProfile, kProfileKindCount> default_profiles();

struct AwarenessKnobs {
    double truth_alpha = 0.3;
    std::uint64_t respond_window = 20;
    std::uint64_t staleness = 30;
    std::uint32_t cells_per_query = 3;
};

struct RiskKnobs {
    anomaly::RiskWeights weights;
    anomaly::AlertnessBands bands;
    std::uint64_t merge_period = 1;
};

/// Background probing: each query round also targets a random sample of
/// sensor-range peers outside the communication domain. Keeps behavioral
/// evidence flowing about agents too dim to enter anyone's domain, and
/// bootstraps the swarm out of the all-equal initial luciferin state (where
/// every neighborhood is empty). Merged reports still come from domain
/// members only.
struct ExplorationKnobs {
    bool enabled = true;
    std::uint32_t sample = 2;
};

struct WorldConfig {
    std::uint32_t n_agents = 50;
    double world_size = 50.0;
    std::uint32_t grid_cells = 10;
    std::uint32_t alphabet = 4;
    std::uint64_t ticks = 300;
    std::uint64_t seed = 42;
    std::array<double, kProfileKindCount> profile_mix = {1.0, 0.0, 0.0, 0.0};
    std::array<AdversaryProfile, kProfileKindCount> profiles = default_profiles();
    gso::GsoParams gso;
    anomaly::Thresholds thresholds;
    AwarenessKnobs awareness;
    RiskKnobs risk;
    ExplorationKnobs exploration;

    /// Throws InvalidConfig naming the violated field.
    void validate() const;
};

/// Number of agents of each kind under largest-remainder rounding of the mix.
std::array<std::uint32_t, kProfileKindCount> profile_counts(
    const std::array<double, kProfileKindCount>& mix, std::uint32_t n_agents);

struct Agent {
    AgentId id = 0;
    Position pos;
    ProfileKind profile = ProfileKind::Honest;
    gso::LuciferinState lum;
    gso::CommunicationDomain domain;
    Tick last_perceived = 0;
    std::vector<CellId> visible_cells;  // sorted
    std::map<AgentId, awareness::InteractionLog> logs;
    std::map<AgentId, awareness::BehaviorRecord> records;
    std::map<std::pair<AgentId, AgentId>, anomaly::BehaviorReport> inbox;
    anomaly::RiskAssessment assessment;
    std::uint64_t queries_sent = 0;
    std::uint64_t responses_received = 0;
    std::optional<double> last_kappa;
};

/// Per-tick metrics row. The confusion matrix counts (observer, subject)
/// label events over honest observers only: confusion[true kind][label].
struct TickMetrics {
    Tick tick = 0;
    std::array<double, kProfileKindCount> mean_risk{};
    std::uint64_t messages = 0;
    std::uint64_t responses = 0;
    double mean_domain_size = 0.0;
    double mean_range = 0.0;
    std::array<std::array<std::uint64_t, 4>, kProfileKindCount> confusion{};
};

/// tp/fp/fn/tn of one adversarial kind against its expected label.
struct KindTally {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

KindTally kind_tally(const TickMetrics& m, ProfileKind kind);

/// Modal assigned label for one kind's row; nullopt when the row is empty.
/// Ties break toward the lower severity.
std::optional<ThreatLevel> modal_label(const TickMetrics& m, ProfileKind kind);

struct KindSummary {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<ThreatLevel> modal;
};

struct RunSummary {
    bool applicable = false;  // false for zero-tick runs
    std::array<KindSummary, kProfileKindCount> kinds;  // adversarial kinds 1..3
    std::optional<Tick> ticks_to_stable;
    std::uint64_t total_messages = 0;
    double mean_messages_per_tick = 0.0;
};

struct MetricsRecord {
    std::uint64_t seed = 0;
    std::array<std::uint32_t, kProfileKindCount> kind_counts{};
    std::vector<TickMetrics> per_tick;
    RunSummary summary;
};

/// Testing hook: run the per-agent phase loops in a custom order. Results
/// must not depend on it (snapshot semantics).
struct StepOptions {
    std::vector<AgentId> agent_order;
};

class World {
public:
    /// spawnSwarm: seeded placement, grid assignment, and profile mix via
    /// largest-remainder rounding. Throws InvalidConfig on a bad config.
    static World spawn(const WorldConfig& config);

    /// One tick of the pipeline: perceive, answer queries, score responses,
    /// update communication domains, issue queries, merge/classify/assess.
    TickMetrics step(const StepOptions& options = {});

    Tick tick() const { return tick_; }
    const WorldConfig& config() const { return config_; }
    const std::vector<Agent>& agents() const { return agents_; }
    const std::vector<Category>& grid() const { return grid_; }
    const std::array<std::uint32_t, kProfileKindCount>& kind_counts() const {
        return kind_counts_;
    }

    Position cell_center(CellId cell) const;
    bool agent_sees(const Agent& a, CellId cell) const;

    /// Mean fitness input J (peer-estimated truthfulness) for diagnostics.
    std::vector<double> current_fitness() const;

private:
    World() = default;

    struct QueryMsg {
        AgentId from = 0;
        std::vector<CellId> cells;
    };
    struct ResponseMsg {
        AgentId responder = 0;
        std::vector<Belief> answers;
        std::vector<anomaly::BehaviorReport> reports;
    };
    struct OutstandingRound {
        std::vector<std::pair<AgentId, std::vector<CellId>>> targets;  // sorted by target
    };

    std::vector<AgentId> iteration_order(const StepOptions& options) const;

    void phase_perceive(Tick t, const std::vector<AgentId>& order);
    std::uint64_t phase_answer(Tick t, const std::vector<AgentId>& order,
                               std::map<AgentId, std::vector<ResponseMsg>>& deliveries);
    void phase_score(Tick t, const std::vector<AgentId>& order,
                     std::map<AgentId, std::vector<ResponseMsg>>& deliveries);
    void phase_domains(Tick t, const std::vector<AgentId>& order);
    std::uint64_t phase_queries(Tick t, const std::vector<AgentId>& order);
    void phase_assess(Tick t, const std::vector<AgentId>& order);
    TickMetrics collect_metrics(Tick t, std::uint64_t messages,
                                std::uint64_t responses) const;

    WorldConfig config_;
    Tick tick_ = 0;
    std::vector<Agent> agents_;
    std::vector<Category> grid_;
    std::array<std::uint32_t, kProfileKindCount> kind_counts_{};
    // Queries issued at tick t, answered at t+1.
    std::map<AgentId, std::vector<QueryMsg>> pending_;
    std::map<AgentId, OutstandingRound> outstanding_;
};

/// spawn + step config.ticks times + summarize.
MetricsRecord run_experiment(const WorldConfig& config);

RunSummary summarize(const std::vector<TickMetrics>& per_tick,
                     const std::array<std::uint32_t, kProfileKindCount>& kind_counts);

}  // namespace alertswarm::sim
