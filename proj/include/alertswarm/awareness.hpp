#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "alertswarm/types.hpp"

namespace alertswarm::awareness {

/// One interaction outcome with a peer, recorded at the tick the outcome
/// became known. `agreement` is the [-1, 1] validation score of the
/// response and may only be present when `responded` is true.
struct InteractionEntry {
    Tick tick = 0;
    bool queried = false;
    bool responded = false;
    std::optional<double> agreement;
};

/// Append-only, tick-ordered interaction history for one peer.
class InteractionLog {
public:
    /// Throws std::invalid_argument when the entry would break tick ordering
    /// or carries an agreement without a response.
    void append(const InteractionEntry& entry);

    const std::vector<InteractionEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<InteractionEntry> entries_;
};

/// Responsiveness and truthfulness scores distilled from an interaction log.
struct BehaviorRecord {
    double responsiveness = 1.0;
    double truthfulness = 0.5;
    std::uint64_t sample_count = 0;
};

struct Reputation {
    double value = 0.5;
};

/// Fleiss' kappa over an N-subjects x k-categories count matrix. Every row
/// must sum to the same rater count n >= 2 and k must be >= 2, otherwise
/// std::invalid_argument. Throws DegenerateAgreement when expected chance
/// agreement equals 1; callers resolve that to kappa = 1 when observed
/// agreement is also 1.
double fleiss_kappa(const std::vector<std::vector<int>>& counts);

/// Fraction of queries inside the trailing window (now - window, now] that
/// received a response. Returns 1.0 when the window holds no queries:
/// absence of evidence is not unresponsiveness.
double responsiveness_in_window(const InteractionLog& log, Tick now,
                                std::uint64_t window);

/// Exponentially weighted moving average of response agreements, mapped
/// from [-1, 1] to [0, 1] via (a + 1) / 2. Starts from the uninformed prior
/// 0.5 and gives the newest response weight alpha. Returns 0.5 when the log
/// holds no scored responses.
double truthfulness_ewma(const InteractionLog& log, double alpha);

/// Distills a log into a BehaviorRecord as of `now`.
BehaviorRecord make_behavior_record(const InteractionLog& log, Tick now,
                                    std::uint64_t window, double alpha);

/// Reputation = truthfulness * responsiveness, clamped to [0, 1].
/// A never-observed peer (sample_count == 0) gets the 0.5 prior.
Reputation update_reputation(const BehaviorRecord& record);

/// +1 when the peer's response matches the own observation, -1 otherwise.
/// Throws SubjectMismatch when the beliefs refer to different subjects.
double score_response(const Belief& own_observation, const Belief& peer_response);

}  // namespace alertswarm::awareness
