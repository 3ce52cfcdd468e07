#pragma once

#include <map>
#include <span>

#include "alertswarm/awareness.hpp"
#include "alertswarm/types.hpp"

namespace alertswarm::anomaly {

/// One reporter's behavioral data about one subject. reporter != subject.
struct BehaviorReport {
    AgentId reporter = 0;
    AgentId subject = 0;
    double responsiveness = 0.0;
    double truthfulness = 0.0;
    Tick reported_at = 0;
};

/// Reputation-weighted merge result for one subject. total_weight is the
/// sum of contributing reporter reputations plus the own-observation weight.
struct MergedBehavior {
    AgentId subject = 0;
    double responsiveness = 0.0;
    double truthfulness = 0.0;
    double total_weight = 0.0;
};

/// Classification cut points, both strictly inside (0, 1).
struct Thresholds {
    double respond_threshold = 0.5;
    double truth_threshold = 0.5;
};

/// Risk contribution weights per threat label (Cooperative is 0).
struct RiskWeights {
    double suspicious = 0.3;
    double malicious = 0.7;
    double noxious = 1.0;
};

/// Alertness cut points: Low below low_cut, High at high_cut and above.
struct AlertnessBands {
    double low_cut = 0.25;
    double high_cut = 0.6;
};

/// A labeled peer with its position, as seen from one agent's viewpoint.
struct PeerThreat {
    AgentId id = 0;
    ThreatLevel label = ThreatLevel::Cooperative;
    Position pos;
};

/// One agent's current risk picture.
struct RiskAssessment {
    AgentId viewpoint = 0;
    double risk = 0.0;
    AlertnessLevel alertness = AlertnessLevel::Low;
    std::map<AgentId, ThreatLevel> labels;
};

/// Model Generator: per subject, responsiveness and truthfulness are the
/// reputation-weighted means over the reports (plus the own record with
/// fixed weight 1.0 when present), normalized by total weight. Subjects with
/// zero total weight are omitted. Throws UnknownReporter when a report's
/// reporter has no reputation entry.
std::map<AgentId, MergedBehavior> merge_behavior_data(
    std::span<const BehaviorReport> reports,
    const std::map<AgentId, awareness::Reputation>& reputations,
    const std::map<AgentId, awareness::BehaviorRecord>& own_records);

/// The four-branch threat table, with its literal strict comparisons:
///   responsive and truthful      -> Cooperative
///   responsive, not truthful     -> Noxious
///   unresponsive, truth < cut    -> Malicious
///   unresponsive, truth >= cut   -> Suspicious
ThreatLevel classify_threat(const MergedBehavior& merged, const Thresholds& th);

/// Proximity-weighted mean of per-label severity weights:
///   risk = sum_j w(label_j) * prox_j / sum_j prox_j,
/// prox_j = max(0, 1 - d_j / sensor_range). Returns 0 when no labeled peer
/// has positive proximity.
double assess_risk(std::span<const PeerThreat> peers, const Position& self,
                   double sensor_range, const RiskWeights& weights = {});

/// Low below low_cut, Elevated in [low_cut, high_cut), High at and above
/// high_cut. Monotone in risk.
AlertnessLevel update_alertness(double risk, const AlertnessBands& bands = {});

}  // namespace alertswarm::anomaly
