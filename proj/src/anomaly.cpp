#include "alertswarm/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alertswarm/errors.hpp"

namespace alertswarm::anomaly {

std::map<AgentId, MergedBehavior> merge_behavior_data(
    std::span<const BehaviorReport> reports,
    const std::map<AgentId, awareness::Reputation>& reputations,
    const std::map<AgentId, awareness::BehaviorRecord>& own_records) {
    struct Accum {
        double responsiveness = 0.0;
        double truthfulness = 0.0;
        double weight = 0.0;
    };
    std::map<AgentId, Accum> acc;

    for (const auto& r : reports) {
        if (r.reporter == r.subject) {
            throw std::invalid_argument("behavior report: reporter == subject");
        }
        const auto rep = reputations.find(r.reporter);
        if (rep == reputations.end()) {
            throw UnknownReporter(r.reporter);
        }
        const double w = rep->second.value;
        auto& a = acc[r.subject];
        a.responsiveness += w * r.responsiveness;
        a.truthfulness += w * r.truthfulness;
        a.weight += w;
    }

    // Own perceptions enter with fixed weight 1.0.
    for (const auto& [subject, record] : own_records) {
        auto& a = acc[subject];
        a.responsiveness += record.responsiveness;
        a.truthfulness += record.truthfulness;
        a.weight += 1.0;
    }

    std::map<AgentId, MergedBehavior> out;
    for (const auto& [subject, a] : acc) {
        if (!(a.weight > 0.0)) continue;
        out.emplace(subject, MergedBehavior{
                                 .subject = subject,
                                 .responsiveness = std::clamp(a.responsiveness / a.weight, 0.0, 1.0),
                                 .truthfulness = std::clamp(a.truthfulness / a.weight, 0.0, 1.0),
                                 .total_weight = a.weight,
                             });
    }
    return out;
}

ThreatLevel classify_threat(const MergedBehavior& merged, const Thresholds& th) {
    if (merged.responsiveness > th.respond_threshold) {
        if (merged.truthfulness > th.truth_threshold) {
            return ThreatLevel::Cooperative;
        }
        return ThreatLevel::Noxious;
    }
    if (merged.truthfulness < th.truth_threshold) {
        return ThreatLevel::Malicious;
    }
    return ThreatLevel::Suspicious;
}

namespace {

double label_weight(ThreatLevel label, const RiskWeights& w) {
    switch (label) {
        case ThreatLevel::Cooperative: return 0.0;
        case ThreatLevel::Suspicious: return w.suspicious;
        case ThreatLevel::Malicious: return w.malicious;
        case ThreatLevel::Noxious: return w.noxious;
    }
    return 0.0;
}

}  // namespace

double assess_risk(std::span<const PeerThreat> peers, const Position& self,
                   double sensor_range, const RiskWeights& weights) {
    if (!(sensor_range > 0.0)) {
        throw std::invalid_argument("assess_risk: sensor_range must be > 0");
    }
    double numer = 0.0;
    double denom = 0.0;
    for (const auto& p : peers) {
        const double prox = std::max(0.0, 1.0 - distance(self, p.pos) / sensor_range);
        numer += label_weight(p.label, weights) * prox;
        denom += prox;
    }
    if (!(denom > 0.0)) return 0.0;
    return std::clamp(numer / denom, 0.0, 1.0);
}

AlertnessLevel update_alertness(double risk, const AlertnessBands& bands) {
    if (!(bands.low_cut >= 0.0 && bands.low_cut < bands.high_cut && bands.high_cut <= 1.0)) {
        throw std::invalid_argument("alertness bands must satisfy 0 <= low < high <= 1");
    }
    if (risk < bands.low_cut) return AlertnessLevel::Low;
    if (risk < bands.high_cut) return AlertnessLevel::Elevated;
    return AlertnessLevel::High;
}

}  // namespace alertswarm::anomaly
