#include "alertswarm/awareness.hpp"

#include <algorithm>
#include <stdexcept>

#include "alertswarm/errors.hpp"

namespace alertswarm::awareness {

void InteractionLog::append(const InteractionEntry& entry) {
    if (!entries_.empty() && entry.tick < entries_.back().tick) {
        throw std::invalid_argument("interaction log entries must be tick-ordered");
    }
    if (entry.agreement && !entry.responded) {
        throw std::invalid_argument("agreement requires a response");
    }
    if (entry.agreement && (*entry.agreement < -1.0 || *entry.agreement > 1.0)) {
        throw std::invalid_argument("agreement must be in [-1, 1]");
    }
    entries_.push_back(entry);
}

double fleiss_kappa(const std::vector<std::vector<int>>& counts) {
    const std::size_t subjects = counts.size();
    if (subjects == 0) {
        throw std::invalid_argument("fleiss_kappa: no subjects");
    }
    const std::size_t categories = counts.front().size();
    if (categories < 2) {
        throw std::invalid_argument("fleiss_kappa: need at least 2 categories");
    }

    long long raters = 0;
    for (const auto& row : counts) {
        if (row.size() != categories) {
            throw std::invalid_argument("fleiss_kappa: ragged count matrix");
        }
        long long row_sum = 0;
        for (int c : row) {
            if (c < 0) throw std::invalid_argument("fleiss_kappa: negative count");
            row_sum += c;
        }
        if (raters == 0) {
            raters = row_sum;
        } else if (row_sum != raters) {
            throw std::invalid_argument("fleiss_kappa: subject rows must all sum to n");
        }
    }
    if (raters < 2) {
        throw std::invalid_argument("fleiss_kappa: need at least 2 raters");
    }

    const double n = static_cast<double>(raters);
    const double n_subjects = static_cast<double>(subjects);

    // P_i: agreement within subject i; p_j: marginal category proportions.
    double p_bar = 0.0;
    std::vector<double> p_cat(categories, 0.0);
    for (const auto& row : counts) {
        double sum_sq = 0.0;
        for (std::size_t j = 0; j < categories; ++j) {
            const double c = static_cast<double>(row[j]);
            sum_sq += c * c;
            p_cat[j] += c;
        }
        p_bar += (sum_sq - n) / (n * (n - 1.0));
    }
    p_bar /= n_subjects;

    double p_e = 0.0;
    for (double& p : p_cat) {
        p /= n_subjects * n;
        p_e += p * p;
    }

    if (p_e >= 1.0) {
        throw DegenerateAgreement(p_bar);
    }
    return (p_bar - p_e) / (1.0 - p_e);
}

double responsiveness_in_window(const InteractionLog& log, Tick now,
                                std::uint64_t window) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    const bool unbounded = now < window;  // window reaches below tick 0
    const Tick cutoff = unbounded ? 0 : now - window;  // window is (cutoff, now]
    std::uint64_t queries = 0;
    std::uint64_t responses = 0;
    for (const auto& e : log.entries()) {
        if ((!unbounded && e.tick <= cutoff) || e.tick > now || !e.queried) continue;
        ++queries;
        if (e.responded) ++responses;
    }
    if (queries == 0) return 1.0;
    return static_cast<double>(responses) / static_cast<double>(queries);
}

double truthfulness_ewma(const InteractionLog& log, double alpha) {
    if (alpha <= 0.0 || alpha > 1.0) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    double value = 0.5;
    for (const auto& e : log.entries()) {
        if (!e.agreement) continue;
        const double mapped = (*e.agreement + 1.0) / 2.0;
        value = (1.0 - alpha) * value + alpha * mapped;
    }
    return std::clamp(value, 0.0, 1.0);
}

BehaviorRecord make_behavior_record(const InteractionLog& log, Tick now,
                                    std::uint64_t window, double alpha) {
    return BehaviorRecord{
        .responsiveness = responsiveness_in_window(log, now, window),
        .truthfulness = truthfulness_ewma(log, alpha),
        .sample_count = log.size(),
    };
}

Reputation update_reputation(const BehaviorRecord& record) {
    if (record.sample_count == 0) return Reputation{0.5};
    const double v = record.truthfulness * record.responsiveness;
    return Reputation{std::clamp(v, 0.0, 1.0)};
}

double score_response(const Belief& own_observation, const Belief& peer_response) {
    if (own_observation.subject != peer_response.subject) {
        throw SubjectMismatch(own_observation.subject, peer_response.subject);
    }
    return own_observation.value == peer_response.value ? 1.0 : -1.0;
}

}  // namespace alertswarm::awareness
