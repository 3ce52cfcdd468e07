#include "alertswarm/gso.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "alertswarm/errors.hpp"
#include "alertswarm/format.hpp"

namespace alertswarm::gso {

void GsoParams::validate() const {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw InvalidConfig("gso.rho",
                            "rho must be in (0,1) (got " + format_double(rho) + ")");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidConfig("gso.gamma",
                            "gamma must be > 0 (got " + format_double(gamma) + ")");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidConfig("gso.beta",
                            "beta must be > 0 (got " + format_double(beta) + ")");
    }
    if (n_t < 1) throw InvalidConfig("gso.n_t", "n_t must be >= 1 (got 0)");
    if (!(r_s > 0.0) || !std::isfinite(r_s)) {
        throw InvalidConfig("gso.r_s",
                            "r_s must be > 0 (got " + format_double(r_s) + ")");
    }
    if (s < 1) throw InvalidConfig("gso.max_domain", "s must be >= 1 (got 0)");
    if (!(g0 >= 0.0) || !std::isfinite(g0)) {
        throw InvalidConfig("gso.initial_luciferin",
                            "g0 must be >= 0 (got " + format_double(g0) + ")");
    }
}

bool CommunicationDomain::contains(AgentId id) const {
    return std::binary_search(members.begin(), members.end(), id);
}

double update_luciferin(double prev, double fitness, const GsoParams& params) {
    assert(prev >= 0.0);
    assert(fitness >= 0.0 && fitness <= 1.0);
    return (1.0 - params.rho) * prev + params.gamma * fitness;
}

std::vector<Neighbor> neighborhood(AgentId self, std::span<const AgentView> swarm) {
    const AgentView* me = nullptr;
    for (const auto& v : swarm) {
        if (v.id == self) {
            me = &v;
            break;
        }
    }
    if (me == nullptr) {
        throw std::invalid_argument("neighborhood: swarm does not contain self");
    }

    std::vector<Neighbor> out;
    for (const auto& v : swarm) {
        if (v.id == self) continue;
        if (distance(me->pos, v.pos) < me->r_d && me->luciferin < v.luciferin) {
            out.push_back(Neighbor{v.id, v.luciferin});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    return out;
}

std::vector<double> inclusion_probabilities(double self_luciferin,
                                            std::span<const Neighbor> candidates) {
    if (candidates.empty()) throw EmptyNeighborhood();
    if (!std::isfinite(self_luciferin)) {
        throw std::invalid_argument("inclusion probability: non-finite luciferin");
    }
    double denom = 0.0;
    for (const auto& c : candidates) {
        if (!std::isfinite(c.luciferin)) {
            throw std::invalid_argument("inclusion probability: non-finite luciferin");
        }
        denom += c.luciferin - self_luciferin;
    }
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw std::invalid_argument("inclusion probability: non-positive denominator");
    }
    std::vector<double> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        out.push_back((c.luciferin - self_luciferin) / denom);
    }
    return out;
}

double inclusion_probability(double self_luciferin, AgentId j,
                             std::span<const Neighbor> candidates) {
    const auto probs = inclusion_probabilities(self_luciferin, candidates);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].id == j) return probs[i];
    }
    throw std::invalid_argument("inclusion probability: agent " + std::to_string(j) +
                                " is not a candidate");
}

double update_domain_range(double r_d, std::size_t neighbor_count,
                           const GsoParams& params) {
    const double delta =
        params.beta * (static_cast<double>(params.n_t) - static_cast<double>(neighbor_count));
    return std::min(params.r_s, std::max(0.0, r_d + delta));
}

DomainSelection select_communication_domain(const SelfState& self, double fitness,
                                            std::span<const AgentView> peers,
                                            const GsoParams& params) {
    // Luciferin updating phase.
    const double g_new = update_luciferin(self.lum.g, fitness, params);

    // Communication domain updating phase, against peers' current luciferin.
    std::vector<AgentView> swarm(peers.begin(), peers.end());
    swarm.push_back(AgentView{self.id, self.pos, g_new, self.lum.r_d});
    std::vector<Neighbor> candidates = neighborhood(self.id, swarm);
    const std::size_t pre_trim_count = candidates.size();

    if (!candidates.empty()) {
        std::vector<double> probs = inclusion_probabilities(g_new, candidates);
        while (candidates.size() > params.s) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < candidates.size(); ++i) {
                if (probs[i] < probs[worst] ||
                    (probs[i] == probs[worst] && candidates[i].id < candidates[worst].id)) {
                    worst = i;
                }
            }
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(worst));
            probs.erase(probs.begin() + static_cast<std::ptrdiff_t>(worst));
        }
    }

    CommunicationDomain domain;
    domain.capacity = params.s;
    domain.members.reserve(candidates.size());
    for (const auto& c : candidates) domain.members.push_back(c.id);

    // Range updating phase, on the pre-trim neighborhood size.
    const double r_next = update_domain_range(self.lum.r_d, pre_trim_count, params);
    return DomainSelection{std::move(domain), LuciferinState{g_new, r_next}};
}

}  // namespace alertswarm::gso
