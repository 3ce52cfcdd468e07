#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alertswarm/types.hpp"

namespace alertswarm::gso {

/// Glowworm-swarm parameters. rho is the luciferin decay, gamma the fitness
/// gain, beta the range-update gain, n_t the target neighbor count, r_s the
/// sensor range (hard cap on the decision-domain range), s the communication
/// domain capacity, g0 the initial luciferin.
struct GsoParams {
    double rho = 0.4;
    double gamma = 0.6;
    double beta = 0.08;
    std::uint32_t n_t = 5;
    double r_s = 15.0;
    std::uint32_t s = 5;
    double g0 = 5.0;

    /// Throws InvalidConfig naming the violated field.
    void validate() const;
};

/// Per-agent GSO state: luciferin g >= 0 and decision-domain range
/// r_d in [0, r_s].
struct LuciferinState {
    double g = 0.0;
    double r_d = 0.0;
};

/// One row of a swarm snapshot. `luciferin` carries G(t), i.e. the value
/// already updated for the tick under evaluation.
struct AgentView {
    AgentId id = 0;
    Position pos;
    double luciferin = 0.0;
    double r_d = 0.0;
};

/// A neighborhood candidate: strictly brighter than self and strictly
/// inside self's decision-domain range.
struct Neighbor {
    AgentId id = 0;
    double luciferin = 0.0;
};

/// The selected communication domain. Holds at most `capacity` member ids,
/// never the owner's own id. Members are kept sorted by id.
struct CommunicationDomain {
    std::vector<AgentId> members;
    std::uint32_t capacity = 0;

    bool contains(AgentId id) const;
};

/// G(t) = (1 - rho) * G(t-1) + gamma * J(t). Fitness J is the degree of
/// truthfulness the agent has shown to its neighbors, in [0, 1].
double update_luciferin(double prev, double fitness, const GsoParams& params);

/// N_i(t) = { j : d_ij < r_d^i(t), G_i(t) < G_j(t) }, both inequalities
/// strict, self excluded. `swarm` must contain a row for `self`. Returns
/// candidates sorted by id; empty is a valid result.
std::vector<Neighbor> neighborhood(AgentId self, std::span<const AgentView> swarm);

/// P_ij = (G_j - G_i) / sum_k (G_k - G_i) over the candidate set. Throws
/// EmptyNeighborhood for an empty candidate set and std::invalid_argument
/// when j is not a candidate or any luciferin is non-finite.
double inclusion_probability(double self_luciferin, AgentId j,
                             std::span<const Neighbor> candidates);

/// All inclusion probabilities at once, aligned with `candidates`.
std::vector<double> inclusion_probabilities(double self_luciferin,
                                            std::span<const Neighbor> candidates);

/// r_d(t+1) = min(r_s, max(0, r_d(t) + beta * (n_t - neighbor_count))).
double update_domain_range(double r_d, std::size_t neighbor_count,
                           const GsoParams& params);

struct DomainSelection {
    CommunicationDomain domain;
    LuciferinState state;
};

/// Self input to select_communication_domain: previous-tick luciferin state.
struct SelfState {
    AgentId id = 0;
    Position pos;
    LuciferinState lum;
};

/// Communication-domain selection. In order: updates self's luciferin from
/// `fitness`; forms the neighborhood and its inclusion probabilities against
/// `peers` (whose luciferin must already be updated for this tick); while
/// the candidate set exceeds capacity s, discards the member with the lowest
/// inclusion probability (ties broken by lowest id); updates the
/// decision-domain range from the pre-trim neighborhood size.
DomainSelection select_communication_domain(const SelfState& self, double fitness,
                                            std::span<const AgentView> peers,
                                            const GsoParams& params);

}  // namespace alertswarm::gso
