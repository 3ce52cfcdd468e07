#include "alertswarm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "alertswarm/errors.hpp"
#include "alertswarm/format.hpp"
#include "alertswarm/log.hpp"
#include "alertswarm/rng.hpp"

namespace alertswarm::sim {

const std::array<const char*, kProfileKindCount> kProfileKindNames = {
    "honest", "silent_truthful", "silent_liar", "responsive_liar"};

namespace {

// Stream ids for derive_seed; every random draw in the simulator is keyed by
// (phase, tick, actor) so that results never depend on iteration order.
enum StreamPhase : std::uint64_t {
    kStreamPlacement = 1,
    kStreamGrid = 2,
    kStreamProfiles = 3,
    kStreamRespond = 4,
    kStreamCells = 5,
    kStreamExplore = 6,
};

std::uint64_t pair_key(AgentId a, AgentId b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::size_t kind_index(ProfileKind k) { return static_cast<std::size_t>(k); }

// Deterministic k-out-of-pool sample (partial Fisher-Yates), returned sorted.
template <typename T>
std::vector<T> sample_k(std::vector<T> pool, std::size_t k, RngStream& rng) {
    k = std::min(k, pool.size());
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j =
            i + rng.next_below(static_cast<std::uint32_t>(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::uint64_t query_interval(AlertnessLevel a) {
    switch (a) {
        case AlertnessLevel::Low: return 4;
        case AlertnessLevel::Elevated: return 2;
        case AlertnessLevel::High: return 1;
    }
    return 4;
}

}  // namespace

ThreatLevel expected_label(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::Honest: return ThreatLevel::Cooperative;
        case ProfileKind::SilentTruthful: return ThreatLevel::Suspicious;
        case ProfileKind::SilentLiar: return ThreatLevel::Malicious;
        case ProfileKind::ResponsiveLiar: return ThreatLevel::Noxious;
    }
    return ThreatLevel::Cooperative;
}

std::array<AdversaryProfile, kProfileKindCount> default_profiles() {
    return {{
        {ProfileKind::Honest, 0.95, 0.0},
        {ProfileKind::SilentTruthful, 0.10, 0.0},
        {ProfileKind::SilentLiar, 0.10, 0.9},
        {ProfileKind::ResponsiveLiar, 0.95, 0.9},
    }};
}

void WorldConfig::validate() const {
    if (n_agents < 1) throw InvalidConfig("world.agents", "n_agents must be >= 1");
    if (!(world_size > 0.0) || !std::isfinite(world_size)) {
        throw InvalidConfig("world.size", "world_size must be > 0 and finite");
    }
    if (grid_cells < 1) throw InvalidConfig("world.grid_cells", "grid_cells must be >= 1");
    if (alphabet < 2) throw InvalidConfig("world.alphabet", "alphabet must have >= 2 categories");

    double sum = 0.0;
    for (std::size_t k = 0; k < kProfileKindCount; ++k) {
        const double f = profile_mix[k];
        if (!(f >= 0.0) || !std::isfinite(f)) {
            throw InvalidConfig(std::string("profiles.mix.") + kProfileKindNames[k],
                                "fraction must be in [0, 1] (got " + format_double(f) + ")");
        }
        sum += f;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw InvalidConfig("profiles.mix", "profile_mix must sum to 1 (got " +
                                                format_double(sum) + ")");
    }
    for (std::size_t k = 0; k < kProfileKindCount; ++k) {
        const auto& p = profiles[k];
        const std::string base = std::string("profiles.") + kProfileKindNames[k];
        if (!(p.respond_prob >= 0.0 && p.respond_prob <= 1.0)) {
            throw InvalidConfig(base + ".respond_prob", "must be in [0, 1]");
        }
        if (!(p.lie_prob >= 0.0 && p.lie_prob <= 1.0)) {
            throw InvalidConfig(base + ".lie_prob", "must be in [0, 1]");
        }
    }
    if (profiles[kind_index(ProfileKind::Honest)].lie_prob != 0.0) {
        throw InvalidConfig("profiles.honest.lie_prob", "honest agents never lie");
    }
    if (profiles[kind_index(ProfileKind::SilentTruthful)].lie_prob != 0.0) {
        throw InvalidConfig("profiles.silent_truthful.lie_prob",
                            "silent-truthful agents never lie");
    }

    gso.validate();

    if (!(thresholds.respond_threshold > 0.0 && thresholds.respond_threshold < 1.0)) {
        throw InvalidConfig("thresholds.respond",
                            "must be strictly inside (0,1) (got " +
                                format_double(thresholds.respond_threshold) + ")");
    }
    if (!(thresholds.truth_threshold > 0.0 && thresholds.truth_threshold < 1.0)) {
        throw InvalidConfig("thresholds.truth",
                            "must be strictly inside (0,1) (got " +
                                format_double(thresholds.truth_threshold) + ")");
    }
    if (!(awareness.truth_alpha > 0.0 && awareness.truth_alpha <= 1.0)) {
        throw InvalidConfig("awareness.truth_alpha", "must be in (0, 1]");
    }
    if (awareness.respond_window < 1) {
        throw InvalidConfig("awareness.respond_window", "must be >= 1");
    }
    if (awareness.staleness < 1) throw InvalidConfig("awareness.staleness", "must be >= 1");
    if (awareness.cells_per_query < 1) {
        throw InvalidConfig("awareness.cells_per_query", "must be >= 1");
    }
    for (double w : {risk.weights.suspicious, risk.weights.malicious, risk.weights.noxious}) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw InvalidConfig("risk.weights", "weights must be in [0, 1]");
        }
    }
    if (!(risk.bands.low_cut >= 0.0 && risk.bands.low_cut < risk.bands.high_cut &&
          risk.bands.high_cut <= 1.0)) {
        throw InvalidConfig("risk.bands", "must satisfy 0 <= low < high <= 1");
    }
    if (risk.merge_period < 1) throw InvalidConfig("risk.merge_period", "must be >= 1");
    if (exploration.enabled && exploration.sample < 1) {
        throw InvalidConfig("exploration.sample", "must be >= 1 when enabled");
    }
}

std::array<std::uint32_t, kProfileKindCount> profile_counts(
    const std::array<double, kProfileKindCount>& mix, std::uint32_t n_agents) {
    std::array<std::uint32_t, kProfileKindCount> counts{};
    std::array<double, kProfileKindCount> remainder{};
    std::uint32_t assigned = 0;
    for (std::size_t k = 0; k < kProfileKindCount; ++k) {
        const double quota = mix[k] * static_cast<double>(n_agents);
        counts[k] = static_cast<std::uint32_t>(std::floor(quota));
        remainder[k] = quota - std::floor(quota);
        assigned += counts[k];
    }
    std::array<std::size_t, kProfileKindCount> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return a < b;
    });
    for (std::size_t i = 0; assigned < n_agents && i < kProfileKindCount; ++i) {
        ++counts[idx[i]];
        ++assigned;
    }
    return counts;
}

Position World::cell_center(CellId cell) const {
    const double width = config_.world_size / static_cast<double>(config_.grid_cells);
    const CellId row = cell / config_.grid_cells;
    const CellId col = cell % config_.grid_cells;
    return Position{(static_cast<double>(col) + 0.5) * width,
                    (static_cast<double>(row) + 0.5) * width};
}

bool World::agent_sees(const Agent& a, CellId cell) const {
    return std::binary_search(a.visible_cells.begin(), a.visible_cells.end(), cell);
}

World World::spawn(const WorldConfig& config) {
    config.validate();

    World w;
    w.config_ = config;
    const std::uint32_t n = config.n_agents;
    const std::uint32_t n_cells = config.grid_cells * config.grid_cells;

    RngStream grid_rng(derive_seed(config.seed, kStreamGrid));
    w.grid_.resize(n_cells);
    for (auto& c : w.grid_) c = static_cast<Category>(grid_rng.next_below(config.alphabet));

    w.kind_counts_ = profile_counts(config.profile_mix, n);
    std::vector<ProfileKind> kinds;
    kinds.reserve(n);
    for (std::size_t k = 0; k < kProfileKindCount; ++k) {
        kinds.insert(kinds.end(), w.kind_counts_[k], static_cast<ProfileKind>(k));
    }
    RngStream shuffle_rng(derive_seed(config.seed, kStreamProfiles));
    for (std::size_t i = kinds.size(); i > 1; --i) {
        const std::size_t j = shuffle_rng.next_below(static_cast<std::uint32_t>(i));
        std::swap(kinds[i - 1], kinds[j]);
    }

    RngStream place_rng(derive_seed(config.seed, kStreamPlacement));
    w.agents_.reserve(n);
    for (AgentId id = 0; id < n; ++id) {
        Agent a;
        a.id = id;
        a.pos = Position{place_rng.next_double() * config.world_size,
                         place_rng.next_double() * config.world_size};
        a.profile = kinds[id];
        a.lum = gso::LuciferinState{config.gso.g0, config.gso.r_s / 2.0};
        a.domain.capacity = config.gso.s;
        a.assessment.viewpoint = id;
        for (CellId c = 0; c < n_cells; ++c) {
            if (distance(a.pos, w.cell_center(c)) < config.gso.r_s) {
                a.visible_cells.push_back(c);
            }
        }
        w.agents_.push_back(std::move(a));
    }
    return w;
}

std::vector<AgentId> World::iteration_order(const StepOptions& options) const {
    const std::size_t n = agents_.size();
    if (options.agent_order.empty()) {
        std::vector<AgentId> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<AgentId>(i);
        return order;
    }
    if (options.agent_order.size() != n) {
        throw std::invalid_argument("agent_order must cover every agent exactly once");
    }
    std::vector<bool> seen(n, false);
    for (AgentId id : options.agent_order) {
        if (id >= n || seen[id]) {
            throw std::invalid_argument("agent_order must be a permutation of agent ids");
        }
        seen[id] = true;
    }
    return options.agent_order;
}

void World::phase_perceive(Tick t, const std::vector<AgentId>& order) {
    // Stationary agents over a static grid: perception refreshes the
    // timestamp that the staleness bound is checked against.
    for (AgentId id : order) agents_[id].last_perceived = t;
}

std::uint64_t World::phase_answer(Tick t, const std::vector<AgentId>& order,
                                  std::map<AgentId, std::vector<ResponseMsg>>& deliveries) {
    std::uint64_t responses = 0;
    auto pending = std::move(pending_);
    pending_.clear();

    for (AgentId target_id : order) {
        auto it = pending.find(target_id);
        if (it == pending.end()) continue;
        auto& queries = it->second;
        std::sort(queries.begin(), queries.end(),
                  [](const QueryMsg& a, const QueryMsg& b) { return a.from < b.from; });

        const Agent& target = agents_[target_id];
        const AdversaryProfile& prof = config_.profiles[kind_index(target.profile)];

        for (const QueryMsg& q : queries) {
            RngStream rng(derive_seed(config_.seed, kStreamRespond, t,
                                      pair_key(target_id, q.from)));
            if (!rng.bernoulli(prof.respond_prob)) continue;
            const bool lie = rng.bernoulli(prof.lie_prob);

            ResponseMsg resp;
            resp.responder = target_id;
            resp.answers.reserve(q.cells.size());
            for (CellId c : q.cells) {
                if (!agent_sees(target, c)) continue;
                const Category truth = grid_[c];
                Category v = truth;
                if (lie) {
                    // Uniformly random wrong category.
                    const Category w =
                        static_cast<Category>(rng.next_below(config_.alphabet - 1));
                    v = w >= truth ? static_cast<Category>(w + 1) : w;
                }
                resp.answers.push_back(Belief{c, v, target_id, t});
            }
            for (const auto& [subject, rec] : target.records) {
                if (subject == q.from) continue;
                resp.reports.push_back(anomaly::BehaviorReport{
                    target_id, subject, rec.responsiveness, rec.truthfulness, t});
            }
            deliveries[q.from].push_back(std::move(resp));
            ++responses;
        }
    }
    return responses;
}

void World::phase_score(Tick t, const std::vector<AgentId>& order,
                        std::map<AgentId, std::vector<ResponseMsg>>& deliveries) {
    auto outstanding = std::move(outstanding_);
    outstanding_.clear();

    for (AgentId qid : order) {
        Agent& q = agents_[qid];
        auto dit = deliveries.find(qid);
        auto oit = outstanding.find(qid);
        if (dit == deliveries.end() && oit == outstanding.end()) continue;

        std::set<AgentId> touched;
        std::set<AgentId> responded;

        if (dit != deliveries.end()) {
            auto& resps = dit->second;
            std::sort(resps.begin(), resps.end(),
                      [](const ResponseMsg& a, const ResponseMsg& b) {
                          return a.responder < b.responder;
                      });
            for (const ResponseMsg& r : resps) {
                responded.insert(r.responder);
                touched.insert(r.responder);
                ++q.responses_received;

                double sum = 0.0;
                int scored = 0;
                const bool fresh = t - q.last_perceived <= config_.awareness.staleness;
                for (const Belief& b : r.answers) {
                    if (!fresh || !agent_sees(q, b.subject)) continue;
                    const Belief own{b.subject, grid_[b.subject], qid, q.last_perceived};
                    sum += awareness::score_response(own, b);
                    ++scored;
                }
                awareness::InteractionEntry entry;
                entry.tick = t;
                entry.queried = true;
                entry.responded = true;
                if (scored > 0) entry.agreement = sum / scored;
                q.logs[r.responder].append(entry);

                for (const auto& rep : r.reports) {
                    auto key = std::make_pair(rep.reporter, rep.subject);
                    auto ex = q.inbox.find(key);
                    if (ex == q.inbox.end() || ex->second.reported_at <= rep.reported_at) {
                        q.inbox[key] = rep;
                    }
                }
            }
        }

        if (oit != outstanding.end()) {
            for (const auto& [target, cells] : oit->second.targets) {
                if (responded.count(target)) continue;
                q.logs[target].append(awareness::InteractionEntry{t, true, false, {}});
                touched.insert(target);
            }
        }

        for (AgentId peer : touched) {
            q.records[peer] = awareness::make_behavior_record(
                q.logs[peer], t, config_.awareness.respond_window,
                config_.awareness.truth_alpha);
        }

        // Round agreement diagnostic: Fleiss' kappa over the cells rated by
        // every responder of this round.
        if (dit != deliveries.end() && dit->second.size() >= 2) {
            const std::size_t n_raters = dit->second.size();
            std::map<CellId, std::vector<int>> by_cell;
            for (const ResponseMsg& r : dit->second) {
                for (const Belief& b : r.answers) {
                    auto& row = by_cell[b.subject];
                    row.resize(config_.alphabet, 0);
                    ++row[b.value];
                }
            }
            std::vector<std::vector<int>> matrix;
            for (auto& [cell, row] : by_cell) {
                long long total = 0;
                for (int c : row) total += c;
                if (total == static_cast<long long>(n_raters)) matrix.push_back(row);
            }
            if (!matrix.empty()) {
                try {
                    q.last_kappa = awareness::fleiss_kappa(matrix);
                } catch (const DegenerateAgreement& e) {
                    if (e.mean_agreement() == 1.0) q.last_kappa = 1.0;
                }
                if (q.last_kappa && log_level() >= LogLevel::Debug) {
                    log_debug("tick " + std::to_string(t) + " agent " +
                              std::to_string(qid) + " round kappa " +
                              format_double(*q.last_kappa) + " over " +
                              std::to_string(matrix.size()) + " cells x " +
                              std::to_string(n_raters) + " raters");
                }
            }
        }
    }
}

std::vector<double> World::current_fitness() const {
    const std::size_t n = agents_.size();
    std::vector<double> sum(n, 0.0);
    std::vector<std::uint32_t> cnt(n, 0);
    for (const Agent& a : agents_) {
        for (const auto& [peer, rec] : a.records) {
            sum[peer] += rec.truthfulness;
            ++cnt[peer];
        }
    }
    std::vector<double> fitness(n, 0.5);
    for (std::size_t i = 0; i < n; ++i) {
        if (cnt[i] > 0) fitness[i] = sum[i] / static_cast<double>(cnt[i]);
    }
    return fitness;
}

void World::phase_domains(Tick /*t*/, const std::vector<AgentId>& order) {
    const std::size_t n = agents_.size();
    // Fitness J_i: the truthfulness agent i has shown to its peers, here the
    // mean of the truthfulness scores its observers currently hold.
    const std::vector<double> fitness = current_fitness();

    // Swarm snapshot with this tick's luciferin.
    std::vector<gso::AgentView> views(n);
    for (std::size_t i = 0; i < n; ++i) {
        views[i] = gso::AgentView{
            agents_[i].id, agents_[i].pos,
            gso::update_luciferin(agents_[i].lum.g, fitness[i], config_.gso),
            agents_[i].lum.r_d};
    }

    std::vector<gso::DomainSelection> selections(n);
    for (AgentId id : order) {
        std::vector<gso::AgentView> peers;
        peers.reserve(n - 1);
        for (const auto& v : views) {
            if (v.id != id) peers.push_back(v);
        }
        selections[id] = gso::select_communication_domain(
            gso::SelfState{id, agents_[id].pos, agents_[id].lum}, fitness[id], peers,
            config_.gso);
    }
    for (std::size_t i = 0; i < n; ++i) {
        agents_[i].lum = selections[i].state;
        agents_[i].domain = std::move(selections[i].domain);
    }
}

std::uint64_t World::phase_queries(Tick t, const std::vector<AgentId>& order) {
    std::uint64_t messages = 0;

    for (AgentId qid : order) {
        Agent& q = agents_[qid];
        if (t % query_interval(q.assessment.alertness) != 0) continue;

        std::vector<AgentId> targets = q.domain.members;
        if (config_.exploration.enabled) {
            std::vector<AgentId> in_range;
            for (const Agent& peer : agents_) {
                if (peer.id != qid && !q.domain.contains(peer.id) &&
                    distance(q.pos, peer.pos) < config_.gso.r_s) {
                    in_range.push_back(peer.id);
                }
            }
            RngStream rng(derive_seed(config_.seed, kStreamExplore, t, qid));
            const auto extra =
                sample_k(std::move(in_range), config_.exploration.sample, rng);
            targets.insert(targets.end(), extra.begin(), extra.end());
            std::sort(targets.begin(), targets.end());
        }
        if (targets.empty()) continue;

        RngStream cell_rng(derive_seed(config_.seed, kStreamCells, t, qid));
        OutstandingRound round;

        // Prefer cells every queried peer can see; the responses then form a
        // complete subjects-by-raters block for the agreement diagnostic.
        std::vector<CellId> common;
        for (CellId c : q.visible_cells) {
            bool all = true;
            for (AgentId tid : targets) {
                if (!agent_sees(agents_[tid], c)) {
                    all = false;
                    break;
                }
            }
            if (all) common.push_back(c);
        }

        if (!common.empty()) {
            const auto cells =
                sample_k(std::move(common), config_.awareness.cells_per_query, cell_rng);
            for (AgentId tid : targets) {
                pending_[tid].push_back(QueryMsg{qid, cells});
                round.targets.emplace_back(tid, cells);
            }
        } else {
            for (AgentId tid : targets) {
                std::vector<CellId> eligible;
                for (CellId c : q.visible_cells) {
                    if (agent_sees(agents_[tid], c)) eligible.push_back(c);
                }
                if (eligible.empty()) continue;  // nothing both can see
                const auto cells = sample_k(std::move(eligible),
                                            config_.awareness.cells_per_query, cell_rng);
                pending_[tid].push_back(QueryMsg{qid, cells});
                round.targets.emplace_back(tid, cells);
            }
        }

        if (!round.targets.empty()) {
            messages += round.targets.size();
            q.queries_sent += round.targets.size();
            outstanding_[qid] = std::move(round);
        }
    }
    return messages;
}

void World::phase_assess(Tick /*t*/, const std::vector<AgentId>& order) {
    for (AgentId id : order) {
        Agent& a = agents_[id];

        std::vector<anomaly::BehaviorReport> reports;
        for (const auto& [key, rep] : a.inbox) {
            if (!a.domain.contains(key.first)) continue;  // current domain only
            if (rep.subject == a.id) continue;
            reports.push_back(rep);
        }

        std::map<AgentId, awareness::Reputation> reputations;
        for (const auto& r : reports) {
            if (reputations.count(r.reporter)) continue;
            auto it = a.records.find(r.reporter);
            reputations[r.reporter] = it != a.records.end()
                                          ? awareness::update_reputation(it->second)
                                          : awareness::Reputation{0.5};
        }

        const auto merged = anomaly::merge_behavior_data(reports, reputations, a.records);

        anomaly::RiskAssessment next;
        next.viewpoint = a.id;
        std::vector<anomaly::PeerThreat> peers;
        peers.reserve(merged.size());
        for (const auto& [subject, m] : merged) {
            const ThreatLevel label = anomaly::classify_threat(m, config_.thresholds);
            next.labels.emplace(subject, label);
            peers.push_back(anomaly::PeerThreat{subject, label, agents_[subject].pos});
        }
        next.risk = anomaly::assess_risk(peers, a.pos, config_.gso.r_s,
                                         config_.risk.weights);
        next.alertness = anomaly::update_alertness(next.risk, config_.risk.bands);
        a.assessment = std::move(next);
    }
}

TickMetrics World::collect_metrics(Tick t, std::uint64_t messages,
                                   std::uint64_t responses) const {
    TickMetrics m;
    m.tick = t;
    m.messages = messages;
    m.responses = responses;

    std::array<double, kProfileKindCount> risk_sum{};
    std::array<std::uint32_t, kProfileKindCount> risk_cnt{};
    double domain_sum = 0.0;
    double range_sum = 0.0;

    for (const Agent& a : agents_) {
        const std::size_t k = kind_index(a.profile);
        risk_sum[k] += a.assessment.risk;
        ++risk_cnt[k];
        domain_sum += static_cast<double>(a.domain.members.size());
        range_sum += a.lum.r_d;

        if (a.profile == ProfileKind::Honest) {
            for (const auto& [subject, label] : a.assessment.labels) {
                ++m.confusion[kind_index(agents_[subject].profile)]
                             [static_cast<std::size_t>(label)];
            }
        }
    }
    for (std::size_t k = 0; k < kProfileKindCount; ++k) {
        m.mean_risk[k] = risk_cnt[k] ? risk_sum[k] / risk_cnt[k] : 0.0;
    }
    const double n = static_cast<double>(agents_.size());
    m.mean_domain_size = domain_sum / n;
    m.mean_range = range_sum / n;
    return m;
}

TickMetrics World::step(const StepOptions& options) {
    const Tick t = tick_ + 1;
    const std::vector<AgentId> order = iteration_order(options);

    phase_perceive(t, order);
    std::map<AgentId, std::vector<ResponseMsg>> deliveries;
    const std::uint64_t responses = phase_answer(t, order, deliveries);
    phase_score(t, order, deliveries);
    phase_domains(t, order);
    const std::uint64_t messages = phase_queries(t, order);
    if (t % config_.risk.merge_period == 0) phase_assess(t, order);

    tick_ = t;
    return collect_metrics(t, messages, responses);
}

KindTally kind_tally(const TickMetrics& m, ProfileKind kind) {
    const std::size_t k = kind_index(kind);
    const std::size_t exp = static_cast<std::size_t>(expected_label(kind));
    KindTally tally;
    std::uint64_t total = 0;
    for (std::size_t row = 0; row < kProfileKindCount; ++row) {
        for (std::size_t col = 0; col < 4; ++col) {
            const std::uint64_t v = m.confusion[row][col];
            total += v;
            if (row == k && col == exp) tally.tp += v;
            else if (row == k) tally.fn += v;
            else if (col == exp) tally.fp += v;
        }
    }
    tally.tn = total - tally.tp - tally.fn - tally.fp;
    return tally;
}

std::optional<ThreatLevel> modal_label(const TickMetrics& m, ProfileKind kind) {
    const auto& row = m.confusion[kind_index(kind)];
    std::uint64_t best = 0;
    std::size_t arg = 0;
    bool any = false;
    for (std::size_t col = 0; col < 4; ++col) {
        if (row[col] > 0) any = true;
        if (row[col] > best) {
            best = row[col];
            arg = col;
        }
    }
    if (!any) return std::nullopt;
    return static_cast<ThreatLevel>(arg);
}

RunSummary summarize(const std::vector<TickMetrics>& per_tick,
                     const std::array<std::uint32_t, kProfileKindCount>& kind_counts) {
    RunSummary s;
    if (per_tick.empty()) return s;
    s.applicable = true;

    for (const auto& row : per_tick) s.total_messages += row.messages;
    s.mean_messages_per_tick =
        static_cast<double>(s.total_messages) / static_cast<double>(per_tick.size());

    const TickMetrics& fin = per_tick.back();
    // Derived from the tallies alone so a summary can be recomputed from the
    // per-tick CSV by `report`.
    for (std::size_t k = 1; k < kProfileKindCount; ++k) {
        const auto kind = static_cast<ProfileKind>(k);
        const KindTally tally = kind_tally(fin, kind);
        if (tally.tp + tally.fn > 0) {
            s.kinds[k].recall = static_cast<double>(tally.tp) /
                                static_cast<double>(tally.tp + tally.fn);
        }
        if (tally.tp + tally.fp > 0) {
            s.kinds[k].precision = static_cast<double>(tally.tp) /
                                   static_cast<double>(tally.tp + tally.fp);
        }
        s.kinds[k].modal = modal_label(fin, kind);
    }

    bool any_adversary = false;
    for (std::size_t k = 1; k < kProfileKindCount; ++k) {
        if (kind_counts[k] > 0) any_adversary = true;
    }
    if (any_adversary) {
        // Earliest tick from which every adversarial kind's modal label
        // already equals its final value, through the end of the run.
        std::size_t first_stable = per_tick.size() - 1;
        for (std::size_t i = per_tick.size(); i-- > 0;) {
            bool match = true;
            for (std::size_t k = 1; k < kProfileKindCount && match; ++k) {
                if (kind_counts[k] == 0) continue;
                const auto kind = static_cast<ProfileKind>(k);
                match = modal_label(per_tick[i], kind) == modal_label(fin, kind);
            }
            if (!match) break;
            first_stable = i;
        }
        s.ticks_to_stable = per_tick[first_stable].tick;
    }
    return s;
}

MetricsRecord run_experiment(const WorldConfig& config) {
    World world = World::spawn(config);
    MetricsRecord record;
    record.seed = config.seed;
    record.kind_counts = world.kind_counts();
    record.per_tick.reserve(config.ticks);
    for (Tick t = 0; t < config.ticks; ++t) {
        record.per_tick.push_back(world.step());
    }
    record.summary = summarize(record.per_tick, record.kind_counts);
    return record;
}

}  // namespace alertswarm::sim
