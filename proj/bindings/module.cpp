#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alertswarm/anomaly.hpp"
#include "alertswarm/awareness.hpp"
#include "alertswarm/config.hpp"
#include "alertswarm/errors.hpp"
#include "alertswarm/gso.hpp"
#include "alertswarm/sim.hpp"

namespace py = pybind11;
using namespace alertswarm;

namespace {

py::dict tick_metrics_dict(const sim::TickMetrics& m) {
    py::dict d;
    d["tick"] = m.tick;
    py::dict risk;
    for (std::size_t k = 0; k < sim::kProfileKindCount; ++k) {
        risk[sim::kProfileKindNames[k]] = m.mean_risk[k];
    }
    d["mean_risk"] = risk;
    d["messages"] = m.messages;
    d["responses"] = m.responses;
    d["mean_domain_size"] = m.mean_domain_size;
    d["mean_range"] = m.mean_range;
    py::dict confusion;
    for (std::size_t k = 0; k < sim::kProfileKindCount; ++k) {
        py::dict row;
        for (std::size_t l = 0; l < 4; ++l) {
            row[to_string(static_cast<ThreatLevel>(l))] = m.confusion[k][l];
        }
        confusion[sim::kProfileKindNames[k]] = row;
    }
    d["confusion"] = confusion;
    return d;
}

py::dict summary_dict(const sim::RunSummary& s) {
    py::dict d;
    d["applicable"] = s.applicable;
    d["total_messages"] = s.total_messages;
    d["mean_messages_per_tick"] = s.mean_messages_per_tick;
    if (s.ticks_to_stable) {
        d["ticks_to_stable_classification"] = *s.ticks_to_stable;
    } else {
        d["ticks_to_stable_classification"] = py::none();
    }
    py::dict kinds;
    for (std::size_t k = 1; k < sim::kProfileKindCount; ++k) {
        py::dict kd;
        const auto& ks = s.kinds[k];
        kd["expected_label"] = to_string(sim::expected_label(static_cast<sim::ProfileKind>(k)));
        kd["precision"] = ks.precision ? py::object(py::float_(*ks.precision)) : py::none();
        kd["recall"] = ks.recall ? py::object(py::float_(*ks.recall)) : py::none();
        kd["modal_label"] =
            ks.modal ? py::object(py::str(to_string(*ks.modal))) : py::none();
        kinds[sim::kProfileKindNames[k]] = kd;
    }
    d["kinds"] = kinds;
    return d;
}

py::dict record_dict(const sim::MetricsRecord& record) {
    py::dict d;
    d["seed"] = record.seed;
    py::dict counts;
    for (std::size_t k = 0; k < sim::kProfileKindCount; ++k) {
        counts[sim::kProfileKindNames[k]] = record.kind_counts[k];
    }
    d["agents_per_kind"] = counts;
    py::list rows;
    for (const auto& row : record.per_tick) rows.append(tick_metrics_dict(row));
    d["per_tick"] = rows;
    d["summary"] = summary_dict(record.summary);
    return d;
}

py::dict agent_dict(const sim::Agent& a) {
    py::dict d;
    d["id"] = a.id;
    d["pos"] = py::make_tuple(a.pos.x, a.pos.y);
    d["profile"] = sim::kProfileKindNames[static_cast<std::size_t>(a.profile)];
    d["luciferin"] = a.lum.g;
    d["range"] = a.lum.r_d;
    d["domain"] = a.domain.members;
    d["risk"] = a.assessment.risk;
    d["alertness"] = to_string(a.assessment.alertness);
    py::dict labels;
    for (const auto& [peer, label] : a.assessment.labels) {
        labels[py::int_(peer)] = to_string(label);
    }
    d["labels"] = labels;
    d["queries_sent"] = a.queries_sent;
    d["responses_received"] = a.responses_received;
    d["last_kappa"] = a.last_kappa ? py::object(py::float_(*a.last_kappa)) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deterministic multi-agent swarm simulator: GSO communication "
              "domains, reputation-weighted behavior merging, threat "
              "classification, and adaptive alertness.";

    py::register_exception<DegenerateAgreement>(m, "DegenerateAgreementError");
    py::register_exception<SubjectMismatch>(m, "SubjectMismatchError");
    py::register_exception<UnknownReporter>(m, "UnknownReporterError");
    py::register_exception<EmptyNeighborhood>(m, "EmptyNeighborhoodError");
    py::register_exception<ParseError>(m, "ConfigParseError");
    py::register_exception<InvalidConfig>(m, "InvalidConfigError");

    py::enum_<ThreatLevel>(m, "ThreatLevel")
        .value("Cooperative", ThreatLevel::Cooperative)
        .value("Suspicious", ThreatLevel::Suspicious)
        .value("Malicious", ThreatLevel::Malicious)
        .value("Noxious", ThreatLevel::Noxious);

    py::enum_<AlertnessLevel>(m, "AlertnessLevel")
        .value("Low", AlertnessLevel::Low)
        .value("Elevated", AlertnessLevel::Elevated)
        .value("High", AlertnessLevel::High);

    m.def(
        "distance",
        [](std::pair<double, double> a, std::pair<double, double> b) {
            return distance({a.first, a.second}, {b.first, b.second});
        },
        py::arg("a"), py::arg("b"), "Euclidean distance between two (x, y) points.");

    m.def("fleiss_kappa", &awareness::fleiss_kappa, py::arg("counts"),
          "Fleiss' kappa over an N-subjects x k-categories count matrix.");

    m.def(
        "update_reputation",
        [](double responsiveness, double truthfulness, std::uint64_t sample_count) {
            return awareness::update_reputation(
                       {responsiveness, truthfulness, sample_count})
                .value;
        },
        py::arg("responsiveness"), py::arg("truthfulness"), py::arg("sample_count"),
        "truthfulness * responsiveness, or the 0.5 prior when unobserved.");

    py::class_<gso::GsoParams>(m, "GsoParams")
        .def(py::init([](double rho, double gamma, double beta, std::uint32_t n_t,
                         double r_s, std::uint32_t s, double g0) {
                 gso::GsoParams p{rho, gamma, beta, n_t, r_s, s, g0};
                 p.validate();
                 return p;
             }),
             py::arg("rho") = 0.4, py::arg("gamma") = 0.6, py::arg("beta") = 0.08,
             py::arg("n_t") = 5, py::arg("r_s") = 15.0, py::arg("s") = 5,
             py::arg("g0") = 5.0)
        .def_readonly("rho", &gso::GsoParams::rho)
        .def_readonly("gamma", &gso::GsoParams::gamma)
        .def_readonly("beta", &gso::GsoParams::beta)
        .def_readonly("n_t", &gso::GsoParams::n_t)
        .def_readonly("r_s", &gso::GsoParams::r_s)
        .def_readonly("s", &gso::GsoParams::s)
        .def_readonly("g0", &gso::GsoParams::g0);

    m.def("update_luciferin", &gso::update_luciferin, py::arg("prev"), py::arg("fitness"),
          py::arg("params"), "G(t) = (1 - rho) G(t-1) + gamma J(t).");

    m.def("update_domain_range", &gso::update_domain_range, py::arg("r_d"),
          py::arg("neighbor_count"), py::arg("params"),
          "min(r_s, max(0, r_d + beta (n_t - count))).");

    m.def(
        "neighborhood",
        [](AgentId self,
           const std::vector<std::tuple<AgentId, double, double, double, double>>& swarm) {
            std::vector<gso::AgentView> views;
            views.reserve(swarm.size());
            for (const auto& [id, x, y, g, r_d] : swarm) {
                views.push_back({id, {x, y}, g, r_d});
            }
            std::vector<std::pair<AgentId, double>> out;
            for (const auto& n : gso::neighborhood(self, views)) {
                out.emplace_back(n.id, n.luciferin);
            }
            return out;
        },
        py::arg("self_id"), py::arg("swarm"),
        "Candidates (id, luciferin) given rows of (id, x, y, luciferin, r_d).");

    m.def(
        "inclusion_probabilities",
        [](double self_luciferin, const std::vector<std::pair<AgentId, double>>& cands) {
            std::vector<gso::Neighbor> n;
            n.reserve(cands.size());
            for (const auto& [id, g] : cands) n.push_back({id, g});
            return gso::inclusion_probabilities(self_luciferin, n);
        },
        py::arg("self_luciferin"), py::arg("candidates"));

    m.def(
        "select_communication_domain",
        [](AgentId self_id, std::pair<double, double> pos, double luciferin, double r_d,
           double fitness,
           const std::vector<std::tuple<AgentId, double, double, double>>& peers,
           const gso::GsoParams& params) {
            std::vector<gso::AgentView> views;
            views.reserve(peers.size());
            for (const auto& [id, x, y, g] : peers) views.push_back({id, {x, y}, g, 0.0});
            const auto sel = gso::select_communication_domain(
                {self_id, {pos.first, pos.second}, {luciferin, r_d}}, fitness, views,
                params);
            return py::make_tuple(sel.domain.members,
                                  py::make_tuple(sel.state.g, sel.state.r_d));
        },
        py::arg("self_id"), py::arg("pos"), py::arg("luciferin"), py::arg("r_d"),
        py::arg("fitness"), py::arg("peers"), py::arg("params"),
        "Selects the communication domain; peers carry (id, x, y, luciferin) "
        "already updated for this tick. Returns (members, (luciferin, r_d)).");

    m.def(
        "merge_behavior_data",
        [](const std::vector<std::tuple<AgentId, AgentId, double, double>>& reports,
           const std::map<AgentId, double>& reputations,
           const std::map<AgentId, std::pair<double, double>>& own) {
            std::vector<anomaly::BehaviorReport> rs;
            rs.reserve(reports.size());
            for (const auto& [reporter, subject, resp, truth] : reports) {
                rs.push_back({reporter, subject, resp, truth, 0});
            }
            std::map<AgentId, awareness::Reputation> reps;
            for (const auto& [id, v] : reputations) reps[id] = {v};
            std::map<AgentId, awareness::BehaviorRecord> recs;
            for (const auto& [id, rt] : own) recs[id] = {rt.first, rt.second, 1};
            py::dict out;
            for (const auto& [subject, merged] :
                 anomaly::merge_behavior_data(rs, reps, recs)) {
                out[py::int_(subject)] = py::make_tuple(
                    merged.responsiveness, merged.truthfulness, merged.total_weight);
            }
            return out;
        },
        py::arg("reports"), py::arg("reputations"), py::arg("own") =
            std::map<AgentId, std::pair<double, double>>{},
        "Reports are (reporter, subject, responsiveness, truthfulness); returns "
        "subject -> (responsiveness, truthfulness, total_weight).");

    m.def(
        "classify_threat",
        [](double responsiveness, double truthfulness, double respond_threshold,
           double truth_threshold) {
            return anomaly::classify_threat(
                {0, responsiveness, truthfulness, 1.0},
                {respond_threshold, truth_threshold});
        },
        py::arg("responsiveness"), py::arg("truthfulness"),
        py::arg("respond_threshold") = 0.5, py::arg("truth_threshold") = 0.5);

    m.def(
        "assess_risk",
        [](const std::vector<std::tuple<AgentId, ThreatLevel, double, double>>& peers,
           std::pair<double, double> self, double sensor_range) {
            std::vector<anomaly::PeerThreat> ps;
            ps.reserve(peers.size());
            for (const auto& [id, label, x, y] : peers) ps.push_back({id, label, {x, y}});
            return anomaly::assess_risk(ps, {self.first, self.second}, sensor_range);
        },
        py::arg("peers"), py::arg("self_pos"), py::arg("sensor_range"),
        "Peers are (id, label, x, y).");

    m.def(
        "update_alertness",
        [](double risk, double low_cut, double high_cut) {
            return anomaly::update_alertness(risk, {low_cut, high_cut});
        },
        py::arg("risk"), py::arg("low_cut") = 0.25, py::arg("high_cut") = 0.6);

    py::class_<sim::WorldConfig>(m, "WorldConfig")
        .def_readonly("n_agents", &sim::WorldConfig::n_agents)
        .def_readonly("world_size", &sim::WorldConfig::world_size)
        .def_readonly("ticks", &sim::WorldConfig::ticks)
        .def_readonly("seed", &sim::WorldConfig::seed)
        .def("validate", &sim::WorldConfig::validate);

    m.def("load_config", &cli::load_config, py::arg("path"),
          "Parse and validate a YAML experiment config file.");
    m.def("parse_config", &cli::parse_config, py::arg("yaml_text"),
          "Parse and validate a YAML config document from a string.");

    py::class_<sim::World>(m, "World")
        .def_static("spawn", &sim::World::spawn, py::arg("config"))
        .def("step", [](sim::World& w) { return tick_metrics_dict(w.step()); })
        .def_property_readonly("tick", &sim::World::tick)
        .def("agents",
             [](const sim::World& w) {
                 py::list out;
                 for (const auto& a : w.agents()) out.append(agent_dict(a));
                 return out;
             })
        .def("agent", [](const sim::World& w, AgentId id) {
            if (id >= w.agents().size()) throw py::index_error();
            return agent_dict(w.agents()[id]);
        });

    m.def(
        "run_experiment",
        [](const sim::WorldConfig& config) { return record_dict(sim::run_experiment(config)); },
        py::arg("config"),
        "Spawn, step config.ticks times, and return per-tick metrics plus the "
        "final summary as plain dicts.");

    m.attr("__version__") = "0.1.0";
}
