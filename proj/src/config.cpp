#include "alertswarm/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <set>
#include <string>

#include "alertswarm/errors.hpp"
#include "alertswarm/format.hpp"

namespace alertswarm::cli {

namespace {

void reject_unknown_keys(const YAML::Node& node, const std::string& prefix,
                         const std::set<std::string>& allowed) {
    if (!node.IsDefined() || node.IsNull()) return;
    if (!node.IsMap()) {
        throw InvalidConfig(prefix.empty() ? "(root)" : prefix, "must be a mapping");
    }
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw InvalidConfig(prefix.empty() ? key : prefix + "." + key,
                                "unknown key");
        }
    }
}

template <typename T>
T get_or(const YAML::Node& node, const std::string& key, const std::string& field,
         T fallback) {
    if (!node.IsDefined() || node.IsNull()) return fallback;
    const YAML::Node v = node[key];
    if (!v.IsDefined() || v.IsNull()) return fallback;
    try {
        return v.as<T>();
    } catch (const YAML::Exception&) {
        throw InvalidConfig(field, "has the wrong type (got '" + v.as<std::string>("?") +
                                       "')");
    }
}

sim::WorldConfig from_yaml(const YAML::Node& root) {
    sim::WorldConfig cfg;

    reject_unknown_keys(root, "",
                        {"world", "profiles", "gso", "thresholds", "awareness", "risk",
                         "exploration"});

    const YAML::Node world = root["world"];
    reject_unknown_keys(world, "world",
                        {"agents", "size", "grid_cells", "alphabet", "ticks", "seed"});
    cfg.n_agents = get_or<std::uint32_t>(world, "agents", "world.agents", cfg.n_agents);
    cfg.world_size = get_or<double>(world, "size", "world.size", cfg.world_size);
    cfg.grid_cells =
        get_or<std::uint32_t>(world, "grid_cells", "world.grid_cells", cfg.grid_cells);
    cfg.alphabet = get_or<std::uint32_t>(world, "alphabet", "world.alphabet", cfg.alphabet);
    cfg.ticks = get_or<std::uint64_t>(world, "ticks", "world.ticks", cfg.ticks);
    cfg.seed = get_or<std::uint64_t>(world, "seed", "world.seed", cfg.seed);

    const YAML::Node profiles = root["profiles"];
    reject_unknown_keys(profiles, "profiles",
                        {"mix", "honest", "silent_truthful", "silent_liar",
                         "responsive_liar"});
    if (profiles.IsDefined() && !profiles.IsNull()) {
        const YAML::Node mix = profiles["mix"];
        if (mix.IsDefined() && !mix.IsNull()) {
            reject_unknown_keys(mix, "profiles.mix",
                                {"honest", "silent_truthful", "silent_liar",
                                 "responsive_liar"});
            for (std::size_t k = 0; k < sim::kProfileKindCount; ++k) {
                cfg.profile_mix[k] =
                    get_or<double>(mix, sim::kProfileKindNames[k],
                                   std::string("profiles.mix.") + sim::kProfileKindNames[k],
                                   0.0);
            }
        }
        for (std::size_t k = 0; k < sim::kProfileKindCount; ++k) {
            const std::string name = sim::kProfileKindNames[k];
            const YAML::Node p = profiles[name];
            reject_unknown_keys(p, "profiles." + name, {"respond_prob", "lie_prob"});
            cfg.profiles[k].respond_prob =
                get_or<double>(p, "respond_prob", "profiles." + name + ".respond_prob",
                               cfg.profiles[k].respond_prob);
            cfg.profiles[k].lie_prob =
                get_or<double>(p, "lie_prob", "profiles." + name + ".lie_prob",
                               cfg.profiles[k].lie_prob);
        }
    }

    const YAML::Node gso = root["gso"];
    reject_unknown_keys(gso, "gso",
                        {"rho", "gamma", "beta", "n_t", "r_s", "max_domain",
                         "initial_luciferin"});
    cfg.gso.rho = get_or<double>(gso, "rho", "gso.rho", cfg.gso.rho);
    cfg.gso.gamma = get_or<double>(gso, "gamma", "gso.gamma", cfg.gso.gamma);
    cfg.gso.beta = get_or<double>(gso, "beta", "gso.beta", cfg.gso.beta);
    cfg.gso.n_t = get_or<std::uint32_t>(gso, "n_t", "gso.n_t", cfg.gso.n_t);
    cfg.gso.r_s = get_or<double>(gso, "r_s", "gso.r_s", cfg.gso.r_s);
    cfg.gso.s = get_or<std::uint32_t>(gso, "max_domain", "gso.max_domain", cfg.gso.s);
    cfg.gso.g0 = get_or<double>(gso, "initial_luciferin", "gso.initial_luciferin",
                                cfg.gso.g0);

    const YAML::Node th = root["thresholds"];
    reject_unknown_keys(th, "thresholds", {"respond", "truth"});
    cfg.thresholds.respond_threshold =
        get_or<double>(th, "respond", "thresholds.respond",
                       cfg.thresholds.respond_threshold);
    cfg.thresholds.truth_threshold =
        get_or<double>(th, "truth", "thresholds.truth", cfg.thresholds.truth_threshold);

    const YAML::Node aw = root["awareness"];
    reject_unknown_keys(aw, "awareness",
                        {"truth_alpha", "respond_window", "staleness", "cells_per_query"});
    cfg.awareness.truth_alpha = get_or<double>(aw, "truth_alpha", "awareness.truth_alpha",
                                               cfg.awareness.truth_alpha);
    cfg.awareness.respond_window =
        get_or<std::uint64_t>(aw, "respond_window", "awareness.respond_window",
                              cfg.awareness.respond_window);
    cfg.awareness.staleness = get_or<std::uint64_t>(aw, "staleness", "awareness.staleness",
                                                    cfg.awareness.staleness);
    cfg.awareness.cells_per_query =
        get_or<std::uint32_t>(aw, "cells_per_query", "awareness.cells_per_query",
                              cfg.awareness.cells_per_query);

    const YAML::Node risk = root["risk"];
    reject_unknown_keys(risk, "risk", {"weights", "bands", "merge_period"});
    if (risk.IsDefined() && !risk.IsNull()) {
        const YAML::Node weights = risk["weights"];
        reject_unknown_keys(weights, "risk.weights", {"suspicious", "malicious", "noxious"});
        cfg.risk.weights.suspicious =
            get_or<double>(weights, "suspicious", "risk.weights.suspicious",
                           cfg.risk.weights.suspicious);
        cfg.risk.weights.malicious =
            get_or<double>(weights, "malicious", "risk.weights.malicious",
                           cfg.risk.weights.malicious);
        cfg.risk.weights.noxious = get_or<double>(weights, "noxious", "risk.weights.noxious",
                                                  cfg.risk.weights.noxious);
        const YAML::Node bands = risk["bands"];
        reject_unknown_keys(bands, "risk.bands", {"low", "high"});
        cfg.risk.bands.low_cut =
            get_or<double>(bands, "low", "risk.bands.low", cfg.risk.bands.low_cut);
        cfg.risk.bands.high_cut =
            get_or<double>(bands, "high", "risk.bands.high", cfg.risk.bands.high_cut);
        cfg.risk.merge_period = get_or<std::uint64_t>(risk, "merge_period",
                                                      "risk.merge_period",
                                                      cfg.risk.merge_period);
    }

    const YAML::Node ex = root["exploration"];
    reject_unknown_keys(ex, "exploration", {"enabled", "sample"});
    cfg.exploration.enabled =
        get_or<bool>(ex, "enabled", "exploration.enabled", cfg.exploration.enabled);
    cfg.exploration.sample =
        get_or<std::uint32_t>(ex, "sample", "exploration.sample", cfg.exploration.sample);

    cfg.validate();
    return cfg;
}

}  // namespace

sim::WorldConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("config parse error: ") + e.what());
    }
    return from_yaml(root);
}

sim::WorldConfig load_config(const std::string& path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ParseError("cannot read config file: " + path);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("config parse error in ") + path + ": " + e.what());
    }
    return from_yaml(root);
}

}  // namespace alertswarm::cli
