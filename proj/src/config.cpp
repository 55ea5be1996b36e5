// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

namespace plora {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.contains(it.key())) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

} // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::full_ft: return "full_ft";
        case Regime::lora: return "lora";
        case Regime::plora: return "plora";
    }
    return "?";
}

Regime regime_from_string(const std::string& s) {
    if (s == "full_ft") return Regime::full_ft;
    if (s == "lora") return Regime::lora;
    if (s == "plora") return Regime::plora;
    throw ConfigError("unknown regime '" + s + "'");
}

void RunConfig::validate() const {
    if (task.d < 1 || task.k < 1 || task.depth < 1) throw ConfigError("task dims must be >= 1");
    if (task.n_train < 1 || task.n_val < 1) throw ConfigError("task sample counts must be >= 1");
    if (task.noise_std < 0.0) throw ConfigError("noise_std must be >= 0");
    if (task.target_update_rank > std::min(task.d, task.k)) {
        throw ConfigError("target_update_rank " + std::to_string(task.target_update_rank) +
                          " exceeds min(d,k) = " + std::to_string(std::min(task.d, task.k)));
    }
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (total_steps < 0) throw ConfigError("total_steps must be >= 0");
    if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
    if (checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
    adamw.validate();

    const bool wants_adapter = regime != Regime::full_ft;
    if (wants_adapter != adapter.has_value()) {
        throw ConfigError(std::string("adapter block must be present iff regime is lora or plora (regime ") +
                          to_string(regime) + ")");
    }
    if ((regime == Regime::plora) != plora.has_value()) {
        throw ConfigError("plora block must be present iff regime is plora");
    }
    if (adapter) {
        if (adapter->rank < 1) throw ConfigError("adapter rank must be >= 1");
        const std::size_t cap = std::min(task.d, task.k);
        if (adapter->rank > cap) {
            throw ConfigError("adapter rank " + std::to_string(adapter->rank) + " exceeds min(d,k) = " +
                              std::to_string(cap));
        }
        if (adapter->init_std < 0.0) throw ConfigError("adapter init_std must be >= 0");
        for (std::size_t idx : adapter->layers) {
            if (idx >= task.depth) {
                throw ConfigError("adapter layer index " + std::to_string(idx) + " out of range for depth " +
                                  std::to_string(task.depth));
            }
        }
    }
    if (plora) plora->validate();
    if (out_dir.empty()) throw ConfigError("out_dir must be set");
}

std::vector<std::size_t> RunConfig::adapted_layer_indices() const {
    if (!adapter) return {};
    if (!adapter->layers.empty()) {
        std::vector<std::size_t> out = adapter->layers;
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    std::vector<std::size_t> out(task.depth);
    for (std::size_t i = 0; i < task.depth; ++i) out[i] = i;
    return out;
}

RunConfig config_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j,
                        {"seed", "regime", "task", "adapter", "adamw", "batch_size", "total_steps",
                         "eval_every", "checkpoint_every", "plora", "out_dir"},
                        "config");
    RunConfig cfg;
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.regime = regime_from_string(j.at("regime").get<std::string>());

    const nlohmann::json& t = j.at("task");
    reject_unknown_keys(t, {"d", "k", "depth", "target_update_rank", "n_train", "n_val", "noise_std"},
                        "task");
    cfg.task.d = t.at("d").get<std::size_t>();
    cfg.task.k = t.at("k").get<std::size_t>();
    cfg.task.depth = get_or<std::size_t>(t, "depth", 2);
    cfg.task.target_update_rank = t.at("target_update_rank").get<std::size_t>();
    cfg.task.n_train = get_or<std::size_t>(t, "n_train", 4096);
    cfg.task.n_val = get_or<std::size_t>(t, "n_val", 256);
    cfg.task.noise_std = get_or<double>(t, "noise_std", 0.0);

    if (j.contains("adapter")) {
        const nlohmann::json& a = j.at("adapter");
        reject_unknown_keys(a, {"rank", "init_std", "layers"}, "adapter");
        AdapterConfig ad;
        ad.rank = a.at("rank").get<std::size_t>();
        ad.init_std = get_or<double>(a, "init_std", 0.02);
        ad.layers = get_or<std::vector<std::size_t>>(a, "layers", {});
        cfg.adapter = ad;
    }

    if (j.contains("adamw")) {
        const nlohmann::json& o = j.at("adamw");
        reject_unknown_keys(o, {"lr", "beta1", "beta2", "eps", "weight_decay"}, "adamw");
        cfg.adamw.lr = get_or<double>(o, "lr", 1e-4);
        cfg.adamw.beta1 = get_or<double>(o, "beta1", 0.9);
        cfg.adamw.beta2 = get_or<double>(o, "beta2", 0.99);
        cfg.adamw.eps = get_or<double>(o, "eps", 1e-8);
        cfg.adamw.weight_decay = get_or<double>(o, "weight_decay", 0.0);
    }

    cfg.batch_size = get_or<std::size_t>(j, "batch_size", 32);
    cfg.total_steps = get_or<long>(j, "total_steps", 4000);
    cfg.eval_every = get_or<long>(j, "eval_every", 100);
    cfg.checkpoint_every = get_or<long>(j, "checkpoint_every", 500);

    if (j.contains("plora")) {
        const nlohmann::json& p = j.at("plora");
        reject_unknown_keys(p, {"unload_interval_steps", "momentum", "mode", "total_stages_hint"}, "plora");
        PloraConfig pc;
        pc.unload_interval_steps = p.at("unload_interval_steps").get<long>();
        pc.momentum = get_or<double>(p, "momentum", 0.0);
        pc.mode = unload_mode_from_string(get_or<std::string>(p, "mode", "forward_preserving"));
        if (p.contains("total_stages_hint")) pc.total_stages_hint = p.at("total_stages_hint").get<int>();
        cfg.plora = pc;
    }

    cfg.out_dir = j.at("out_dir").get<std::string>();
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["regime"] = to_string(cfg.regime);
    j["task"] = {{"d", cfg.task.d},
                 {"k", cfg.task.k},
                 {"depth", cfg.task.depth},
                 {"target_update_rank", cfg.task.target_update_rank},
                 {"n_train", cfg.task.n_train},
                 {"n_val", cfg.task.n_val},
                 {"noise_std", cfg.task.noise_std}};
    if (cfg.adapter) {
        j["adapter"] = {{"rank", cfg.adapter->rank},
                        {"init_std", cfg.adapter->init_std},
                        {"layers", cfg.adapter->layers}};
    }
    j["adamw"] = {{"lr", cfg.adamw.lr},
                  {"beta1", cfg.adamw.beta1},
                  {"beta2", cfg.adamw.beta2},
                  {"eps", cfg.adamw.eps},
                  {"weight_decay", cfg.adamw.weight_decay}};
    j["batch_size"] = cfg.batch_size;
    j["total_steps"] = cfg.total_steps;
    j["eval_every"] = cfg.eval_every;
    j["checkpoint_every"] = cfg.checkpoint_every;
    if (cfg.plora) {
        nlohmann::ordered_json p;
        p["unload_interval_steps"] = cfg.plora->unload_interval_steps;
        p["momentum"] = cfg.plora->momentum;
        p["mode"] = to_string(cfg.plora->mode);
        if (cfg.plora->total_stages_hint) p["total_stages_hint"] = *cfg.plora->total_stages_hint;
        j["plora"] = p;
    }
    j["out_dir"] = cfg.out_dir;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema violation in " + path + ": " + e.what());
    }
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config: " + path);
    out << config_to_json(cfg).dump(2) << "\n";
    if (!out.flush()) throw IoError("failed writing config: " + path);
}

std::string resolve_out_dir(const RunConfig& cfg) {
    std::filesystem::path p(cfg.out_dir);
    if (p.is_absolute()) return p.string();
    const char* root = std::getenv("PLORA_OUT_DIR");
    return (std::filesystem::path(root ? root : ".") / p).string();
}

} // namespace plora
