// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_CONFIG_HPP
#define PLORA_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plora/controller.hpp"
#include "plora/optim.hpp"

namespace plora {

enum class Regime {
    full_ft,
    lora,
    plora,
};

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// Synthetic teacher-student regression task. The teacher is the student's
/// initial network with a known-rank weight perturbation per layer, so the
/// rank the update *needs* is a dial.
struct TaskConfig {
    std::size_t d = 16;
    std::size_t k = 16;
    std::size_t depth = 2;
    std::size_t target_update_rank = 16;
    std::size_t n_train = 4096;
    std::size_t n_val = 256;
    double noise_std = 0.0;
};

struct AdapterConfig {
    std::size_t rank = 1;
    double init_std = 0.02;
    std::vector<std::size_t> layers; // adapted layer indices; empty in file form means "all"
};

/// Complete description of one experiment; (config, seed) determines every
/// emitted byte.
struct RunConfig {
    std::uint64_t seed = 0;
    Regime regime = Regime::lora;
    TaskConfig task;
    std::optional<AdapterConfig> adapter; // lora / plora only
    AdamWParams adamw;
    std::size_t batch_size = 32;
    long total_steps = 4000;
    long eval_every = 100;
    long checkpoint_every = 500;
    std::optional<PloraConfig> plora; // plora only
    std::string out_dir;

    void validate() const;
    /// Adapted layer indices with the empty-list default ("all") applied.
    std::vector<std::size_t> adapted_layer_indices() const;
};

/// Strict parse: unknown keys and regime/block mismatches are rejected.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& cfg, const std::string& path);

/// Output root resolution: absolute out_dir is used as-is, otherwise it is
/// joined under $PLORA_OUT_DIR (default ".").
std::string resolve_out_dir(const RunConfig& cfg);

} // namespace plora

#endif
