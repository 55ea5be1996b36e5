// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/controller.hpp"

#include <cmath>

namespace plora {

std::string to_string(UnloadMode mode) {
    return mode == UnloadMode::forward_preserving ? "forward_preserving" : "paper_literal";
}

UnloadMode unload_mode_from_string(const std::string& s) {
    if (s == "forward_preserving") return UnloadMode::forward_preserving;
    if (s == "paper_literal") return UnloadMode::paper_literal;
    throw ConfigError("unknown unload mode '" + s + "'");
}

void PloraConfig::validate() const {
    if (unload_interval_steps < 1) {
        throw ConfigError("unload_interval_steps must be >= 1, got " + std::to_string(unload_interval_steps));
    }
    if (momentum < 0.0 || momentum > 1.0) {
        throw ConfigError("momentum must lie in [0,1], got " + std::to_string(momentum));
    }
}

bool should_unload(long step, long interval_steps) {
    if (interval_steps < 1) throw ConfigError("unload interval must be >= 1");
    return step > 0 && step % interval_steps == 0;
}

Matrix effective_weight(const LinearLayer& layer) {
    if (!layer.adapter) return layer.w;
    return add(layer.w, matmul(layer.adapter->b, layer.adapter->a));
}

void unload_layer(LinearLayer& layer, double momentum, UnloadMode mode, SeededRng& rng) {
    if (!layer.adapter) throw ShapeError("unload: layer has no adapter");
    if (momentum < 0.0 || momentum > 1.0) {
        throw NumericError("unload: momentum must lie in [0,1], got " + std::to_string(momentum));
    }
    LoraAdapter& ad = *layer.adapter;
    const Matrix ba = matmul(ad.b, ad.a);
    if (momentum == 0.0) {
        layer.w = add(layer.w, ba);
        layer.adapter = init_adapter(ad.b.rows(), ad.a.cols(), ad.rank, ad.init_std, rng);
        return;
    }
    layer.w = add(layer.w, scale(ba, 1.0 - momentum));
    ad.b = scale(ad.b, momentum);
    if (mode == UnloadMode::paper_literal) {
        ad.a = scale(ad.a, momentum);
    }
}

std::vector<Matrix> cumulative_update(const Network& net_now, const Network& net_at_start) {
    if (net_now.layers.size() != net_at_start.layers.size()) {
        throw ShapeError("cumulative_update: depth " + std::to_string(net_now.layers.size()) + " vs " +
                         std::to_string(net_at_start.layers.size()));
    }
    std::vector<Matrix> deltas;
    deltas.reserve(net_now.layers.size());
    for (std::size_t i = 0; i < net_now.layers.size(); ++i) {
        if (!net_now.layers[i].w.same_shape(net_at_start.layers[i].w)) {
            throw ShapeError("cumulative_update: layer " + std::to_string(i) + " is " +
                             net_now.layers[i].w.shape_str() + " vs " + net_at_start.layers[i].w.shape_str());
        }
        deltas.push_back(sub(effective_weight(net_now.layers[i]), effective_weight(net_at_start.layers[i])));
    }
    return deltas;
}

PloraController::PloraController(PloraConfig cfg) : cfg_(cfg) { cfg_.validate(); }

const StageRecord& PloraController::unload_and_reinit(Network& net, const Network& initial, OptimState& optim,
                                                      ConstantSchedule& sched, SeededRng& rng, long step,
                                                      double rank_tol) {
    StageRecord rec;
    rec.stage_index = completed_stages_ + 1;
    rec.steps_in_stage = step - last_unload_step_;

    const std::vector<std::size_t> adapted = net.adapted_layers();
    for (std::size_t idx : adapted) {
        const LoraAdapter& ad = *net.layers[idx].adapter;
        rec.ba_fro_per_layer.push_back(frobenius_norm(matmul(ad.b, ad.a)));
    }
    for (std::size_t idx : adapted) {
        unload_layer(net.layers[idx], cfg_.momentum, cfg_.mode, rng);
    }
    const std::vector<Matrix> deltas = cumulative_update(net, initial);
    for (std::size_t idx : adapted) {
        rec.delta_rank_per_layer.push_back(numerical_rank(deltas[idx], rank_tol));
        rec.delta_fro_per_layer.push_back(frobenius_norm(deltas[idx]));
    }

    // The moments describe the pre-merge parametrization; always drop them.
    optim.reset();
    sched.reset();

    completed_stages_ = rec.stage_index;
    last_unload_step_ = step;
    records_.push_back(std::move(rec));
    return records_.back();
}

void PloraController::restore(int completed_stages, long last_unload_step) {
    completed_stages_ = completed_stages;
    last_unload_step_ = last_unload_step;
}

} // namespace plora
