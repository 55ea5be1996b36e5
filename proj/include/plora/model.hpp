// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_MODEL_HPP
#define PLORA_MODEL_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "plora/linalg.hpp"
#include "plora/matrix.hpp"
#include "plora/rng.hpp"

namespace plora {

/// Low-rank residual pair: b is d x r (born zero), a is r x k (born Gaussian),
/// so the adapter contributes b*(a*x) = 0 to the forward pass at birth.
struct LoraAdapter {
    Matrix b;
    Matrix a;
    std::size_t rank = 0;
    double init_std = 0.0;
};

/// Dense layer h = w*x, optionally carrying an adapter (h = w*x + b*(a*x)).
/// A layer is either backbone-trainable or adapted, never both.
struct LinearLayer {
    Matrix w;
    std::optional<LoraAdapter> adapter;
    bool trainable_backbone = false;

    std::size_t out_dim() const { return w.rows(); }
    std::size_t in_dim() const { return w.cols(); }
};

/// Feed-forward stack with tanh between layers (none after the last).
struct Network {
    std::vector<LinearLayer> layers;

    std::size_t in_dim() const { return layers.front().in_dim(); }
    std::size_t out_dim() const { return layers.back().out_dim(); }
    std::vector<std::size_t> adapted_layers() const;
    void validate() const;
};

/// Per-layer gradients; only the fields of trainable tensors are populated.
struct LayerGrads {
    std::optional<Matrix> w;
    std::optional<Matrix> b;
    std::optional<Matrix> a;
};

struct GradientSet {
    std::vector<LayerGrads> layers;
};

/// Values retained by the forward pass for backprop: the input to each layer
/// and the tanh outputs between layers.
struct ForwardCache {
    std::vector<Matrix> layer_inputs;
    std::vector<Matrix> activations; // tanh output after layer i, i < depth-1
    Matrix output;
};

/// b zero, a ~ N(0, init_std); requires 1 <= rank <= min(d, k).
LoraAdapter init_adapter(std::size_t d, std::size_t k, std::size_t rank, double init_std, SeededRng& rng);

/// w*x plus the adapter branch computed as b*(a*x); the d x k product b*a is
/// never formed here (only unload and analysis paths materialize it).
Matrix layer_forward(const LinearLayer& layer, const Matrix& x);

std::pair<Matrix, ForwardCache> network_forward(const Network& net, const Matrix& x);

/// Backprop through the cache; upstream gradient g at a layer yields
/// grad_w = g*x^T, grad_b = g*(a*x)^T, grad_a = (b^T*g)*x^T.
GradientSet network_backward(const Network& net, const ForwardCache& cache, const Matrix& loss_grad);

/// Mean squared error over all entries and its gradient 2*(pred-target)/count.
std::pair<double, Matrix> mse_loss(const Matrix& pred, const Matrix& target);

} // namespace plora

#endif
