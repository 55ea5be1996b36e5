// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plora {

std::vector<std::size_t> Network::adapted_layers() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].adapter) out.push_back(i);
    }
    return out;
}

void Network::validate() const {
    if (layers.empty()) throw ShapeError("network has no layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const LinearLayer& l = layers[i];
        if (l.adapter) {
            if (l.trainable_backbone) {
                throw ShapeError("layer " + std::to_string(i) + " is both adapted and backbone-trainable");
            }
            if (l.adapter->b.rows() != l.out_dim() || l.adapter->a.cols() != l.in_dim() ||
                l.adapter->b.cols() != l.adapter->rank || l.adapter->a.rows() != l.adapter->rank) {
                throw ShapeError("layer " + std::to_string(i) + " adapter dims do not match " + l.w.shape_str());
            }
        }
        if (i + 1 < layers.size() && layers[i + 1].in_dim() != l.out_dim()) {
            throw ShapeError("layer " + std::to_string(i) + " output dim " + std::to_string(l.out_dim()) +
                             " does not chain into layer " + std::to_string(i + 1));
        }
    }
}

LoraAdapter init_adapter(std::size_t d, std::size_t k, std::size_t rank, double init_std, SeededRng& rng) {
    if (rank < 1 || rank > std::min(d, k)) {
        throw ShapeError("adapter rank " + std::to_string(rank) + " out of range for " + std::to_string(d) +
                         "x" + std::to_string(k));
    }
    LoraAdapter ad;
    ad.b = Matrix(d, rank);
    ad.a = gaussian_matrix(rank, k, init_std, rng);
    ad.rank = rank;
    ad.init_std = init_std;
    return ad;
}

Matrix layer_forward(const LinearLayer& layer, const Matrix& x) {
    if (x.rows() != layer.in_dim()) {
        throw ShapeError("layer_forward: input " + x.shape_str() + " vs weight " + layer.w.shape_str());
    }
    Matrix h = matmul(layer.w, x);
    if (layer.adapter) {
        h = add(h, matmul(layer.adapter->b, matmul(layer.adapter->a, x)));
    }
    return h;
}

std::pair<Matrix, ForwardCache> network_forward(const Network& net, const Matrix& x) {
    net.validate();
    ForwardCache cache;
    cache.layer_inputs.reserve(net.layers.size());
    Matrix cur = x;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        cache.layer_inputs.push_back(cur);
        Matrix h = layer_forward(net.layers[i], cur);
        if (i + 1 < net.layers.size()) {
            cur = tanh_map(h);
            cache.activations.push_back(cur);
        } else {
            cur = std::move(h);
        }
    }
    cache.output = cur;
    return {cur, std::move(cache)};
}

GradientSet network_backward(const Network& net, const ForwardCache& cache, const Matrix& loss_grad) {
    net.validate();
    const std::size_t depth = net.layers.size();
    if (cache.layer_inputs.size() != depth || cache.activations.size() + 1 != depth) {
        throw ShapeError("backward: cache does not match network depth " + std::to_string(depth));
    }
    if (loss_grad.rows() != net.out_dim() || loss_grad.cols() != cache.output.cols()) {
        throw ShapeError("backward: loss gradient " + loss_grad.shape_str() + " vs output " +
                         cache.output.shape_str());
    }

    GradientSet grads;
    grads.layers.resize(depth);
    Matrix g = loss_grad;
    for (std::size_t idx = depth; idx-- > 0;) {
        const LinearLayer& layer = net.layers[idx];
        const Matrix& x = cache.layer_inputs[idx];
        if (x.cols() != g.cols()) {
            throw ShapeError("backward: cache batch " + x.shape_str() + " vs gradient " + g.shape_str());
        }
        LayerGrads& lg = grads.layers[idx];
        if (layer.trainable_backbone) {
            lg.w = matmul(g, transpose(x));
        }
        if (layer.adapter) {
            const Matrix ax = matmul(layer.adapter->a, x);
            lg.b = matmul(g, transpose(ax));
            lg.a = matmul(matmul(transpose(layer.adapter->b), g), transpose(x));
        }
        if (idx > 0) {
            Matrix gx = matmul(transpose(layer.w), g);
            if (layer.adapter) {
                gx = add(gx, matmul(transpose(layer.adapter->a), matmul(transpose(layer.adapter->b), g)));
            }
            // undo the tanh between layer idx-1 and idx
            const Matrix& act = cache.activations[idx - 1];
            Matrix gpre(act.rows(), act.cols());
            for (std::size_t i = 0; i < act.size(); ++i) {
                gpre.data()[i] = gx.data()[i] * (1.0 - act.data()[i] * act.data()[i]);
            }
            g = std::move(gpre);
        }
    }
    return grads;
}

std::pair<double, Matrix> mse_loss(const Matrix& pred, const Matrix& target) {
    if (!pred.same_shape(target)) {
        throw ShapeError("mse_loss: " + pred.shape_str() + " vs " + target.shape_str());
    }
    const std::size_t r = pred.rows(), c = pred.cols();
    const double count = static_cast<double>(r * c);
    // Row partials keep the sum order fixed for any thread count.
    std::vector<double> partial(r, 0.0);
    Matrix grad(r, c);
#pragma omp parallel for if (r * c >= 16384) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(r); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            const double d = pred(i, j) - target(i, j);
            s += d * d;
            grad(i, j) = 2.0 * d / count;
        }
        partial[i] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return {total / count, std::move(grad)};
}

} // namespace plora
