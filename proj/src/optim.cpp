// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/optim.hpp"

#include <cmath>

#include "plora/linalg.hpp"

namespace plora {

void AdamWParams::validate() const {
    if (!(lr > 0.0)) throw NumericError("adamw: lr must be positive");
    if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
        throw NumericError("adamw: betas must lie in [0,1)");
    }
    if (!(eps > 0.0)) throw NumericError("adamw: eps must be positive");
    if (weight_decay < 0.0) throw NumericError("adamw: weight_decay must be non-negative");
}

OptimState OptimState::for_params(std::span<const ParamRef> params) {
    OptimState st;
    st.slots.reserve(params.size());
    for (const ParamRef& p : params) {
        st.slots.push_back({Matrix(p.value->rows(), p.value->cols()), Matrix(p.value->rows(), p.value->cols())});
    }
    return st;
}

void OptimState::reset() {
    for (Moments& s : slots) {
        s.m.fill(0.0);
        s.v.fill(0.0);
    }
    step = 0;
}

void adamw_step(std::span<const ParamRef> params, std::span<const Matrix> grads, OptimState& state,
                const AdamWParams& hyper) {
    hyper.validate();
    if (params.size() != grads.size() || params.size() != state.slots.size()) {
        throw ShapeError("adamw_step: got " + std::to_string(params.size()) + " params, " +
                         std::to_string(grads.size()) + " grads, " + std::to_string(state.slots.size()) +
                         " state slots");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!params[i].value->same_shape(grads[i])) {
            throw ShapeError("adamw_step: " + params[i].name + " is " + params[i].value->shape_str() +
                             " but gradient is " + grads[i].shape_str());
        }
        if (!grads[i].is_finite()) {
            throw NumericError("adamw_step: non-finite gradient for " + params[i].name);
        }
    }

    const long t = state.step + 1;
    const double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        adamw_update(*params[i].value, grads[i], state.slots[i].m, state.slots[i].v, hyper.lr, hyper.beta1,
                     hyper.beta2, hyper.eps, hyper.weight_decay, bc1, bc2);
    }
    state.step = t;
}

void reset_state(OptimState& state) { state.reset(); }

} // namespace plora
