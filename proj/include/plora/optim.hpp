// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_OPTIM_HPP
#define PLORA_OPTIM_HPP

#include <span>
#include <string>
#include <vector>

#include "plora/matrix.hpp"

namespace plora {

struct AdamWParams {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps = 1e-8;
    double weight_decay = 0.0;

    void validate() const;
};

/// Named handle onto a trainable tensor.
struct ParamRef {
    std::string name;
    Matrix* value = nullptr;
};

/// First/second moments per trainable tensor plus the shared step counter.
/// reset() erases all history, which is exactly what an unload needs.
struct OptimState {
    struct Moments {
        Matrix m;
        Matrix v;
    };
    std::vector<Moments> slots;
    long step = 0;

    static OptimState for_params(std::span<const ParamRef> params);
    void reset();
};

/// One decoupled-weight-decay Adam step with bias-corrected moments.
/// grads[i] pairs with params[i]; rejects shape mismatches and non-finite
/// gradients, naming the offending tensor.
void adamw_step(std::span<const ParamRef> params, std::span<const Matrix> grads, OptimState& state,
                const AdamWParams& hyper);

void reset_state(OptimState& state);

/// Constant learning rate. Trivial by itself; it exists so the unload
/// protocol has real scheduler state to reset.
class ConstantSchedule {
  public:
    explicit ConstantSchedule(double lr) : lr_(lr) {}
    double rate(long /*step*/) const { return lr_; }
    void reset() {}

  private:
    double lr_;
};

} // namespace plora

#endif
