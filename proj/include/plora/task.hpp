// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_TASK_HPP
#define PLORA_TASK_HPP

#include "plora/config.hpp"
#include "plora/model.hpp"

namespace plora {

/// Materialized teacher-student regression problem. The student starts at
/// W_0; the teacher is W_0 + a rank-limited, unit-Frobenius perturbation per
/// layer; labels are teacher outputs plus optional Gaussian noise.
struct TaskData {
    Network student; // backbone only, no adapters attached yet
    Network teacher;
    Matrix train_x;
    Matrix train_y;
    Matrix eval_x;
    Matrix eval_y;
};

/// Deterministic under (cfg, seed): every tensor is drawn from streams
/// derived from the seed, so rebuilding the task after a resume is exact.
TaskData make_teacher_student_task(const TaskConfig& cfg, std::uint64_t seed);

/// Layer weight shapes for the task dims: layer 0 is d x k, deeper layers
/// are d x d, so any d,k pair chains for any depth.
std::vector<std::pair<std::size_t, std::size_t>> layer_shapes(const TaskConfig& cfg);

} // namespace plora

#endif
