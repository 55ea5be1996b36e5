// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/task.hpp"

#include <cmath>

namespace plora {

namespace {

// Derived stream tags; changing these invalidates recorded goldens.
constexpr std::uint64_t kStudentStream = 1;
constexpr std::uint64_t kTeacherStream = 2;
constexpr std::uint64_t kDataStream = 3;
constexpr std::uint64_t kNoiseStream = 4;

Matrix rank_limited_perturbation(std::size_t rows, std::size_t cols, std::size_t rank, SeededRng& rng) {
    Matrix delta(rows, cols);
    for (std::size_t t = 0; t < rank; ++t) {
        const Matrix u = gaussian_matrix(rows, 1, 1.0, rng);
        const Matrix v = gaussian_matrix(1, cols, 1.0, rng);
        delta = add(delta, matmul(u, v));
    }
    const double norm = frobenius_norm(delta);
    if (norm > 0.0) delta = scale(delta, 1.0 / norm);
    return delta;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> layer_shapes(const TaskConfig& cfg) {
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    shapes.reserve(cfg.depth);
    shapes.emplace_back(cfg.d, cfg.k);
    for (std::size_t i = 1; i < cfg.depth; ++i) shapes.emplace_back(cfg.d, cfg.d);
    return shapes;
}

TaskData make_teacher_student_task(const TaskConfig& cfg, std::uint64_t seed) {
    if (cfg.target_update_rank > std::min(cfg.d, cfg.k)) {
        throw ConfigError("target_update_rank exceeds min(d,k)");
    }
    const SeededRng root(seed);
    SeededRng student_rng = root.derive(kStudentStream);
    SeededRng teacher_rng = root.derive(kTeacherStream);
    SeededRng data_rng = root.derive(kDataStream);
    SeededRng noise_rng = root.derive(kNoiseStream);

    TaskData task;
    for (auto [rows, cols] : layer_shapes(cfg)) {
        LinearLayer layer;
        layer.w = gaussian_matrix(rows, cols, 1.0 / std::sqrt(static_cast<double>(cols)), student_rng);
        task.student.layers.push_back(std::move(layer));
    }
    task.student.validate();

    task.teacher = task.student;
    if (cfg.target_update_rank > 0) {
        for (LinearLayer& layer : task.teacher.layers) {
            layer.w = add(layer.w, rank_limited_perturbation(layer.w.rows(), layer.w.cols(),
                                                             cfg.target_update_rank, teacher_rng));
        }
    }

    task.train_x = gaussian_matrix(cfg.k, cfg.n_train, 1.0, data_rng);
    task.eval_x = gaussian_matrix(cfg.k, cfg.n_val, 1.0, data_rng);
    task.train_y = network_forward(task.teacher, task.train_x).first;
    task.eval_y = network_forward(task.teacher, task.eval_x).first;
    if (cfg.noise_std > 0.0) {
        task.train_y = add(task.train_y, gaussian_matrix(cfg.d, cfg.n_train, cfg.noise_std, noise_rng));
        task.eval_y = add(task.eval_y, gaussian_matrix(cfg.d, cfg.n_val, cfg.noise_std, noise_rng));
    }
    return task;
}

} // namespace plora
