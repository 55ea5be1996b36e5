// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_ANALYSIS_HPP
#define PLORA_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plora/matrix.hpp"

namespace plora {

/// Spectrum of one layer's total update: sorted singular values, the
/// numerical rank at the given tolerance, and the Frobenius norm.
struct SpectrumReport {
    std::string layer;
    std::vector<double> singular_values;
    int rank = 0;
    double fro_norm = 0.0;
    double rel_tol = 0.0;
};

SpectrumReport spectrum_report(const Matrix& delta_w, double rel_tol, std::string layer_id);

/// Trailing moving average; the first window-1 outputs average over the
/// available prefix. Output length equals input length.
struct SmoothedSeries {
    std::size_t window = 1;
    std::vector<double> values;
};

SmoothedSeries smooth(std::span<const double> series, std::size_t window);

/// Per-step loss series extracted from one run's metrics stream.
struct RunSeries {
    std::vector<long> steps;
    std::vector<double> train_loss;
    std::vector<int> stage; // stage the step trained in (1 when no unloads)
    std::optional<double> final_eval_loss;
};

/// Side-by-side summary of two runs on the same step grid.
struct CompareSummary {
    std::vector<long> steps;
    std::vector<double> smoothed_a;
    std::vector<double> smoothed_b;
    std::vector<double> delta; // smoothed_a - smoothed_b
    std::optional<double> final_eval_a;
    std::optional<double> final_eval_b;
    std::optional<long> first_step_to_target_a;
    std::optional<long> first_step_to_target_b;
};

/// Rejects (with both grids in the message) unless the step grids match.
CompareSummary compare_runs(const RunSeries& a, const RunSeries& b, std::size_t smooth_window,
                            double target_loss);

/// CSV with the fixed column order step,raw_loss,smoothed_loss,stage.
void write_loss_csv(const RunSeries& series, std::size_t smooth_window, const std::string& path);

/// One NDJSON record per report.
void write_spectrum_ndjson(std::span<const SpectrumReport> reports, const std::string& path);

} // namespace plora

#endif
