// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/analysis.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plora/errors.hpp"
#include "plora/svd.hpp"

namespace plora {

SpectrumReport spectrum_report(const Matrix& delta_w, double rel_tol, std::string layer_id) {
    if (rel_tol <= 0.0 || rel_tol >= 1.0) {
        throw NumericError("spectrum_report: rel_tol must lie in (0,1)");
    }
    SpectrumReport rep;
    rep.layer = std::move(layer_id);
    rep.rel_tol = rel_tol;
    const SvdResult r = svd(delta_w);
    rep.singular_values = r.s;
    const double smax = r.s.empty() ? 0.0 : r.s.front();
    rep.rank = 0;
    if (smax > 0.0) {
        for (double s : r.s) {
            if (s > rel_tol * smax) ++rep.rank;
        }
    }
    double fro = 0.0;
    for (double s : r.s) fro += s * s;
    rep.fro_norm = std::sqrt(fro);
    return rep;
}

SmoothedSeries smooth(std::span<const double> series, std::size_t window) {
    if (window < 1) throw NumericError("smooth: window must be >= 1");
    SmoothedSeries out;
    out.window = window;
    out.values.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t lo = (i + 1 >= window) ? i + 1 - window : 0;
        double s = 0.0;
        for (std::size_t j = lo; j <= i; ++j) s += series[j];
        out.values[i] = s / static_cast<double>(i - lo + 1);
    }
    return out;
}

namespace {

std::string grid_str(const std::vector<long>& steps) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) os << ",";
        if (i >= 8) {
            os << "... " << steps.size() << " steps";
            break;
        }
        os << steps[i];
    }
    os << "]";
    return os.str();
}

std::optional<long> first_step_reaching(const std::vector<long>& steps, const std::vector<double>& smoothed,
                                        double target) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (smoothed[i] <= target) return steps[i];
    }
    return std::nullopt;
}

} // namespace

CompareSummary compare_runs(const RunSeries& a, const RunSeries& b, std::size_t smooth_window,
                            double target_loss) {
    if (a.steps != b.steps) {
        throw NumericError("compare_runs: step grids differ: a=" + grid_str(a.steps) +
                           " b=" + grid_str(b.steps));
    }
    CompareSummary out;
    out.steps = a.steps;
    out.smoothed_a = smooth(a.train_loss, smooth_window).values;
    out.smoothed_b = smooth(b.train_loss, smooth_window).values;
    out.delta.resize(out.steps.size());
    for (std::size_t i = 0; i < out.steps.size(); ++i) {
        out.delta[i] = out.smoothed_a[i] - out.smoothed_b[i];
    }
    out.final_eval_a = a.final_eval_loss;
    out.final_eval_b = b.final_eval_loss;
    out.first_step_to_target_a = first_step_reaching(out.steps, out.smoothed_a, target_loss);
    out.first_step_to_target_b = first_step_reaching(out.steps, out.smoothed_b, target_loss);
    return out;
}

void write_loss_csv(const RunSeries& series, std::size_t smooth_window, const std::string& path) {
    const SmoothedSeries sm = smooth(series.train_loss, smooth_window);
    std::ofstream out(path);
    if (!out) throw IoError("cannot open csv for writing: " + path);
    out << "step,raw_loss,smoothed_loss,stage\n";
    char buf[64];
    for (std::size_t i = 0; i < series.steps.size(); ++i) {
        out << series.steps[i] << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", series.train_loss[i]);
        out << buf << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", sm.values[i]);
        out << buf << "," << series.stage[i] << "\n";
    }
    if (!out.flush()) throw IoError("failed writing csv: " + path);
}

void write_spectrum_ndjson(std::span<const SpectrumReport> reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open report for writing: " + path);
    for (const SpectrumReport& rep : reports) {
        nlohmann::ordered_json j;
        j["layer"] = rep.layer;
        j["rank"] = rep.rank;
        j["rel_tol"] = rep.rel_tol;
        j["fro_norm"] = rep.fro_norm;
        j["singular_values"] = rep.singular_values;
        out << j.dump() << "\n";
    }
    if (!out.flush()) throw IoError("failed writing report: " + path);
}

} // namespace plora
