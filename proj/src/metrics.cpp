// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/metrics.hpp"

#include <filesystem>

#include "plora/errors.hpp"

namespace plora {

MetricsWriter::MetricsWriter(const std::string& path, bool append)
    : out_(path, append ? std::ios::app : std::ios::trunc), path_(path) {
    if (!out_) throw IoError("cannot open metrics stream: " + path);
}

void MetricsWriter::emit(const nlohmann::ordered_json& record) {
    out_ << record.dump() << "\n";
    if (!out_.flush()) throw IoError("failed writing metrics stream: " + path_);
}

std::vector<MetricsEvent> read_metrics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read metrics stream: " + path);
    std::vector<MetricsEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError("bad NDJSON at " + path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        MetricsEvent ev;
        ev.kind = j.value("event", "");
        ev.step = j.value("step", 0L);
        ev.payload = std::move(j);
        events.push_back(std::move(ev));
    }
    return events;
}

RunSeries series_from_events(const std::vector<MetricsEvent>& events) {
    RunSeries series;
    int stage = 1;
    for (const MetricsEvent& ev : events) {
        if (ev.kind == "train_loss") {
            series.steps.push_back(ev.step);
            series.train_loss.push_back(ev.payload.at("loss").get<double>());
            series.stage.push_back(stage);
        } else if (ev.kind == "unload") {
            stage = ev.payload.at("stage").get<int>() + 1;
        } else if (ev.kind == "eval_loss") {
            series.final_eval_loss = ev.payload.at("loss").get<double>();
        }
    }
    return series;
}

void truncate_after_checkpoint(const std::string& path, long step, const std::string& ckpt_name) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read metrics stream: " + path);
    std::vector<std::string> kept;
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        kept.push_back(line);
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(line);
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        if (j.value("event", "") == "checkpoint" && j.value("step", -1L) == step &&
            j.value("path", "") == ckpt_name) {
            found = true;
            break;
        }
    }
    in.close();
    if (!found) {
        throw IoError("checkpoint event for " + ckpt_name + " at step " + std::to_string(step) +
                      " not found in " + path);
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot rewrite metrics stream: " + path);
        for (const std::string& l : kept) out << l << "\n";
        if (!out.flush()) throw IoError("failed rewriting metrics stream: " + path);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace plora
