// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_METRICS_HPP
#define PLORA_METRICS_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plora/analysis.hpp"

namespace plora {

/// One NDJSON line: {"event": <kind>, "step": N, ...payload}.
struct MetricsEvent {
    std::string kind;
    long step = 0;
    nlohmann::ordered_json payload; // full record including kind and step
};

/// Append-only NDJSON writer; every line is flushed so the stream is
/// tail-able while a run is in flight.
class MetricsWriter {
  public:
    MetricsWriter() = default;
    MetricsWriter(const std::string& path, bool append);

    bool is_open() const { return out_.is_open(); }
    void emit(const nlohmann::ordered_json& record);

  private:
    std::ofstream out_;
    std::string path_;
};

std::vector<MetricsEvent> read_metrics(const std::string& path);

/// Per-step training series (with stages derived from unload events) plus
/// the last eval loss; input to smoothing, CSV export and run comparison.
RunSeries series_from_events(const std::vector<MetricsEvent>& events);

/// Drop every line after the checkpoint event matching (step, filename);
/// used by resume so the re-executed tail overwrites any stale suffix.
void truncate_after_checkpoint(const std::string& path, long step, const std::string& ckpt_name);

} // namespace plora

#endif
