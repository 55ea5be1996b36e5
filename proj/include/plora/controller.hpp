// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_CONTROLLER_HPP
#define PLORA_CONTROLLER_HPP

#include <optional>
#include <string>
#include <vector>

#include "plora/model.hpp"
#include "plora/optim.hpp"
#include "plora/svd.hpp"

namespace plora {

/// How a momentum unload treats the retained adapter.
///   forward_preserving: w += (1-m)*b*a, b *= m, a unchanged. The effective
///     weight w + b*a is unchanged, so the merge is a pure reparametrization.
///   paper_literal: w += (1-m)*b*a, b *= m, a *= m. The residual adapter
///     contributes m^2*b*a, shifting the effective weight by (m^2-m)*b*a.
enum class UnloadMode {
    forward_preserving,
    paper_literal,
};

std::string to_string(UnloadMode mode);
UnloadMode unload_mode_from_string(const std::string& s);

struct PloraConfig {
    long unload_interval_steps = 500;
    double momentum = 0.0;
    UnloadMode mode = UnloadMode::forward_preserving;
    std::optional<int> total_stages_hint;

    void validate() const;
};

/// Bookkeeping captured at each unload: the adapter mass that was merged and
/// the cumulative rank of the total update so far, per adapted layer.
struct StageRecord {
    int stage_index = 0;
    long steps_in_stage = 0;
    std::vector<double> ba_fro_per_layer;
    std::vector<int> delta_rank_per_layer;
    std::vector<double> delta_fro_per_layer;
};

/// True exactly at positive multiples of the interval.
bool should_unload(long step, long interval_steps);

/// Merge one layer's adapter into its backbone per the mode above. With
/// m = 0 the adapter is fully reinitialized (b zero, a fresh Gaussian);
/// with m > 0 the scaled adapter survives and a is never re-randomized.
void unload_layer(LinearLayer& layer, double momentum, UnloadMode mode, SeededRng& rng);

/// Effective weight w + b*a (just w when no adapter is present).
Matrix effective_weight(const LinearLayer& layer);

/// Per-layer difference of effective weights between two architecturally
/// identical networks; in-flight adapter mass is included on both sides.
std::vector<Matrix> cumulative_update(const Network& net_now, const Network& net_at_start);

/// Drives the staged unload protocol: decides unload points, merges adapters,
/// resets optimizer and scheduler state, and numbers the stages 1..T.
class PloraController {
  public:
    explicit PloraController(PloraConfig cfg);

    bool should_unload(long step) const { return plora::should_unload(step, cfg_.unload_interval_steps); }

    /// Runs the full unload + reinit protocol at `step` and appends the
    /// resulting StageRecord. `initial` supplies the W_0 baseline for the
    /// cumulative rank snapshot.
    const StageRecord& unload_and_reinit(Network& net, const Network& initial, OptimState& optim,
                                         ConstantSchedule& sched, SeededRng& rng, long step,
                                         double rank_tol = kDefaultRankTol);

    const PloraConfig& config() const { return cfg_; }
    const std::vector<StageRecord>& records() const { return records_; }
    int completed_stages() const { return completed_stages_; }
    /// Stage currently being trained (1-based).
    int current_stage() const { return completed_stages_ + 1; }
    long last_unload_step() const { return last_unload_step_; }

    /// Restore the counters from a checkpoint; records of past stages live
    /// in the metrics stream, not in memory.
    void restore(int completed_stages, long last_unload_step);

  private:
    PloraConfig cfg_;
    int completed_stages_ = 0;
    long last_unload_step_ = 0;
    std::vector<StageRecord> records_;
};

} // namespace plora

#endif
