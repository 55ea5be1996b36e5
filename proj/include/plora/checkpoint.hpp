// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_CHECKPOINT_HPP
#define PLORA_CHECKPOINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "plora/config.hpp"
#include "plora/matrix.hpp"

namespace plora {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Work counters carried in the stream's terminal event and in checkpoints,
/// so a resumed run reports the same totals as an uninterrupted one.
struct RunCounters {
    long forwards = 0;
    long backwards = 0;
    long optim_steps = 0;
    long eval_forwards = 0;
};

struct NamedTensor {
    std::string name;
    Matrix value;
};

/// Everything a run needs to continue bit-identically: config echo, progress
/// counters, controller and optimizer scalars, the rng (seed, counter) pair,
/// and every parameter/moment tensor.
///
/// File layout (bit-exact):
///   bytes 0..3   magic "PLCK"
///   bytes 4..7   u32 little-endian format version
///   bytes 8..11  u32 little-endian manifest length L
///   bytes 12..   UTF-8 JSON manifest of L bytes (config echo, scalars,
///                tensor directory with names/shapes/offsets)
///   then         raw tensor blobs, row-major 64-bit little-endian IEEE-754,
///                at the offsets the directory lists (relative to blob start)
struct CheckpointData {
    RunConfig config;
    long step = 0;
    long epoch = 0;
    int completed_stages = 0;
    long last_unload_step = 0;
    long optim_step = 0;
    RunCounters counters;
    std::uint64_t rng_seed = 0;
    std::uint64_t rng_counter = 0;
    std::string initial_digest;
    std::vector<NamedTensor> tensors;

    const Matrix* find_tensor(const std::string& name) const;
};

void write_checkpoint(const CheckpointData& ckpt, const std::string& path);

/// Validates magic, version, directory offsets and per-tensor byte lengths;
/// failures name the offending tensor.
CheckpointData read_checkpoint(const std::string& path);

/// FNV-1a 64 over the tensor blobs in directory order, as a hex string.
/// Stored by every checkpoint of a run so resume can prove it continues the
/// same initial weights.
std::string tensor_digest(const std::vector<NamedTensor>& tensors);

} // namespace plora

#endif
