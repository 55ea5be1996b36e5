// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_RNG_HPP
#define PLORA_RNG_HPP

#include <cstdint>

namespace plora {

/// Counter-based deterministic generator. The raw stream is splitmix64
/// evaluated at (seed, counter): word(i) = finalize(seed + (i+1) * GAMMA).
/// Because each word depends only on seed and index, any slice of the
/// stream can be produced out of order or in parallel, and the full state
/// is just the (seed, counter) pair, which checkpoints store verbatim.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    /// Next raw 64-bit word; advances the counter by one.
    std::uint64_t next_u64() { return word(counter_++); }

    /// Raw word at an absolute counter position. Does not advance.
    std::uint64_t word(std::uint64_t index) const { return finalize(seed_ + (index + 1) * kGamma); }

    /// Uniform double in (0, 1], mapped from the top 53 bits. Never zero,
    /// so it is safe under a logarithm.
    double next_uniform() { return uniform_at(counter_++); }

    double uniform_at(std::uint64_t index) const {
        return static_cast<double>((word(index) >> 11) + 1) * 0x1.0p-53;
    }

    /// Skip n raw words.
    void advance(std::uint64_t n) { counter_ += n; }

    /// Independent stream keyed by a tag; the parent is not advanced.
    SeededRng derive(std::uint64_t stream_tag) const {
        return SeededRng(finalize(seed_ ^ finalize(stream_tag * kGamma + 0x9E3779B97F4A7C15ull)));
    }

    static std::uint64_t finalize(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace plora

#endif
