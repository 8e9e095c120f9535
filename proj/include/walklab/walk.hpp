// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "walklab/params.hpp"
#include "walklab/rng.hpp"

namespace walklab {

/// Positions S_0..S_h of one walk, index = time.
using PathRecord = std::vector<std::int64_t>;

/// Random step source. A value type: copying it forks the exact sequence.
/// Identical (seed, stream_id, params) always reproduce the same steps.
class StepStream {
  public:
    StepStream(const WalkParams& params, std::uint64_t seed, std::uint64_t stream_id)
        : rng_(seed, stream_id),
          seed_(seed),
          stream_id_(stream_id),
          position_(params.start) {}

    /// Draw one step: +1 with probability p, else -1. Advances clock and
    /// position.
    int advance(const WalkParams& params) {
        const int step = rng_.next_unit() < params.p ? 1 : -1;
        position_ += step;
        ++clock_;
        return step;
    }

    std::int64_t position() const { return position_; }
    std::uint64_t clock() const { return clock_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    RandomStream rng_;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::int64_t position_ = 0;
    std::uint64_t clock_ = 0;
};

/// Deterministic step source replaying an explicit +/-1 list. Test fixture
/// for hand-traced paths; also selectable from the CLI.
class ReplayStream {
  public:
    ReplayStream(std::vector<int> steps, std::int64_t start = 0)
        : steps_(std::move(steps)), position_(start) {
        for (int s : steps_) {
            if (s != 1 && s != -1) throw std::invalid_argument("replay steps must be +1 or -1");
        }
    }

    int advance(const WalkParams&) {
        if (next_ >= steps_.size()) throw std::out_of_range("replay stream exhausted");
        const int step = steps_[next_++];
        position_ += step;
        ++clock_;
        return step;
    }

    std::size_t remaining() const { return steps_.size() - next_; }
    std::int64_t position() const { return position_; }
    std::uint64_t clock() const { return clock_; }

  private:
    std::vector<int> steps_;
    std::size_t next_ = 0;
    std::int64_t position_ = 0;
    std::uint64_t clock_ = 0;
};

/// Spec operation name for the sampling step.
template <class Stream>
int next_step(Stream& stream, const WalkParams& params) {
    return stream.advance(params);
}

/// Drive a stream for up to `max_steps` steps, calling visit(n, S_n) for
/// n = 1, 2, ... The visitor may return bool; returning false stops early.
template <class Stream, class Visit>
std::uint64_t walk_steps(Stream& stream, const WalkParams& params, std::uint64_t max_steps,
                         Visit&& visit) {
    for (std::uint64_t n = 1; n <= max_steps; ++n) {
        stream.advance(params);
        if constexpr (std::is_void_v<decltype(visit(n, stream.position()))>) {
            visit(n, stream.position());
        } else {
            if (!visit(n, stream.position())) return n;
        }
    }
    return max_steps;
}

inline constexpr std::uint64_t kDefaultPathCap = std::uint64_t{1} << 24;

/// Materialize S_0..S_horizon. Streaming callers should prefer walk_steps;
/// horizons beyond `memory_cap` positions are refused.
template <class Stream>
PathRecord run_path(Stream& stream, const WalkParams& params, std::uint64_t horizon,
                    std::uint64_t memory_cap = kDefaultPathCap) {
    if (horizon + 1 > memory_cap) {
        throw std::length_error("path horizon exceeds the configured memory cap");
    }
    PathRecord path;
    path.reserve(horizon + 1);
    path.push_back(stream.position());
    walk_steps(stream, params, horizon,
               [&](std::uint64_t, std::int64_t site) { path.push_back(site); });
    return path;
}

inline PathRecord run_path(const WalkParams& params, std::uint64_t seed, std::uint64_t stream_id,
                           std::uint64_t horizon, std::uint64_t memory_cap = kDefaultPathCap) {
    StepStream stream(params, seed, stream_id);
    return run_path(stream, params, horizon, memory_cap);
}

}  // namespace walklab
