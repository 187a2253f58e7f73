// Copyright 2026 The dumpftl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUMPFTL_ENVIRONMENT_HPP_
#define DUMPFTL_ENVIRONMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dumpftl/model.hpp"

namespace dumpftl {

// Default dump length: the average 14 minute data dump.
inline constexpr Duration kDefaultDumpDuration = Seconds(840);

// Synthetic environment: every action (a, l) succeeds independently with
// probability probs(i, j) at every step.
class BernoulliEnvironment {
 public:
  // Throws std::invalid_argument on a shape mismatch or a probability
  // outside [0, 1].
  BernoulliEnvironment(OffsetGrid grid, ProbArray probs, std::uint64_t seed);

  const OffsetGrid& grid() const { return grid_; }
  const ProbArray& probs() const { return probs_; }
  std::uint64_t seed() const { return seed_; }

 private:
  OffsetGrid grid_;
  ProbArray probs_;
  std::uint64_t seed_;
};

// Samples B_t(a, l) for every cell. Each bit comes from a hash of
// (seed, t, aos_index, los_index), so the result is a pure function of its
// arguments. Requires t >= 1.
FeedbackMatrix BernoulliStep(const BernoulliEnvironment& env, std::int64_t t);

// A dump commanded over [usable_start + a, usable_end - l] succeeds iff it
// lies inside the lock interval and lasts at least dump_duration.
bool SuccessPredicate(const PassEvents& events, const GroundWindow& ground,
                      Duration aos_offset, Duration los_offset,
                      Duration dump_duration);

// The required offsets implied by one recorded pass: how far the lock
// started after the usable start, and ended before the usable end. Both are
// clamped at zero.
OffsetPair RequiredOffsets(const PassEvents& events, const GroundWindow& ground);

// Deterministic environment over the recorded passes of one relative orbit.
class ReplayEnvironment {
 public:
  // Throws std::invalid_argument unless passes are sorted by cycle and share
  // a single relative orbit.
  ReplayEnvironment(OffsetGrid grid, std::vector<PassRecord> passes,
                    Duration dump_duration);

  const OffsetGrid& grid() const { return grid_; }
  const std::vector<PassRecord>& passes() const { return passes_; }
  Duration dump_duration() const { return dump_duration_; }

 private:
  OffsetGrid grid_;
  std::vector<PassRecord> passes_;
  Duration dump_duration_;
};

// The full success matrix for one pass, or nullopt for an unrecorded pass.
// Throws std::out_of_range on a bad index.
std::optional<FeedbackMatrix> ReplayFeedback(const ReplayEnvironment& env,
                                             std::size_t pass_index);

// Same matrix for a loose (events, ground) pair.
FeedbackMatrix SuccessMatrix(const OffsetGrid& grid, const PassEvents& events,
                             const GroundWindow& ground, Duration dump_duration);

}  // namespace dumpftl

#endif  // DUMPFTL_ENVIRONMENT_HPP_
