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

#ifndef DUMPFTL_LEARNER_HPP_
#define DUMPFTL_LEARNER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dumpftl/model.hpp"

namespace dumpftl {

// Follow-The-Leader state: the cumulative reward of every action over the
// steps observed so far. At step t, counts(i, j) = sum_{s < t} B_s(i, j).
struct LearnerState {
  OffsetGrid grid;
  CountArray counts;
  std::int64_t step = 1;
  std::optional<OffsetPair> previous_action;

  // All-zero counts at step 1.
  static LearnerState Initial(OffsetGrid grid);

  bool operator==(const LearnerState& o) const {
    return grid == o.grid && step == o.step && previous_action == o.previous_action &&
           counts.rows() == o.counts.rows() && counts.cols() == o.counts.cols() &&
           (counts == o.counts).all();
  }
};

using PassHistory = std::vector<std::pair<PassEvents, GroundWindow>>;

namespace tie {

// Uniform over the leaders, drawn from a hash of (seed, step).
struct UniformRandom {
  std::uint64_t seed = 0;
};

// Keep the previous action while it leads; otherwise the smallest leader.
struct Stay {};

// See SafeMarginPick.
struct SafeMargin {
  PassHistory history;
  Duration dump_duration;
};

}  // namespace tie

using TieBreaker = std::variant<tie::UniformRandom, tie::Stay, tie::SafeMargin>;

enum class TieBreakerKind { kUniformRandom, kStay, kSafeMargin };

std::string_view Name(TieBreakerKind kind);
std::optional<TieBreakerKind> ParseTieBreakerKind(std::string_view name);

// Every action whose count equals the maximum, in grid order.
std::vector<OffsetPair> Leaders(const LearnerState& state);

OffsetPair FtlSelect(const LearnerState& state, const TieBreaker& tau);

// Adds the feedback bits to the counts, advances the step and remembers the
// chosen action. Throws std::invalid_argument if the feedback does not match
// the grid.
LearnerState Update(LearnerState state, const FeedbackMatrix& feedback,
                    const OffsetPair& chosen);

// Robust tie-breaking over recorded passes.
//
// The smallest offsets that would have worked on every past pass are
//   a_min = max_k (lock_start_k - usable_start_k)^+ and
//   l_min = max_k (usable_end_k - lock_end_k)^+.
// Leaders that succeed on every past pass are preferred (all leaders if none
// does). Among them, pick the one maximizing min(a - a_min, l - l_min); equal
// margins go to the smaller a + l, which keeps the dump as long as possible,
// and then to the lexicographically smaller pair.
OffsetPair SafeMarginPick(std::span<const OffsetPair> leaders,
                          const PassHistory& history, Duration dump_duration);

}  // namespace dumpftl

#endif  // DUMPFTL_LEARNER_HPP_
