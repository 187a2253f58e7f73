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

#include "dumpftl/learner.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "dumpftl/environment.hpp"
#include "dumpftl/random.hpp"

namespace dumpftl {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

LearnerState LearnerState::Initial(OffsetGrid grid) {
  CountArray counts = CountArray::Zero(grid.rows(), grid.cols());
  return LearnerState{std::move(grid), std::move(counts), 1, std::nullopt};
}

std::string_view Name(TieBreakerKind kind) {
  switch (kind) {
    case TieBreakerKind::kUniformRandom:
      return "uniform";
    case TieBreakerKind::kStay:
      return "stay";
    case TieBreakerKind::kSafeMargin:
      return "safe-margin";
  }
  return "?";
}

std::optional<TieBreakerKind> ParseTieBreakerKind(std::string_view name) {
  for (auto k : {TieBreakerKind::kUniformRandom, TieBreakerKind::kStay,
                 TieBreakerKind::kSafeMargin}) {
    if (Name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<OffsetPair> Leaders(const LearnerState& state) {
  const std::int64_t best = state.counts.maxCoeff();
  std::vector<OffsetPair> out;
  for (std::size_t i = 0; i < state.grid.rows(); ++i) {
    for (std::size_t j = 0; j < state.grid.cols(); ++j) {
      if (state.counts(i, j) == best) out.push_back(state.grid.At({i, j}));
    }
  }
  return out;
}

OffsetPair FtlSelect(const LearnerState& state, const TieBreaker& tau) {
  const std::vector<OffsetPair> leaders = Leaders(state);
  if (leaders.size() == 1) return leaders.front();
  return std::visit(
      Overloaded{
          [&](const tie::UniformRandom& u) {
            const std::uint64_t word = random::KeyedWord(
                {u.seed, static_cast<std::uint64_t>(state.step)});
            return leaders[random::ToIndex(word, leaders.size())];
          },
          [&](const tie::Stay&) {
            if (state.previous_action &&
                std::binary_search(leaders.begin(), leaders.end(),
                                   *state.previous_action)) {
              return *state.previous_action;
            }
            return leaders.front();
          },
          [&](const tie::SafeMargin& s) {
            return SafeMarginPick(leaders, s.history, s.dump_duration);
          },
      },
      tau);
}

LearnerState Update(LearnerState state, const FeedbackMatrix& feedback,
                    const OffsetPair& chosen) {
  if (!feedback.Matches(state.grid)) {
    throw std::invalid_argument("feedback shape does not match the learner grid");
  }
  state.counts += feedback.bits.cast<std::int64_t>();
  ++state.step;
  state.previous_action = chosen;
  return state;
}

OffsetPair SafeMarginPick(std::span<const OffsetPair> leaders,
                          const PassHistory& history, Duration dump_duration) {
  if (leaders.empty()) throw std::invalid_argument("leader set must be non-empty");
  if (leaders.size() == 1) return leaders.front();

  OffsetPair floor{};
  for (const auto& [events, ground] : history) {
    const OffsetPair req = RequiredOffsets(events, ground);
    floor.aos_offset = std::max(floor.aos_offset, req.aos_offset);
    floor.los_offset = std::max(floor.los_offset, req.los_offset);
  }

  std::vector<OffsetPair> candidates;
  for (const OffsetPair& p : leaders) {
    const bool ok = std::all_of(history.begin(), history.end(), [&](const auto& h) {
      return SuccessPredicate(h.first, h.second, p.aos_offset, p.los_offset,
                              dump_duration);
    });
    if (ok) candidates.push_back(p);
  }
  if (candidates.empty()) candidates.assign(leaders.begin(), leaders.end());

  // Larger key wins: (worst margin, -(a + l), then smaller (a, l)).
  auto key = [&](const OffsetPair& p) {
    const Duration margin = std::min(p.aos_offset - floor.aos_offset,
                                     p.los_offset - floor.los_offset);
    return std::make_tuple(margin, -(p.aos_offset + p.los_offset));
  };
  OffsetPair best = candidates.front();
  for (const OffsetPair& p : candidates) {
    const auto kp = key(p);
    const auto kb = key(best);
    if (kp > kb || (kp == kb && p < best)) best = p;
  }
  return best;
}

}  // namespace dumpftl
