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

#ifndef DUMPFTL_EVAL_HPP_
#define DUMPFTL_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dumpftl/dataset.hpp"
#include "dumpftl/environment.hpp"
#include "dumpftl/learner.hpp"
#include "dumpftl/scheduler.hpp"

namespace dumpftl {

struct RunStep {
  int cycle = 0;
  OffsetPair action;
  std::optional<FeedbackMatrix> feedback;  // nullopt: unrecorded, skipped
  bool reward = false;                     // bit at `action`; false when skipped
  OffsetPair next_action;                  // selection in force after this step

  bool skipped() const { return !feedback.has_value(); }
};

// One learner's transcript. For replay, one per relative orbit with the cycle
// as the time index; for synthetic runs, relative_orbit is 0 and cycle = t.
struct RunRecord {
  int relative_orbit = 0;
  std::vector<RunStep> steps;
};

struct RegretReport {
  std::int64_t horizon = 0;
  OffsetPair best_fixed_action;
  std::int64_t best_fixed_reward = 0;
  std::int64_t learner_reward = 0;
  std::int64_t empirical_regret = 0;  // may be negative on a single path
  std::optional<double> expected_regret;
};

// Pathwise regret against the best fixed action in hindsight (ties go to the
// first action in grid order). Skipped steps do not count toward the horizon.
// Throws std::invalid_argument on an empty transcript.
RegretReport EmpiricalRegret(const RunRecord& run, const OffsetGrid& grid);

class EnumerationTooLargeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxEnumerationCells = 20;

// Exact T * max p - E[sum_t B_t(A_t, L_t)] for FTL with uniformly random tie
// breaking, by enumerating every feedback table. Throws
// EnumerationTooLargeError when |grid| * horizon > kMaxEnumerationCells.
double ExpectedRegret(const BernoulliEnvironment& env, int horizon);

// Runs FTL for `horizon` steps of the synthetic protocol.
RunRecord RunSynthetic(const BernoulliEnvironment& env, const TieBreaker& tau,
                       std::int64_t horizon);

// Zero-reward rounds in a transcript.
std::int64_t CountMistakes(const RunRecord& run);

// Upper bound on zero-reward rounds when some action has p = 1:
// 1 + |{(a, l) : 0 < p(a, l) < 1}|.
std::int64_t MistakeBound(const ProbArray& probs);

// Random synthetic instance with a rows x cols grid (each drawn in
// [1, max_dim]) and exactly one action with p = 1. Other actions get p = 0
// with probability 1/4, otherwise p uniform on (0, 1).
BernoulliEnvironment SampleSureActionInstance(std::uint64_t seed, int max_dim);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of the FTL expected regret under uniform tie breaking:
// the mean of T * max p - sum_t B_t(A_t, L_t) over independent runs.
Estimate MonteCarloExpectedRegret(const OffsetGrid& grid, const ProbArray& probs,
                                  int horizon, std::int64_t runs, std::uint64_t seed);

struct SavedPassReport {
  std::int64_t total_passes = 0;
  std::int64_t recorded_passes = 0;
  std::int64_t baseline_failures = 0;
  std::int64_t learner_failures = 0;
  // Learner failures excluding each orbit's first (forced) recorded step.
  std::int64_t learner_failures_after_first = 0;
  std::int64_t saved = 0;  // baseline_failures - learner_failures
  std::optional<double> saved_fraction;

  bool operator==(const SavedPassReport&) const = default;
};

struct MissionRunConfig {
  OffsetGrid grid = OffsetGrid::Default();
  TieBreakerKind tie_breaker = TieBreakerKind::kSafeMargin;
  Duration dump_duration = kDefaultDumpDuration;
  OffsetPair initial_action{Seconds(30), Seconds(10)};
  std::uint64_t seed = 0;  // only used by uniform tie breaking
  int jobs = 1;
};

struct MissionResult {
  std::vector<RunRecord> runs;  // ascending relative orbit
  Schedule schedule;
  std::vector<ScheduleIssue> issues;
  SavedPassReport report;
};

// Replays one relative orbit. The first selection is forced to
// initial_action; unrecorded passes are scheduled but give no feedback and
// do not advance the learner. Throws std::invalid_argument if the initial
// action is not on the grid.
RunRecord RunOrbit(const ReplayEnvironment& env, const MissionRunConfig& config);

// One independent learner per relative orbit, optionally across `jobs`
// threads; the result does not depend on `jobs`.
MissionResult RunMission(const MissionDataset& dataset, const MissionRunConfig& config);

// Aggregates the saved-pass counts from finished runs and the dataset's
// baseline outcomes.
SavedPassReport SummarizeMission(const MissionDataset& dataset,
                                 const std::vector<RunRecord>& runs);

// One row per step of a replay transcript. The offsets columns are the
// selection in force after the step; `played` is what the step used.
struct TraceRow {
  int relative_orbit = 0;
  int cycle_step = 0;  // 1-based position in the orbit's pass sequence
  int cycle = 0;
  std::optional<OffsetPair> offsets;  // empty on skipped steps
  std::optional<bool> reward;
  std::optional<OffsetPair> played;

  bool operator==(const TraceRow&) const = default;
};

std::vector<TraceRow> TraceRows(const RunRecord& run);
std::vector<TraceRow> TraceRows(const std::vector<RunRecord>& runs);

}  // namespace dumpftl

#endif  // DUMPFTL_EVAL_HPP_
