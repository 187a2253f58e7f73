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

#include <gtest/gtest.h>

#include "dumpftl/eval.hpp"
#include "dumpftl/io.hpp"
#include "test_util.hpp"

namespace dumpftl {
namespace {

using testing::SecondsGrid;

BernoulliEnvironment Instance(std::initializer_list<std::initializer_list<double>> rows,
                              std::uint64_t seed = 0) {
  ProbArray p(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) p(i, j++) = v;
    ++i;
  }
  return BernoulliEnvironment(SecondsGrid(p.rows(), p.cols()), p, seed);
}

TEST(EmpiricalRegret, SingleStep) {
  RunRecord run;
  RunStep s;
  s.action = {Seconds(0), Seconds(0)};
  s.feedback = FeedbackMatrix{BitArray(1, 2)};
  s.feedback->bits << 0, 1;
  run.steps.push_back(s);
  const RegretReport r = EmpiricalRegret(run, SecondsGrid(1, 2));
  EXPECT_EQ(r.horizon, 1);
  EXPECT_EQ(r.best_fixed_action, (OffsetPair{Seconds(0), Seconds(1)}));
  EXPECT_EQ(r.best_fixed_reward, 1);
  EXPECT_EQ(r.learner_reward, 0);
  EXPECT_EQ(r.empirical_regret, 1);
  EXPECT_THROW(EmpiricalRegret(RunRecord{}, SecondsGrid(1, 2)), std::invalid_argument);
}

TEST(EmpiricalRegret, MatchesBruteForceWithSkips) {
  random::Stream rng(8);
  for (int k = 0; k < 300; ++k) {
    const OffsetGrid grid = SecondsGrid(rng.Int(1, 4), rng.Int(1, 4));
    RunRecord run;
    std::int64_t learner = 0, horizon = 0;
    for (int t = 0; t < rng.Int(1, 20); ++t) {
      RunStep s;
      s.action = grid.At({static_cast<std::size_t>(rng.Int(0, grid.rows() - 1)),
                          static_cast<std::size_t>(rng.Int(0, grid.cols() - 1))});
      if (!rng.Bernoulli(0.2)) {
        s.feedback = FeedbackMatrix{BitArray(grid.rows(), grid.cols())};
        for (Eigen::Index c = 0; c < s.feedback->bits.size(); ++c) {
          s.feedback->bits(c) = rng.Bernoulli(0.5);
        }
        const GridIndex idx = *grid.IndexOf(s.action);
        s.reward = s.feedback->bits(idx.aos, idx.los) != 0;
        learner += s.reward;
        ++horizon;
      }
      run.steps.push_back(s);
    }
    if (horizon == 0) continue;
    const RegretReport r = EmpiricalRegret(run, grid);
    EXPECT_EQ(r.horizon, horizon);
    EXPECT_EQ(r.best_fixed_reward, testing::BruteForceBestReward(run, grid));
    EXPECT_EQ(r.learner_reward, learner);
    EXPECT_EQ(r.empirical_regret, r.best_fixed_reward - learner);
  }
}

TEST(ExpectedRegret, ClosedForms) {
  EXPECT_DOUBLE_EQ(ExpectedRegret(Instance({{1.0, 1.0}, {1.0, 1.0}}), 4), 0.0);
  EXPECT_NEAR(ExpectedRegret(Instance({{0.3}}), 20), 0.0, 1e-12);
  // Step 1: mean reward 3/4. Step 2: the sure action leads or ties; 7/8.
  EXPECT_DOUBLE_EQ(ExpectedRegret(Instance({{1.0, 0.5}}), 2), 0.375);
  // One step is a uniform pick: max p - mean p.
  EXPECT_NEAR(ExpectedRegret(Instance({{0.9, 0.2}, {0.4, 0.1}}), 1), 0.9 - 0.4, 1e-15);
}

TEST(ExpectedRegret, GuardsEnumerationSize) {
  EXPECT_THROW(ExpectedRegret(Instance({{0.5, 0.5}, {0.5, 0.5}}), 6), EnumerationTooLargeError);
  EXPECT_NO_THROW(ExpectedRegret(Instance({{0.5, 0.5}, {0.5, 0.5}}), 5));
}

TEST(MistakeBound, CountsInteriorProbabilities) {
  ProbArray p(2, 3);
  p << 1.0, 0.0, 0.5, 0.25, 1.0, 0.0;
  EXPECT_EQ(MistakeBound(p), 3);
}

TEST(RunSynthetic, SureActionEventuallyLeads) {
  const BernoulliEnvironment env = Instance({{1.0, 0.5, 0.0}}, 3);
  const RunRecord run = RunSynthetic(env, tie::UniformRandom{1}, 200);
  EXPECT_EQ(run.steps.size(), 200u);
  EXPECT_LE(CountMistakes(run), 2);
  EXPECT_EQ(run.steps.back().next_action, (OffsetPair{Seconds(0), Seconds(0)}));
}

TEST(SampleSureActionInstance, Shape) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const BernoulliEnvironment env = SampleSureActionInstance(s, 5);
    EXPECT_GE(env.grid().rows(), 1u);
    EXPECT_LE(env.grid().rows(), 5u);
    EXPECT_LE(env.grid().cols(), 5u);
    EXPECT_EQ((env.probs() == 1.0).count(), 1);
  }
}

TEST(MonteCarloExpectedRegret, AgreesWithEnumeration) {
  const BernoulliEnvironment env = Instance({{1.0, 0.5}});
  const Estimate mc = MonteCarloExpectedRegret(env.grid(), env.probs(), 2, 200000, 5);
  EXPECT_NEAR(mc.mean, 0.375, 3.0 * mc.std_error);
}

MissionDataset Ron125() {
  using testing::DataPath;
  using testing::ReadText;
  const io::MissionConfig c =
      io::ParseMissionConfig(ReadText(DataPath("ron125/mission.cfg")));
  MissionDataset ds = io::MergeDataset(
      c.mission_id, c.orbits_per_cycle,
      io::ParseEventsCsv(ReadText(DataPath("ron125/events.csv"))),
      io::ParseTelemetryCsv(ReadText(DataPath("ron125/telemetry.csv"))));
  AnnotateBaseline(ds, c.baseline, c.dump_duration);
  return ds;
}

TEST(RunMission, Ron125Staircase) {
  const io::MissionConfig c = io::ParseMissionConfig(
      testing::ReadText(testing::DataPath("ron125/mission.cfg")));
  MissionRunConfig run;
  run.grid = c.Grid();
  run.initial_action = c.baseline;
  run.dump_duration = c.dump_duration;
  const MissionResult r = RunMission(Ron125(), run);
  const auto expected =
      io::ParseTraceCsv(testing::ReadText(testing::DataPath("ron125/expected_trace.csv")));
  EXPECT_EQ(TraceRows(r.runs), expected);
  EXPECT_EQ(r.report.baseline_failures, 5);
  EXPECT_EQ(r.report.learner_failures, 2);
  EXPECT_EQ(r.report.learner_failures_after_first, 1);
  EXPECT_EQ(r.schedule.commands.size(), 6u);
}

TEST(RunMission, NoCorruptionNoLosses) {
  GeneratorConfig g;
  g.corruption_probability = 0.0;
  const MissionResult r = RunMission(GenerateDataset(g), MissionRunConfig{});
  EXPECT_EQ(r.report.baseline_failures, 0);
  EXPECT_EQ(r.report.learner_failures, 0);
  EXPECT_FALSE(r.report.saved_fraction);
  EXPECT_TRUE(r.issues.empty());
}

TEST(RunMission, ForcedFirstActionAndJobsInvariance) {
  const MissionDataset ds = GenerateDataset(GeneratorConfig{});
  for (TieBreakerKind k :
       {TieBreakerKind::kUniformRandom, TieBreakerKind::kStay, TieBreakerKind::kSafeMargin}) {
    MissionRunConfig c;
    c.tie_breaker = k;
    const MissionResult one = RunMission(ds, c);
    c.jobs = 7;
    const MissionResult many = RunMission(ds, c);
    ASSERT_EQ(one.runs.size(), 127u);
    for (const RunRecord& run : one.runs) {
      EXPECT_EQ(run.steps.front().action, (OffsetPair{Seconds(30), Seconds(10)}));
    }
    EXPECT_EQ(TraceRows(one.runs), TraceRows(many.runs));
    EXPECT_EQ(one.schedule, many.schedule);
    EXPECT_EQ(one.report, many.report);
  }
}

TEST(RunMission, OrbitsAreIndependent) {
  const MissionDataset ds = GenerateDataset(GeneratorConfig{});
  const MissionResult full = RunMission(ds, MissionRunConfig{});
  MissionDataset only = ds;
  std::erase_if(only.records, [](const PassRecord& r) { return r.events.relative_orbit != 17; });
  const MissionResult part = RunMission(only, MissionRunConfig{});
  ASSERT_EQ(part.runs.size(), 1u);
  EXPECT_EQ(TraceRows(part.runs[0]), TraceRows(full.runs[16]));
}

TEST(RunOrbit, OffGridInitialActionThrows) {
  const MissionDataset ds = GenerateDataset(GeneratorConfig{});
  const ReplayEnvironment env(OffsetGrid::Default(), ds.ByOrbit().at(1), kDefaultDumpDuration);
  MissionRunConfig c;
  c.initial_action = {Millis(30500), Seconds(10)};
  EXPECT_THROW(RunOrbit(env, c), std::invalid_argument);
}

}  // namespace
}  // namespace dumpftl
