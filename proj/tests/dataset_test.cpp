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

#include "dumpftl/dataset.hpp"
#include "test_util.hpp"

namespace dumpftl {
namespace {

std::int64_t BaselineFailures(const MissionDataset& ds) {
  std::int64_t n = 0;
  for (const PassRecord& r : ds.records) n += r.baseline_outcome == false ? 1 : 0;
  return n;
}

TEST(GenerateDataset, ShapeAndValidity) {
  const MissionDataset ds = GenerateDataset(GeneratorConfig{});
  EXPECT_EQ(ds.records.size(), 762u);
  EXPECT_EQ(ds.cycles, (std::vector<int>{6, 7, 8, 9, 10, 11}));
  EXPECT_NO_THROW(ds.Validate());
  for (const PassRecord& r : ds.records) {
    EXPECT_FALSE(r.events.Violation());
    ASSERT_TRUE(r.ground);
    EXPECT_LT(r.ground->lock_start, r.ground->lock_end);
    EXPECT_TRUE(r.baseline_outcome.has_value());
  }
  const auto by_orbit = ds.ByOrbit();
  ASSERT_EQ(by_orbit.size(), 127u);
  for (const auto& [ron, passes] : by_orbit) EXPECT_EQ(passes.size(), 6u);
}

TEST(GenerateDataset, NoCorruptionNoBaselineFailures) {
  GeneratorConfig c;
  c.corruption_probability = 0.0;
  for (std::uint64_t seed : {0u, 1u, 2u, 40u}) {
    c.seed = seed;
    EXPECT_EQ(BaselineFailures(GenerateDataset(c)), 0) << seed;
  }
}

TEST(GenerateDataset, CalibratedSeed) {
  GeneratorConfig c;
  c.seed = kCalibratedSeed;
  EXPECT_EQ(BaselineFailures(GenerateDataset(c)), kCalibratedBaselineFailures);
  // No smaller seed hits the target.
  for (std::uint64_t s = 0; s < kCalibratedSeed; ++s) {
    c.seed = s;
    EXPECT_NE(BaselineFailures(GenerateDataset(c)), kCalibratedBaselineFailures) << s;
  }
}

TEST(GenerateDataset, Deterministic) {
  GeneratorConfig c;
  c.seed = 123;
  c.missing_probability = 0.1;
  EXPECT_EQ(GenerateDataset(c), GenerateDataset(c));
  GeneratorConfig d = c;
  d.seed = 124;
  EXPECT_NE(GenerateDataset(c), GenerateDataset(d));
}

TEST(GenerateDataset, MissingPasses) {
  GeneratorConfig c;
  c.missing_probability = 1.0;
  for (const PassRecord& r : GenerateDataset(c).records) {
    EXPECT_FALSE(r.ground);
    EXPECT_FALSE(r.baseline_outcome);
  }
}

TEST(GeneratorConfig, Validation) {
  GeneratorConfig c;
  c.corruption_probability = 1.5;
  EXPECT_THROW(GenerateDataset(c), std::invalid_argument);
  c = {};
  c.cycles = 0;
  EXPECT_THROW(GenerateDataset(c), std::invalid_argument);
  c = {};
  c.usable_min = Seconds(1400);
  EXPECT_THROW(GenerateDataset(c), std::invalid_argument);
}

TEST(MissionDataset, ValidateCatchesBadRecords) {
  MissionDataset ds = GenerateDataset(GeneratorConfig{});
  std::swap(ds.records[0], ds.records[1]);
  EXPECT_THROW(ds.Validate(), std::invalid_argument);
  ds = GenerateDataset(GeneratorConfig{});
  ds.records[0].events.relative_orbit = 128;
  EXPECT_THROW(ds.Validate(), std::invalid_argument);
}

TEST(AnnotateBaseline, RecomputesOutcomes) {
  MissionDataset ds = GenerateDataset(GeneratorConfig{});
  const MissionDataset original = ds;
  for (PassRecord& r : ds.records) r.baseline_outcome.reset();
  AnnotateBaseline(ds, {Seconds(30), Seconds(10)}, kDefaultDumpDuration);
  EXPECT_EQ(ds, original);
}

}  // namespace
}  // namespace dumpftl
