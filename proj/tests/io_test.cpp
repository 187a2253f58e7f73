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

#include "dumpftl/io.hpp"
#include "test_util.hpp"

namespace dumpftl::io {
namespace {

std::size_t ErrorLine(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

const std::string kEventsRow =
    "6,125,2021-02-10T13:00:00.000Z,2021-02-10T13:00:40.000Z,2021-02-10T13:01:15.000Z,"
    "2021-02-10T13:18:50.000Z,2021-02-10T13:18:20.000Z,2021-02-10T13:17:55.000Z";

TEST(EventsCsv, ParsesRow) {
  const auto ev = ParseEventsCsv(std::string(kEventsHeader) + "\r\n" + kEventsRow + "\r\n");
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].cycle, 6);
  EXPECT_EQ(ev[0].relative_orbit, 125);
  EXPECT_EQ(FormatIso8601(ev[0].usable_start()), "2021-02-10T13:01:15.000Z");
  EXPECT_EQ(FormatIso8601(ev[0].usable_end()), "2021-02-10T13:17:55.000Z");
}

TEST(EventsCsv, ErrorsCarryLineNumbers) {
  const std::string head = std::string(kEventsHeader) + "\n";
  EXPECT_EQ(ErrorLine([] { ParseEventsCsv("cycle,ron\n"); }), 1u);
  EXPECT_EQ(ErrorLine([&] { ParseEventsCsv(head + kEventsRow + "\n6,1,x\n"); }), 3u);
  EXPECT_EQ(ErrorLine([&] { ParseEventsCsv(head + kEventsRow + "\n" + kEventsRow + "\n"); }),
            3u);  // duplicate key
  std::string bad_ts = kEventsRow;
  bad_ts.replace(bad_ts.find("13:00:40.000Z"), 13, "13:00:40Z");
  EXPECT_EQ(ErrorLine([&] { ParseEventsCsv(head + bad_ts + "\n"); }), 2u);
  std::string swapped = kEventsRow;  // aosm after los0
  swapped.replace(swapped.find("2021-02-10T13:00:40.000Z"), 24, "2021-02-10T13:20:00.000Z");
  EXPECT_EQ(ErrorLine([&] { ParseEventsCsv(head + swapped + "\n"); }), 2u);
  EXPECT_EQ(ErrorLine([&] { ParseEventsCsv(head + "\n" + kEventsRow + "\n"); }), 2u);
}

TEST(TelemetryCsv, BlankFramesAreUnrecorded) {
  const auto t = ParseTelemetryCsv(std::string(kTelemetryHeader) +
                                   "\n8,125,,\n9,125,2021-03-12T06:56:51.700Z,"
                                   "2021-03-12T07:12:53.200Z\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_FALSE(t[0].recorded());
  EXPECT_TRUE(t[1].recorded());
  EXPECT_EQ(t[1].first_frame->epoch_millis % 1000, 700);
}

TEST(TelemetryCsv, Errors) {
  const std::string head = std::string(kTelemetryHeader) + "\n";
  EXPECT_EQ(ErrorLine([&] {
              ParseTelemetryCsv(head + "9,125,2021-03-12T07:12:53.200Z,2021-03-12T06:56:51.700Z\n");
            }),
            2u);
  EXPECT_EQ(ErrorLine([&] { ParseTelemetryCsv(head + "8,125,,\n8,125,,\n"); }), 3u);
  EXPECT_EQ(ErrorLine([&] { ParseTelemetryCsv(head + "x,125,,\n"); }), 2u);
}

TEST(MergeDataset, OrphanTelemetryRejected) {
  const auto ev = ParseEventsCsv(std::string(kEventsHeader) + "\n" + kEventsRow + "\n");
  std::vector<TelemetryEntry> tel{{7, 125, std::nullopt, std::nullopt}};
  EXPECT_THROW(MergeDataset("M", 127, ev, tel), std::invalid_argument);
  tel[0].cycle = 6;
  const MissionDataset ds = MergeDataset("M", 127, ev, tel);
  ASSERT_EQ(ds.records.size(), 1u);
  EXPECT_FALSE(ds.records[0].ground);
  EXPECT_EQ(ds.cycles, std::vector<int>{6});
}

TEST(Dataset, RoundTripThroughFiles) {
  GeneratorConfig c;
  c.missing_probability = 0.2;
  MissionDataset ds = GenerateDataset(c);
  const MissionDataset back =
      MergeDataset(ds.mission_id, ds.orbits_per_cycle,
                   ParseEventsCsv(EmitEventsCsv(EventsOf(ds))),
                   ParseTelemetryCsv(EmitTelemetryCsv(TelemetryOf(ds))));
  for (PassRecord& r : ds.records) r.baseline_outcome.reset();
  EXPECT_EQ(back, ds);
}

TEST(Schedule, RoundTrip) {
  Schedule s{"S6 test", {}};
  s.commands.push_back({6, 1, testing::At(150), testing::At(670), Seconds(30), Millis(10500)});
  s.commands.push_back({6, 2, Timestamp{1}, Timestamp{2}, Millis(1), Seconds(0)});
  s.commands.push_back({7, 1, testing::At(1), testing::At(2000), Seconds(120), Seconds(60)});
  const std::string text = EmitSchedule(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "# schedule mission_id=S6 test");
  EXPECT_EQ(ParseSchedule(text), s);
  EXPECT_EQ(ParseSchedule(EmitSchedule(Schedule{"x", {}})), (Schedule{"x", {}}));
}

TEST(Schedule, Errors) {
  EXPECT_EQ(ErrorLine([] { ParseSchedule(std::string(kScheduleHeader) + "\n"); }), 1u);
  const std::string head = "# schedule mission_id=M\n" + std::string(kScheduleHeader) + "\n";
  const std::string row =
      "6,1,2021-02-01T00:02:30.000Z,2021-02-01T00:01:00.000Z,30,10\n";  // start after stop
  EXPECT_EQ(ErrorLine([&] { ParseSchedule(head + row); }), 3u);
}

TEST(TraceCsv, RoundTrip) {
  std::vector<TraceRow> rows;
  rows.push_back({125, 1, 6, OffsetPair{Seconds(30), Seconds(13)}, false,
                  OffsetPair{Seconds(30), Seconds(10)}});
  rows.push_back({125, 2, 8, std::nullopt, std::nullopt, std::nullopt});
  rows.push_back({126, 1, 6, OffsetPair{Millis(500), Seconds(0)}, true,
                  OffsetPair{Millis(500), Seconds(0)}});
  const std::string text = EmitTraceCsv(rows);
  EXPECT_EQ(ParseTraceCsv(text), rows);
  EXPECT_NE(text.find("125,2,8,,,,,\n"), std::string::npos);
}

TEST(TraceCsv, RejectsBadReward) {
  const std::string text = std::string(kTraceHeader) + "\n1,1,6,30,10,2,30,10\n";
  EXPECT_EQ(ErrorLine([&] { ParseTraceCsv(text); }), 2u);
}

TEST(MissionConfig, RoundTripAndErrors) {
  MissionConfig c;
  c.mission_id = "RON125";
  c.grid_aos_max = Seconds(30);
  c.baseline = {Seconds(30), Millis(10500)};
  c.tie_breaker = TieBreakerKind::kStay;
  c.seed = 77;
  EXPECT_EQ(ParseMissionConfig(EmitMissionConfig(c)), c);
  EXPECT_EQ(ParseMissionConfig("# only comments\n\n"), MissionConfig{});
  EXPECT_EQ(ErrorLine([] { ParseMissionConfig("cycles = 2\nbogus = 1\n"); }), 2u);
  EXPECT_EQ(ErrorLine([] { ParseMissionConfig("cycles = 2\ncycles = 3\n"); }), 2u);
  EXPECT_EQ(ErrorLine([] { ParseMissionConfig("tie_breaker = best\n"); }), 1u);
  EXPECT_EQ(ErrorLine([] { ParseMissionConfig("dump_duration_s = 1.0005\n"); }), 1u);
  EXPECT_EQ(ErrorLine([] { ParseMissionConfig("no equals sign\n"); }), 1u);
}

TEST(Metrics, JsonFields) {
  SavedPassReport r;
  r.total_passes = 6;
  r.recorded_passes = 5;
  r.baseline_failures = 5;
  r.learner_failures = 2;
  r.learner_failures_after_first = 1;
  r.saved = 3;
  r.saved_fraction = 0.6;
  const std::string j = EmitMetrics(r, "M", TieBreakerKind::kSafeMargin);
  EXPECT_NE(j.find("\"saved_fraction\": 0.6"), std::string::npos);
  EXPECT_NE(j.find("\"tie_breaker\": \"safe-margin\""), std::string::npos);
}

}  // namespace
}  // namespace dumpftl::io
