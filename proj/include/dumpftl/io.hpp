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

#ifndef DUMPFTL_IO_HPP_
#define DUMPFTL_IO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dumpftl/dataset.hpp"
#include "dumpftl/eval.hpp"
#include "dumpftl/learner.hpp"
#include "dumpftl/scheduler.hpp"

// File formats. All text is '\n'-terminated; parsers also accept "\r\n".
//
//   telemetry CSV   cycle,ron,first_frame_utc,last_frame_utc
//   events CSV      cycle,ron,aos0,aosm,aos5,los0,losm,los5
//   schedule CSV    "# schedule mission_id=<id>" then
//                   cycle,ron,start_utc,stop_utc,aos_offset_s,los_offset_s
//   trace CSV       ron,cycle_step,cycle,aos_offset_s,los_offset_s,reward,
//                   played_aos_offset_s,played_los_offset_s
//   mission config  "key = value" lines, '#' comments
//
// Timestamps are ISO-8601 UTC with milliseconds; offsets are decimal seconds.
namespace dumpftl::io {

inline constexpr std::string_view kTelemetryHeader =
    "cycle,ron,first_frame_utc,last_frame_utc";
inline constexpr std::string_view kEventsHeader = "cycle,ron,aos0,aosm,aos5,los0,losm,los5";
inline constexpr std::string_view kScheduleHeader =
    "cycle,ron,start_utc,stop_utc,aos_offset_s,los_offset_s";
inline constexpr std::string_view kTraceHeader =
    "ron,cycle_step,cycle,aos_offset_s,los_offset_s,reward,played_aos_offset_s,"
    "played_los_offset_s";

// Reported with the 1-based line number of the offending input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct TelemetryEntry {
  int cycle = 0;
  int relative_orbit = 0;
  std::optional<Timestamp> first_frame;
  std::optional<Timestamp> last_frame;

  // Both frame times present.
  bool recorded() const { return first_frame && last_frame; }

  bool operator==(const TelemetryEntry&) const = default;
};

std::vector<TelemetryEntry> ParseTelemetryCsv(std::string_view text);
std::string EmitTelemetryCsv(const std::vector<TelemetryEntry>& entries);

std::vector<PassEvents> ParseEventsCsv(std::string_view text);
std::string EmitEventsCsv(const std::vector<PassEvents>& events);

// Joins events and telemetry on (cycle, ron). Throws std::invalid_argument
// naming any telemetry key without events. Baseline outcomes are left unset.
MissionDataset MergeDataset(std::string mission_id, int orbits_per_cycle,
                            std::vector<PassEvents> events,
                            const std::vector<TelemetryEntry>& telemetry);

// Splits a dataset back into its two files' contents. Unrecorded passes get a
// telemetry row with blank frame fields.
std::vector<PassEvents> EventsOf(const MissionDataset& dataset);
std::vector<TelemetryEntry> TelemetryOf(const MissionDataset& dataset);

// Settings shared by generation and replay.
struct MissionConfig {
  std::string mission_id = "S6-SYNTH";
  int orbits_per_cycle = 127;
  int first_cycle = 6;
  int cycles = 6;
  std::uint64_t seed = kCalibratedSeed;
  Duration grid_aos_min = Seconds(0);
  Duration grid_aos_max = Seconds(120);
  Duration grid_aos_step = Seconds(1);
  Duration grid_los_min = Seconds(0);
  Duration grid_los_max = Seconds(60);
  Duration grid_los_step = Seconds(1);
  OffsetPair baseline{Seconds(30), Seconds(10)};
  Duration dump_duration = kDefaultDumpDuration;
  TieBreakerKind tie_breaker = TieBreakerKind::kSafeMargin;

  OffsetGrid Grid() const;
  bool operator==(const MissionConfig&) const = default;
};

// Unknown keys, duplicate keys and malformed values are ParseErrors; missing
// keys keep their defaults.
MissionConfig ParseMissionConfig(std::string_view text);
std::string EmitMissionConfig(const MissionConfig& config);

Schedule ParseSchedule(std::string_view text);
std::string EmitSchedule(const Schedule& schedule);

std::vector<TraceRow> ParseTraceCsv(std::string_view text);
std::string EmitTraceCsv(const std::vector<TraceRow>& rows);

// JSON documents.
std::string EmitMetrics(const SavedPassReport& report, std::string_view mission_id,
                        TieBreakerKind tie_breaker);
std::string EmitLearnerSnapshot(const LearnerState& state);
// Throws ParseError (line 0) on a structurally invalid snapshot.
LearnerState ParseLearnerSnapshot(std::string_view text);

}  // namespace dumpftl::io

#endif  // DUMPFTL_IO_HPP_
