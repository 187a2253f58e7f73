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

#include "dumpftl/io.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dumpftl::io {
namespace {

using nlohmann::json;

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

// Rows below the header, with field-count checking.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> ReadCsv(
    std::string_view text, std::string_view header, std::size_t first_line = 0) {
  const auto lines = SplitLines(text);
  if (lines.size() <= first_line) throw ParseError(first_line + 1, "missing header row");
  const Line& head = lines[first_line];
  if (head.text != header) {
    throw ParseError(head.number, "unexpected columns '" + std::string(head.text) +
                                      "', expected '" + std::string(header) + "'");
  }
  const std::size_t width = SplitFields(header).size();
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  for (std::size_t k = first_line + 1; k < lines.size(); ++k) {
    if (lines[k].text.empty()) throw ParseError(lines[k].number, "blank line");
    auto fields = SplitFields(lines[k].text);
    if (fields.size() != width) {
      throw ParseError(lines[k].number, "expected " + std::to_string(width) +
                                            " fields, found " +
                                            std::to_string(fields.size()));
    }
    rows.emplace_back(lines[k].number, std::move(fields));
  }
  return rows;
}

template <class Int>
Int ParseInt(std::size_t line, std::string_view field, const char* what) {
  Int value{};
  const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || p != field.data() + field.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

Timestamp ParseTime(std::size_t line, std::string_view field, const char* what) {
  const auto t = ParseIso8601(field);
  if (!t) {
    throw ParseError(line, std::string("malformed timestamp in ") + what + " '" +
                               std::string(field) + "'");
  }
  return *t;
}

std::optional<Timestamp> ParseOptionalTime(std::size_t line, std::string_view field,
                                           const char* what) {
  if (field.empty()) return std::nullopt;
  return ParseTime(line, field, what);
}

Duration ParseDuration(std::size_t line, std::string_view field, const char* what) {
  const auto d = ParseSeconds(field);
  if (!d) {
    throw ParseError(line, std::string("malformed seconds value in ") + what + " '" +
                               std::string(field) + "'");
  }
  return *d;
}

std::string KeyName(const PassKey& k) {
  return "(cycle " + std::to_string(k.cycle) + ", ron " + std::to_string(k.relative_orbit) +
         ")";
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<TelemetryEntry> ParseTelemetryCsv(std::string_view text) {
  std::vector<TelemetryEntry> out;
  std::set<PassKey> seen;
  for (const auto& [line, f] : ReadCsv(text, kTelemetryHeader)) {
    TelemetryEntry e;
    e.cycle = ParseInt<int>(line, f[0], "cycle");
    e.relative_orbit = ParseInt<int>(line, f[1], "ron");
    e.first_frame = ParseOptionalTime(line, f[2], "first_frame_utc");
    e.last_frame = ParseOptionalTime(line, f[3], "last_frame_utc");
    if (e.recorded() && !(*e.first_frame < *e.last_frame)) {
      throw ParseError(line, "first frame must precede last frame");
    }
    if (!seen.insert({e.cycle, e.relative_orbit}).second) {
      throw ParseError(line, "duplicate key " + KeyName({e.cycle, e.relative_orbit}));
    }
    out.push_back(e);
  }
  return out;
}

std::string EmitTelemetryCsv(const std::vector<TelemetryEntry>& entries) {
  std::string out(kTelemetryHeader);
  out += '\n';
  for (const TelemetryEntry& e : entries) {
    out += std::to_string(e.cycle) + ',' + std::to_string(e.relative_orbit) + ',' +
           (e.first_frame ? FormatIso8601(*e.first_frame) : "") + ',' +
           (e.last_frame ? FormatIso8601(*e.last_frame) : "") + '\n';
  }
  return out;
}

std::vector<PassEvents> ParseEventsCsv(std::string_view text) {
  std::vector<PassEvents> out;
  std::set<PassKey> seen;
  for (const auto& [line, f] : ReadCsv(text, kEventsHeader)) {
    PassEvents e;
    e.cycle = ParseInt<int>(line, f[0], "cycle");
    e.relative_orbit = ParseInt<int>(line, f[1], "ron");
    e.aos0 = ParseTime(line, f[2], "aos0");
    e.aosm = ParseTime(line, f[3], "aosm");
    e.aos5 = ParseTime(line, f[4], "aos5");
    e.los0 = ParseTime(line, f[5], "los0");
    e.losm = ParseTime(line, f[6], "losm");
    e.los5 = ParseTime(line, f[7], "los5");
    if (const auto v = e.Violation()) throw ParseError(line, *v);
    if (!seen.insert(KeyOf(e)).second) {
      throw ParseError(line, "duplicate key " + KeyName(KeyOf(e)));
    }
    out.push_back(e);
  }
  return out;
}

std::string EmitEventsCsv(const std::vector<PassEvents>& events) {
  std::string out(kEventsHeader);
  out += '\n';
  for (const PassEvents& e : events) {
    out += std::to_string(e.cycle) + ',' + std::to_string(e.relative_orbit);
    for (Timestamp t : {e.aos0, e.aosm, e.aos5, e.los0, e.losm, e.los5}) {
      out += ',' + FormatIso8601(t);
    }
    out += '\n';
  }
  return out;
}

MissionDataset MergeDataset(std::string mission_id, int orbits_per_cycle,
                            std::vector<PassEvents> events,
                            const std::vector<TelemetryEntry>& telemetry) {
  std::sort(events.begin(), events.end(),
            [](const PassEvents& a, const PassEvents& b) { return KeyOf(a) < KeyOf(b); });
  std::map<PassKey, std::size_t> index;
  MissionDataset ds;
  ds.mission_id = std::move(mission_id);
  ds.orbits_per_cycle = orbits_per_cycle;
  std::set<int> cycles;
  for (const PassEvents& e : events) {
    index[KeyOf(e)] = ds.records.size();
    ds.records.push_back({e, std::nullopt, std::nullopt});
    cycles.insert(e.cycle);
  }
  for (const TelemetryEntry& t : telemetry) {
    const auto it = index.find({t.cycle, t.relative_orbit});
    if (it == index.end()) {
      throw std::invalid_argument("telemetry for " +
                                  KeyName({t.cycle, t.relative_orbit}) +
                                  " has no matching events");
    }
    if (t.recorded()) ds.records[it->second].ground = GroundWindow{*t.first_frame, *t.last_frame};
  }
  ds.cycles.assign(cycles.begin(), cycles.end());
  ds.Validate();
  return ds;
}

std::vector<PassEvents> EventsOf(const MissionDataset& dataset) {
  std::vector<PassEvents> out;
  for (const PassRecord& r : dataset.records) out.push_back(r.events);
  return out;
}

std::vector<TelemetryEntry> TelemetryOf(const MissionDataset& dataset) {
  std::vector<TelemetryEntry> out;
  for (const PassRecord& r : dataset.records) {
    TelemetryEntry e{r.events.cycle, r.events.relative_orbit, std::nullopt, std::nullopt};
    if (r.ground) {
      e.first_frame = r.ground->lock_start;
      e.last_frame = r.ground->lock_end;
    }
    out.push_back(e);
  }
  return out;
}

OffsetGrid MissionConfig::Grid() const {
  return OffsetGrid(GridLinspace(grid_aos_min, grid_aos_max, grid_aos_step),
                    GridLinspace(grid_los_min, grid_los_max, grid_los_step));
}

MissionConfig ParseMissionConfig(std::string_view text) {
  MissionConfig c;
  using Setter = std::function<void(std::size_t, std::string_view)>;
  auto duration = [](Duration& d, const char* key) -> Setter {
    return [&d, key](std::size_t line, std::string_view v) { d = ParseDuration(line, v, key); };
  };
  auto integer = [](int& i, const char* key) -> Setter {
    return [&i, key](std::size_t line, std::string_view v) { i = ParseInt<int>(line, v, key); };
  };
  const std::map<std::string, Setter, std::less<>> setters = {
      {"mission_id",
       [&](std::size_t line, std::string_view v) {
         if (v.empty()) throw ParseError(line, "mission_id must be non-empty");
         c.mission_id = std::string(v);
       }},
      {"orbits_per_cycle", integer(c.orbits_per_cycle, "orbits_per_cycle")},
      {"first_cycle", integer(c.first_cycle, "first_cycle")},
      {"cycles", integer(c.cycles, "cycles")},
      {"seed",
       [&](std::size_t line, std::string_view v) {
         c.seed = ParseInt<std::uint64_t>(line, v, "seed");
       }},
      {"grid_aos_min_s", duration(c.grid_aos_min, "grid_aos_min_s")},
      {"grid_aos_max_s", duration(c.grid_aos_max, "grid_aos_max_s")},
      {"grid_aos_step_s", duration(c.grid_aos_step, "grid_aos_step_s")},
      {"grid_los_min_s", duration(c.grid_los_min, "grid_los_min_s")},
      {"grid_los_max_s", duration(c.grid_los_max, "grid_los_max_s")},
      {"grid_los_step_s", duration(c.grid_los_step, "grid_los_step_s")},
      {"baseline_aos_s", duration(c.baseline.aos_offset, "baseline_aos_s")},
      {"baseline_los_s", duration(c.baseline.los_offset, "baseline_los_s")},
      {"dump_duration_s", duration(c.dump_duration, "dump_duration_s")},
      {"tie_breaker",
       [&](std::size_t line, std::string_view v) {
         const auto k = ParseTieBreakerKind(v);
         if (!k) throw ParseError(line, "unknown tie_breaker '" + std::string(v) + "'");
         c.tie_breaker = *k;
       }},
  };
  std::set<std::string, std::less<>> seen;
  for (const Line& l : SplitLines(text)) {
    const std::string body = Trim(l.text);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(l.number, "expected 'key = value'");
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(l.number, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(l.number, "duplicate key '" + key + "'");
    it->second(l.number, value);
  }
  return c;
}

std::string EmitMissionConfig(const MissionConfig& c) {
  std::ostringstream out;
  out << "# dumpftl mission config\n"
      << "mission_id = " << c.mission_id << '\n'
      << "orbits_per_cycle = " << c.orbits_per_cycle << '\n'
      << "first_cycle = " << c.first_cycle << '\n'
      << "cycles = " << c.cycles << '\n'
      << "seed = " << c.seed << '\n'
      << "grid_aos_min_s = " << FormatSeconds(c.grid_aos_min) << '\n'
      << "grid_aos_max_s = " << FormatSeconds(c.grid_aos_max) << '\n'
      << "grid_aos_step_s = " << FormatSeconds(c.grid_aos_step) << '\n'
      << "grid_los_min_s = " << FormatSeconds(c.grid_los_min) << '\n'
      << "grid_los_max_s = " << FormatSeconds(c.grid_los_max) << '\n'
      << "grid_los_step_s = " << FormatSeconds(c.grid_los_step) << '\n'
      << "baseline_aos_s = " << FormatSeconds(c.baseline.aos_offset) << '\n'
      << "baseline_los_s = " << FormatSeconds(c.baseline.los_offset) << '\n'
      << "dump_duration_s = " << FormatSeconds(c.dump_duration) << '\n'
      << "tie_breaker = " << Name(c.tie_breaker) << '\n';
  return out.str();
}

Schedule ParseSchedule(std::string_view text) {
  const auto lines = SplitLines(text);
  constexpr std::string_view kPrefix = "# schedule mission_id=";
  if (lines.empty() || !lines[0].text.starts_with(kPrefix)) {
    throw ParseError(1, "expected '" + std::string(kPrefix) + "<id>'");
  }
  Schedule s;
  s.mission_id = std::string(lines[0].text.substr(kPrefix.size()));
  std::set<PassKey> seen;
  for (const auto& [line, f] : ReadCsv(text, kScheduleHeader, 1)) {
    DumpCommand c;
    c.cycle = ParseInt<int>(line, f[0], "cycle");
    c.relative_orbit = ParseInt<int>(line, f[1], "ron");
    c.start = ParseTime(line, f[2], "start_utc");
    c.stop = ParseTime(line, f[3], "stop_utc");
    c.aos_offset = ParseDuration(line, f[4], "aos_offset_s");
    c.los_offset = ParseDuration(line, f[5], "los_offset_s");
    if (!(c.start < c.stop)) throw ParseError(line, "start must precede stop");
    const PassKey key{c.cycle, c.relative_orbit};
    if (!s.commands.empty() && !(PassKey{s.commands.back().cycle,
                                         s.commands.back().relative_orbit} < key)) {
      throw ParseError(line, "commands must be sorted with unique keys, got " + KeyName(key));
    }
    s.commands.push_back(c);
  }
  return s;
}

std::string EmitSchedule(const Schedule& schedule) {
  std::string out = "# schedule mission_id=" + schedule.mission_id + '\n';
  out += kScheduleHeader;
  out += '\n';
  for (const DumpCommand& c : schedule.commands) {
    out += std::to_string(c.cycle) + ',' + std::to_string(c.relative_orbit) + ',' +
           FormatIso8601(c.start) + ',' + FormatIso8601(c.stop) + ',' +
           FormatSeconds(c.aos_offset) + ',' + FormatSeconds(c.los_offset) + '\n';
  }
  return out;
}

std::vector<TraceRow> ParseTraceCsv(std::string_view text) {
  std::vector<TraceRow> out;
  for (const auto& [line, f] : ReadCsv(text, kTraceHeader)) {
    TraceRow r;
    r.relative_orbit = ParseInt<int>(line, f[0], "ron");
    r.cycle_step = ParseInt<int>(line, f[1], "cycle_step");
    r.cycle = ParseInt<int>(line, f[2], "cycle");
    const bool skipped = f[3].empty() && f[4].empty() && f[5].empty() && f[6].empty() &&
                         f[7].empty();
    if (!skipped) {
      r.offsets = OffsetPair{ParseDuration(line, f[3], "aos_offset_s"),
                             ParseDuration(line, f[4], "los_offset_s")};
      if (f[5] != "0" && f[5] != "1") {
        throw ParseError(line, "reward must be 0 or 1, got '" + std::string(f[5]) + "'");
      }
      r.reward = f[5] == "1";
      r.played = OffsetPair{ParseDuration(line, f[6], "played_aos_offset_s"),
                            ParseDuration(line, f[7], "played_los_offset_s")};
    }
    out.push_back(r);
  }
  return out;
}

std::string EmitTraceCsv(const std::vector<TraceRow>& rows) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const TraceRow& r : rows) {
    out += std::to_string(r.relative_orbit) + ',' + std::to_string(r.cycle_step) + ',' +
           std::to_string(r.cycle) + ',';
    if (r.offsets && r.reward && r.played) {
      out += FormatSeconds(r.offsets->aos_offset) + ',' +
             FormatSeconds(r.offsets->los_offset) + ',' + (*r.reward ? "1" : "0") + ',' +
             FormatSeconds(r.played->aos_offset) + ',' + FormatSeconds(r.played->los_offset);
    } else {
      out += ",,,,";
    }
    out += '\n';
  }
  return out;
}

std::string EmitMetrics(const SavedPassReport& r, std::string_view mission_id,
                        TieBreakerKind tie_breaker) {
  json doc = {
      {"mission_id", mission_id},
      {"tie_breaker", Name(tie_breaker)},
      {"total_passes", r.total_passes},
      {"recorded_passes", r.recorded_passes},
      {"baseline_failures", r.baseline_failures},
      {"learner_failures", r.learner_failures},
      {"learner_failures_after_first", r.learner_failures_after_first},
      {"saved", r.saved},
      {"saved_fraction", r.saved_fraction ? json(*r.saved_fraction) : json(nullptr)},
  };
  return doc.dump(2) + '\n';
}

std::string EmitLearnerSnapshot(const LearnerState& state) {
  auto millis = [](const std::vector<Duration>& v) {
    json a = json::array();
    for (Duration d : v) a.push_back(d.millis);
    return a;
  };
  json counts = json::array();
  for (Eigen::Index i = 0; i < state.counts.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < state.counts.cols(); ++j) row.push_back(state.counts(i, j));
    counts.push_back(row);
  }
  json prev = nullptr;
  if (state.previous_action) {
    prev = {{"aos_offset_ms", state.previous_action->aos_offset.millis},
            {"los_offset_ms", state.previous_action->los_offset.millis}};
  }
  json doc = {{"aos_offsets_ms", millis(state.grid.aos_values())},
              {"los_offsets_ms", millis(state.grid.los_values())},
              {"counts", counts},
              {"step", state.step},
              {"previous_action", prev}};
  return doc.dump(2) + '\n';
}

LearnerState ParseLearnerSnapshot(std::string_view text) {
  try {
    const json doc = json::parse(text);
    auto axis = [&](const char* key) {
      std::vector<Duration> out;
      for (const auto& v : doc.at(key)) out.push_back(Millis(v.get<std::int64_t>()));
      return out;
    };
    LearnerState state = LearnerState::Initial(OffsetGrid(axis("aos_offsets_ms"),
                                                          axis("los_offsets_ms")));
    const json& counts = doc.at("counts");
    if (counts.size() != state.grid.rows()) throw ParseError(0, "counts row count mismatch");
    for (std::size_t i = 0; i < state.grid.rows(); ++i) {
      if (counts[i].size() != state.grid.cols()) {
        throw ParseError(0, "counts column count mismatch");
      }
      for (std::size_t j = 0; j < state.grid.cols(); ++j) {
        state.counts(i, j) = counts[i][j].get<std::int64_t>();
      }
    }
    state.step = doc.at("step").get<std::int64_t>();
    if (state.step < 1) throw ParseError(0, "step must be >= 1");
    if ((state.counts < 0).any() || (state.counts > state.step - 1).any()) {
      throw ParseError(0, "counts must lie in [0, step - 1]");
    }
    const json& prev = doc.at("previous_action");
    if (!prev.is_null()) {
      const OffsetPair p{Millis(prev.at("aos_offset_ms").get<std::int64_t>()),
                         Millis(prev.at("los_offset_ms").get<std::int64_t>())};
      if (!state.grid.Contains(p)) throw ParseError(0, "previous action not on the grid");
      state.previous_action = p;
    }
    return state;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid learner snapshot: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("invalid learner snapshot: ") + e.what());
  }
}

}  // namespace dumpftl::io
