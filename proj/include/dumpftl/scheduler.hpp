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

#ifndef DUMPFTL_SCHEDULER_HPP_
#define DUMPFTL_SCHEDULER_HPP_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dumpftl/model.hpp"

namespace dumpftl {

class InfeasibleWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DumpWindow {
  Timestamp start;
  Timestamp stop;

  bool operator==(const DumpWindow&) const = default;
};

// [max(AOS5, AOSM) + a, min(LOS5, LOSM) - l]. Throws InfeasibleWindowError
// when start >= stop.
DumpWindow ComputeDumpWindow(const PassEvents& events, const OffsetPair& action);

// Single-repeat-cycle start/stop pair for one pass.
struct DumpCommand {
  int cycle = 0;
  int relative_orbit = 0;
  Timestamp start;
  Timestamp stop;
  Duration aos_offset;
  Duration los_offset;

  bool operator==(const DumpCommand&) const = default;
};

struct Schedule {
  std::string mission_id;
  std::vector<DumpCommand> commands;  // sorted by (cycle, relative_orbit)

  bool operator==(const Schedule&) const = default;
};

struct ScheduleIssue {
  PassKey key;
  std::string message;
};

struct ScheduleResult {
  Schedule schedule;
  std::vector<ScheduleIssue> issues;  // missing events, infeasible windows
};

// One command per selection. Selections without matching events or with an
// infeasible window are reported in `issues` and produce no command.
ScheduleResult BuildSchedule(std::string mission_id,
                             std::span<const PassEvents> events,
                             const std::map<PassKey, OffsetPair>& selections);

}  // namespace dumpftl

#endif  // DUMPFTL_SCHEDULER_HPP_
