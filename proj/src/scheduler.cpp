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

#include "dumpftl/scheduler.hpp"

namespace dumpftl {

DumpWindow ComputeDumpWindow(const PassEvents& events, const OffsetPair& action) {
  const DumpWindow w{events.usable_start() + action.aos_offset,
                     events.usable_end() - action.los_offset};
  if (w.start >= w.stop) {
    throw InfeasibleWindowError("offsets " + ToString(action) +
                                " leave no dump window (start " +
                                FormatIso8601(w.start) + " >= stop " +
                                FormatIso8601(w.stop) + ")");
  }
  return w;
}

ScheduleResult BuildSchedule(std::string mission_id,
                             std::span<const PassEvents> events,
                             const std::map<PassKey, OffsetPair>& selections) {
  std::map<PassKey, const PassEvents*> by_key;
  for (const PassEvents& e : events) by_key[KeyOf(e)] = &e;

  ScheduleResult result;
  result.schedule.mission_id = std::move(mission_id);
  // std::map iteration gives (cycle, relative_orbit) order.
  for (const auto& [key, action] : selections) {
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      result.issues.push_back({key, "no events for this pass"});
      continue;
    }
    try {
      const DumpWindow w = ComputeDumpWindow(*it->second, action);
      result.schedule.commands.push_back({key.cycle, key.relative_orbit, w.start,
                                          w.stop, action.aos_offset,
                                          action.los_offset});
    } catch (const InfeasibleWindowError& e) {
      result.issues.push_back({key, e.what()});
    }
  }
  return result;
}

}  // namespace dumpftl
