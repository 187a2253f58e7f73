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

#include "dumpftl/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace dumpftl {
namespace {

void CheckAxis(const std::vector<Duration>& values, const char* name) {
  if (values.empty()) {
    throw std::invalid_argument(std::string(name) + " offsets must be non-empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < Duration{}) {
      throw std::invalid_argument(std::string(name) + " offsets must be >= 0");
    }
    if (i > 0 && !(values[i - 1] < values[i])) {
      throw std::invalid_argument(std::string(name) +
                                  " offsets must be strictly ascending");
    }
  }
}

std::optional<std::size_t> Find(const std::vector<Duration>& values, Duration d) {
  const auto it = std::lower_bound(values.begin(), values.end(), d);
  if (it == values.end() || *it != d) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

}  // namespace

std::string ToString(const OffsetPair& p) {
  return "(" + FormatSeconds(p.aos_offset) + "s, " + FormatSeconds(p.los_offset) +
         "s)";
}

std::vector<Duration> GridLinspace(Duration min, Duration max, Duration step) {
  if (step <= Duration{}) throw std::invalid_argument("grid step must be > 0");
  if (min > max) throw std::invalid_argument("grid min must be <= max");
  std::vector<Duration> out;
  for (Duration v = min; v <= max; v += step) out.push_back(v);
  return out;
}

OffsetGrid::OffsetGrid(std::vector<Duration> aos_values,
                       std::vector<Duration> los_values)
    : aos_values_(std::move(aos_values)), los_values_(std::move(los_values)) {
  CheckAxis(aos_values_, "AOS");
  CheckAxis(los_values_, "LOS");
}

OffsetGrid OffsetGrid::Default() {
  return OffsetGrid(GridLinspace(Seconds(0), Seconds(120), Seconds(1)),
                    GridLinspace(Seconds(0), Seconds(60), Seconds(1)));
}

std::optional<GridIndex> OffsetGrid::IndexOf(const OffsetPair& p) const {
  const auto i = Find(aos_values_, p.aos_offset);
  const auto j = Find(los_values_, p.los_offset);
  if (!i || !j) return std::nullopt;
  return GridIndex{*i, *j};
}

std::optional<std::string> PassEvents::Violation() const {
  if (cycle < 1) return "cycle must be >= 1";
  if (relative_orbit < 1) return "relative orbit must be >= 1";
  if (aos0 > aosm) return "AOSM precedes AOS0";
  if (aosm > los0) return "AOSM follows LOS0";
  if (losm > los0) return "LOSM follows LOS0";
  if (!(usable_start() < usable_end())) {
    return "no usable window: max(AOS5, AOSM) >= min(LOS5, LOSM)";
  }
  return std::nullopt;
}

}  // namespace dumpftl
