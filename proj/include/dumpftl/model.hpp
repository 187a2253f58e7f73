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

#ifndef DUMPFTL_MODEL_HPP_
#define DUMPFTL_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dumpftl/time.hpp"

namespace dumpftl {

// Dense per-action arrays, indexed [aos_index][los_index].
using BitArray = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountArray = Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using ProbArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic>;

// One action: shift the dump start later by aos_offset and its end earlier by
// los_offset. Ordered lexicographically by (aos, los).
struct OffsetPair {
  Duration aos_offset;
  Duration los_offset;

  constexpr auto operator<=>(const OffsetPair&) const = default;
};

std::string ToString(const OffsetPair& p);

struct GridIndex {
  std::size_t aos = 0;
  std::size_t los = 0;

  constexpr auto operator<=>(const GridIndex&) const = default;
};

// min, min+step, ... up to the largest value <= max. Throws
// std::invalid_argument on step <= 0 or min > max.
std::vector<Duration> GridLinspace(Duration min, Duration max, Duration step);

// The finite action set: the Cartesian product of AOS and LOS offsets.
class OffsetGrid {
 public:
  // Throws std::invalid_argument unless both lists are non-empty, strictly
  // ascending and non-negative.
  OffsetGrid(std::vector<Duration> aos_values, std::vector<Duration> los_values);

  // AOS 0-120 s, LOS 0-60 s, both at 1 s resolution.
  static OffsetGrid Default();

  const std::vector<Duration>& aos_values() const { return aos_values_; }
  const std::vector<Duration>& los_values() const { return los_values_; }
  std::size_t rows() const { return aos_values_.size(); }
  std::size_t cols() const { return los_values_.size(); }
  std::size_t size() const { return rows() * cols(); }

  OffsetPair At(GridIndex idx) const {
    return {aos_values_.at(idx.aos), los_values_.at(idx.los)};
  }
  std::optional<GridIndex> IndexOf(const OffsetPair& p) const;
  bool Contains(const OffsetPair& p) const { return IndexOf(p).has_value(); }

  bool operator==(const OffsetGrid&) const = default;

 private:
  std::vector<Duration> aos_values_;
  std::vector<Duration> los_values_;
};

// Flight-dynamics events for one pass over the station.
struct PassEvents {
  int cycle = 1;
  int relative_orbit = 1;
  Timestamp aos0, aosm, aos5;
  Timestamp los0, losm, los5;

  // Latest of AOS5 and AOSM: the reference for the dump start.
  Timestamp usable_start() const { return std::max(aos5, aosm); }
  // Earliest of LOS5 and LOSM: the reference for the dump stop.
  Timestamp usable_end() const { return std::min(los5, losm); }

  // Empty if the ordering invariants hold, otherwise a description of the
  // first violation.
  std::optional<std::string> Violation() const;

  bool operator==(const PassEvents&) const = default;
};

// Interval over which the station actually held lock, from the first and
// last received telemetry frame.
struct GroundWindow {
  Timestamp lock_start;
  Timestamp lock_end;

  bool operator==(const GroundWindow&) const = default;
};

struct PassRecord {
  PassEvents events;
  std::optional<GroundWindow> ground;  // absent: pass was not recorded
  std::optional<bool> baseline_outcome;

  bool operator==(const PassRecord&) const = default;
};

struct PassKey {
  int cycle = 0;
  int relative_orbit = 0;

  constexpr auto operator<=>(const PassKey&) const = default;
};

inline PassKey KeyOf(const PassEvents& e) { return {e.cycle, e.relative_orbit}; }

// Full-information outcome of one step: bits(i, j) is the sample for
// (aos_values[i], los_values[j]).
struct FeedbackMatrix {
  BitArray bits;

  bool Matches(const OffsetGrid& grid) const {
    return static_cast<std::size_t>(bits.rows()) == grid.rows() &&
           static_cast<std::size_t>(bits.cols()) == grid.cols();
  }
  bool operator==(const FeedbackMatrix& o) const {
    return bits.rows() == o.bits.rows() && bits.cols() == o.bits.cols() &&
           (bits == o.bits).all();
  }
};

}  // namespace dumpftl

#endif  // DUMPFTL_MODEL_HPP_
