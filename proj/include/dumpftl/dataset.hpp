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

#ifndef DUMPFTL_DATASET_HPP_
#define DUMPFTL_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dumpftl/environment.hpp"
#include "dumpftl/model.hpp"

namespace dumpftl {

struct MissionDataset {
  std::string mission_id;
  int orbits_per_cycle = 127;
  std::vector<int> cycles;          // ascending
  std::vector<PassRecord> records;  // sorted by (cycle, relative_orbit)

  // Throws std::invalid_argument on duplicate keys, an out-of-range relative
  // orbit, a cycle not listed in `cycles`, or unsorted records.
  void Validate() const;

  // Records grouped per relative orbit, each group sorted by cycle.
  std::map<int, std::vector<PassRecord>> ByOrbit() const;

  bool operator==(const MissionDataset&) const = default;
};

// Recomputes baseline_outcome for every recorded pass with fixed offsets.
void AnnotateBaseline(MissionDataset& dataset, const OffsetPair& baseline,
                      Duration dump_duration);

// Seeded synthetic mission.
//
// Each relative orbit gets a fixed pass geometry (masking and 5 degree
// elevation events, usable window length) and its own anomaly-rate
// multiplier. Every pass then gets a few seconds of event jitter; the ground
// lock follows the usable window up to `lock_jitter_max`, and with probability
// corruption_probability * multiplier an anomaly delays acquisition, cuts the
// lock early, or both, by truncated geometric amounts in whole seconds.
struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::string mission_id = "S6-SYNTH";
  int first_cycle = 6;
  int cycles = 6;
  int orbits_per_cycle = 127;
  Timestamp start_epoch{1612137600000};  // 2021-02-01T00:00:00.000Z
  Duration orbit_period = Millis(6'745'700);

  Duration usable_min = Seconds(900);
  Duration usable_max = Seconds(1300);
  Duration lock_jitter_max = Seconds(2);

  double corruption_probability = 0.235;
  double orbit_rate_spread = 1.0;  // multiplier ~ U[1 - spread, 1 + spread]
  double late_share = 0.45;        // anomaly hits acquisition only
  double early_share = 0.45;       // anomaly hits loss only; rest hit both
  double late_mean_s = 20.0;
  double early_mean_s = 12.0;
  std::int64_t magnitude_cap_s = 240;
  double missing_probability = 0.0;

  OffsetPair baseline{Seconds(30), Seconds(10)};
  Duration dump_duration = kDefaultDumpDuration;

  // Throws std::invalid_argument describing the first bad field.
  void Validate() const;
};

MissionDataset GenerateDataset(const GeneratorConfig& config);

// Smallest seed for which the default configuration yields exactly 67
// baseline failures over 6 cycles of 127 orbits.
inline constexpr std::uint64_t kCalibratedSeed = 40;
inline constexpr int kCalibratedBaselineFailures = 67;

}  // namespace dumpftl

#endif  // DUMPFTL_DATASET_HPP_
