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

#include "dumpftl/dataset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dumpftl/random.hpp"

namespace dumpftl {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("generator config: " + what);
}

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

struct OrbitGeometry {
  Duration phase;
  Duration mask_rise;
  Duration five_rise;
  Duration usable;
  bool los5_binding;
  Duration los_extra;
  Duration los0_tail;
  double anomaly_rate;
};

}  // namespace

void MissionDataset::Validate() const {
  if (orbits_per_cycle < 1) {
    throw std::invalid_argument("orbits_per_cycle must be >= 1");
  }
  const std::set<int> known(cycles.begin(), cycles.end());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PassEvents& e = records[i].events;
    if (e.relative_orbit < 1 || e.relative_orbit > orbits_per_cycle) {
      throw std::invalid_argument("relative orbit " + std::to_string(e.relative_orbit) +
                                  " outside [1, " + std::to_string(orbits_per_cycle) +
                                  "]");
    }
    if (!known.contains(e.cycle)) {
      throw std::invalid_argument("cycle " + std::to_string(e.cycle) +
                                  " not listed in the dataset");
    }
    if (i > 0 && !(KeyOf(records[i - 1].events) < KeyOf(e))) {
      throw std::invalid_argument("records must be sorted with unique (cycle, ron) keys");
    }
  }
}

std::map<int, std::vector<PassRecord>> MissionDataset::ByOrbit() const {
  std::map<int, std::vector<PassRecord>> out;
  for (const PassRecord& r : records) out[r.events.relative_orbit].push_back(r);
  for (auto& [ron, recs] : out) {
    std::stable_sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
      return a.events.cycle < b.events.cycle;
    });
  }
  return out;
}

void AnnotateBaseline(MissionDataset& dataset, const OffsetPair& baseline,
                      Duration dump_duration) {
  for (PassRecord& r : dataset.records) {
    if (r.ground) {
      r.baseline_outcome = SuccessPredicate(r.events, *r.ground, baseline.aos_offset,
                                            baseline.los_offset, dump_duration);
    } else {
      r.baseline_outcome.reset();
    }
  }
}

void GeneratorConfig::Validate() const {
  Require(cycles >= 1, "cycles must be >= 1");
  Require(first_cycle >= 1, "first_cycle must be >= 1");
  Require(orbits_per_cycle >= 1, "orbits_per_cycle must be >= 1");
  Require(Duration{} < usable_min && usable_min <= usable_max,
          "need 0 < usable_min <= usable_max");
  Require(orbit_period > usable_max + Seconds(600),
          "orbit_period too short for the pass geometry");
  Require(lock_jitter_max >= Duration{}, "lock_jitter_max must be >= 0");
  Require(lock_jitter_max <= baseline.aos_offset && lock_jitter_max <= baseline.los_offset,
          "lock_jitter_max must not exceed the baseline offsets");
  Require(IsProbability(corruption_probability), "corruption_probability not in [0, 1]");
  Require(IsProbability(missing_probability), "missing_probability not in [0, 1]");
  Require(IsProbability(late_share) && IsProbability(early_share) &&
              late_share + early_share <= 1.0,
          "late_share and early_share must be probabilities summing to <= 1");
  Require(orbit_rate_spread >= 0.0 && orbit_rate_spread <= 1.0,
          "orbit_rate_spread not in [0, 1]");
  Require(late_mean_s >= 0.0 && early_mean_s >= 0.0 && magnitude_cap_s >= 0,
          "anomaly magnitudes must be non-negative");
  Require(usable_min - Seconds(3) > (Seconds(magnitude_cap_s) + lock_jitter_max) * 2,
          "anomalies could close the lock window entirely");
  Require(baseline.aos_offset >= Duration{} && baseline.los_offset >= Duration{},
          "baseline offsets must be non-negative");
  Require(dump_duration >= Duration{}, "dump_duration must be non-negative");
}

MissionDataset GenerateDataset(const GeneratorConfig& config) {
  config.Validate();
  random::Stream rng(config.seed);

  std::vector<OrbitGeometry> geometry;
  geometry.reserve(config.orbits_per_cycle);
  const std::int64_t latest_phase_s =
      (config.orbit_period - config.usable_max - Seconds(400)).millis / 1000;
  for (int ron = 1; ron <= config.orbits_per_cycle; ++ron) {
    OrbitGeometry g;
    g.phase = Seconds(rng.Int(0, latest_phase_s));
    g.mask_rise = Seconds(rng.Int(0, 90));
    g.five_rise = Seconds(rng.Int(30, 120));
    g.usable = Millis(rng.Int(config.usable_min.millis, config.usable_max.millis));
    g.los5_binding = rng.Bernoulli(0.5);
    g.los_extra = Seconds(rng.Int(0, 60));
    g.los0_tail = Seconds(rng.Int(10, 90));
    const double multiplier = 1.0 + config.orbit_rate_spread * (2.0 * rng.Unit() - 1.0);
    g.anomaly_rate = std::clamp(config.corruption_probability * multiplier, 0.0, 1.0);
    geometry.push_back(g);
  }

  MissionDataset ds;
  ds.mission_id = config.mission_id;
  ds.orbits_per_cycle = config.orbits_per_cycle;
  for (int c = 0; c < config.cycles; ++c) ds.cycles.push_back(config.first_cycle + c);

  const std::int64_t jitter_ms = config.lock_jitter_max.millis;
  for (int c = 0; c < config.cycles; ++c) {
    for (int ron = 1; ron <= config.orbits_per_cycle; ++ron) {
      const OrbitGeometry& g = geometry[ron - 1];
      const std::int64_t orbit_number =
          static_cast<std::int64_t>(c) * config.orbits_per_cycle + (ron - 1);
      const Duration shift = Millis(rng.Int(-2000, 2000));

      PassEvents e;
      e.cycle = config.first_cycle + c;
      e.relative_orbit = ron;
      e.aos0 = config.start_epoch + config.orbit_period * orbit_number + g.phase + shift;
      e.aosm = e.aos0 + g.mask_rise;
      e.aos5 = e.aos0 + g.five_rise;
      const Timestamp usable_end = e.usable_start() + g.usable;
      if (g.los5_binding) {
        e.los5 = usable_end;
        e.losm = usable_end + g.los_extra;
      } else {
        e.losm = usable_end;
        e.los5 = usable_end + g.los_extra;
      }
      e.los0 = std::max(e.los5, e.losm) + g.los0_tail;

      GroundWindow lock{e.usable_start() + Millis(rng.Int(0, jitter_ms)),
                        e.usable_end() - Millis(rng.Int(0, jitter_ms))};
      if (rng.Bernoulli(g.anomaly_rate)) {
        const double u = rng.Unit();
        const bool late =
            u < config.late_share || u >= config.late_share + config.early_share;
        const bool early = u >= config.late_share;
        if (late) {
          lock.lock_start = lock.lock_start + Seconds(rng.TruncatedGeometric(
                                                  config.late_mean_s, config.magnitude_cap_s));
        }
        if (early) {
          lock.lock_end = lock.lock_end - Seconds(rng.TruncatedGeometric(
                                              config.early_mean_s, config.magnitude_cap_s));
        }
      }
      const bool missing = rng.Bernoulli(config.missing_probability);

      PassRecord rec{e, std::nullopt, std::nullopt};
      if (!missing) {
        rec.ground = lock;
        rec.baseline_outcome =
            SuccessPredicate(e, lock, config.baseline.aos_offset,
                             config.baseline.los_offset, config.dump_duration);
      }
      ds.records.push_back(rec);
    }
  }
  return ds;
}

}  // namespace dumpftl
