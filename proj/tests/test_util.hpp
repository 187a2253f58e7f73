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

#ifndef DUMPFTL_TESTS_TEST_UTIL_HPP_
#define DUMPFTL_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dumpftl/eval.hpp"
#include "dumpftl/model.hpp"
#include "dumpftl/random.hpp"

namespace dumpftl::testing {

inline constexpr Timestamp kT0{1612137600000};

inline Timestamp At(std::int64_t seconds) { return kT0 + Seconds(seconds); }

// Events relative to kT0 in seconds; horizon events sit just outside.
inline PassEvents MakeEvents(std::int64_t aos5, std::int64_t aosm, std::int64_t los5,
                             std::int64_t losm, int cycle = 1, int ron = 1) {
  PassEvents e;
  e.cycle = cycle;
  e.relative_orbit = ron;
  e.aos0 = At(std::min(aos5, aosm) - 10);
  e.aosm = At(aosm);
  e.aos5 = At(aos5);
  e.los0 = At(std::max(los5, losm) + 10);
  e.losm = At(losm);
  e.los5 = At(los5);
  return e;
}

inline GroundWindow MakeGround(std::int64_t start, std::int64_t end) {
  return {At(start), At(end)};
}

// Grid with integer-second values 0, step, ..., (n - 1) * step.
inline OffsetGrid SecondsGrid(int rows, int cols, int step = 1) {
  return OffsetGrid(GridLinspace(Seconds(0), Seconds((rows - 1) * step), Seconds(step)),
                    GridLinspace(Seconds(0), Seconds((cols - 1) * step), Seconds(step)));
}

// Best fixed action's total over the recorded steps, by brute force over
// every action.
inline std::int64_t BruteForceBestReward(const RunRecord& run, const OffsetGrid& grid) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      std::int64_t total = 0;
      for (const RunStep& s : run.steps) {
        if (s.feedback) total += s.feedback->bits(i, j);
      }
      best = std::max(best, total);
    }
  }
  return best;
}

inline std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string DataPath(const std::string& rel) {
  return std::string(DUMPFTL_TEST_DATA_DIR) + "/" + rel;
}

}  // namespace dumpftl::testing

#endif  // DUMPFTL_TESTS_TEST_UTIL_HPP_
