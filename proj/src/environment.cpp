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

#include "dumpftl/environment.hpp"

#include <stdexcept>

#include "dumpftl/random.hpp"

namespace dumpftl {

BernoulliEnvironment::BernoulliEnvironment(OffsetGrid grid, ProbArray probs,
                                           std::uint64_t seed)
    : grid_(std::move(grid)), probs_(std::move(probs)), seed_(seed) {
  if (static_cast<std::size_t>(probs_.rows()) != grid_.rows() ||
      static_cast<std::size_t>(probs_.cols()) != grid_.cols()) {
    throw std::invalid_argument("probability array does not match the grid");
  }
  if (!((probs_ >= 0.0) && (probs_ <= 1.0)).all()) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
}

FeedbackMatrix BernoulliStep(const BernoulliEnvironment& env, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("time step must be >= 1");
  const auto& p = env.probs();
  FeedbackMatrix fb{BitArray(p.rows(), p.cols())};
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const double u = random::ToUnit(random::KeyedWord(
          {env.seed(), static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i),
           static_cast<std::uint64_t>(j)}));
      fb.bits(i, j) = u < p(i, j) ? 1 : 0;
    }
  }
  return fb;
}

bool SuccessPredicate(const PassEvents& events, const GroundWindow& ground,
                      Duration aos_offset, Duration los_offset,
                      Duration dump_duration) {
  const Timestamp start = events.usable_start() + aos_offset;
  const Timestamp stop = events.usable_end() - los_offset;
  return start >= ground.lock_start && stop <= ground.lock_end &&
         stop - start >= dump_duration;
}

OffsetPair RequiredOffsets(const PassEvents& events, const GroundWindow& ground) {
  return {std::max(ground.lock_start - events.usable_start(), Duration{}),
          std::max(events.usable_end() - ground.lock_end, Duration{})};
}

ReplayEnvironment::ReplayEnvironment(OffsetGrid grid, std::vector<PassRecord> passes,
                                     Duration dump_duration)
    : grid_(std::move(grid)), passes_(std::move(passes)), dump_duration_(dump_duration) {
  for (std::size_t i = 1; i < passes_.size(); ++i) {
    if (passes_[i].events.relative_orbit != passes_[0].events.relative_orbit) {
      throw std::invalid_argument("replay passes must share one relative orbit");
    }
    if (passes_[i].events.cycle <= passes_[i - 1].events.cycle) {
      throw std::invalid_argument("replay passes must be sorted by cycle");
    }
  }
}

FeedbackMatrix SuccessMatrix(const OffsetGrid& grid, const PassEvents& events,
                             const GroundWindow& ground, Duration dump_duration) {
  FeedbackMatrix fb{BitArray(grid.rows(), grid.cols())};
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      fb.bits(i, j) = SuccessPredicate(events, ground, grid.aos_values()[i],
                                       grid.los_values()[j], dump_duration)
                          ? 1
                          : 0;
    }
  }
  return fb;
}

std::optional<FeedbackMatrix> ReplayFeedback(const ReplayEnvironment& env,
                                             std::size_t pass_index) {
  const PassRecord& rec = env.passes().at(pass_index);
  if (!rec.ground) return std::nullopt;
  return SuccessMatrix(env.grid(), rec.events, *rec.ground, env.dump_duration());
}

}  // namespace dumpftl
