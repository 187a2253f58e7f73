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

#include "dumpftl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "dumpftl/random.hpp"

namespace dumpftl {
namespace {

// Depth-first walk over feedback tables. `counts` holds the cumulative
// rewards before step t; the walk adds w * E[reward at t | counts] and
// recurses over every outcome of B_t.
class RegretEnumerator {
 public:
  RegretEnumerator(const BernoulliEnvironment& env, int horizon)
      : env_(env), horizon_(horizon) {}

  double ExpectedReward() {
    LearnerState state = LearnerState::Initial(env_.grid());
    return Visit(state.counts, 1, 1.0);
  }

 private:
  double Visit(CountArray& counts, int t, double weight) {
    // Ties are uniform over the leaders, so the conditional expected reward is
    // the leaders' mean success probability.
    const std::int64_t best = counts.maxCoeff();
    double sum = 0.0;
    int n = 0;
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
      for (Eigen::Index j = 0; j < counts.cols(); ++j) {
        if (counts(i, j) == best) {
          sum += env_.probs()(i, j);
          ++n;
        }
      }
    }
    double total = weight * sum / n;
    if (t < horizon_) total += Branch(counts, t, 0, weight);
    return total;
  }

  // Assigns B_t cell by cell, then descends to step t + 1.
  double Branch(CountArray& counts, int t, Eigen::Index cell, double weight) {
    if (cell == counts.size()) return Visit(counts, t + 1, weight);
    const double p = env_.probs()(cell % counts.rows(), cell / counts.rows());
    double total = 0.0;
    if (p > 0.0) {
      counts(cell) += 1;
      total += Branch(counts, t, cell + 1, weight * p);
      counts(cell) -= 1;
    }
    if (p < 1.0) total += Branch(counts, t, cell + 1, weight * (1.0 - p));
    return total;
  }

  const BernoulliEnvironment& env_;
  int horizon_;
};

std::optional<std::size_t> FirstRecorded(const RunRecord& run) {
  for (std::size_t k = 0; k < run.steps.size(); ++k) {
    if (!run.steps[k].skipped()) return k;
  }
  return std::nullopt;
}

}  // namespace

RegretReport EmpiricalRegret(const RunRecord& run, const OffsetGrid& grid) {
  if (run.steps.empty()) throw std::invalid_argument("empty transcript");
  RegretReport report;
  CountArray totals = CountArray::Zero(grid.rows(), grid.cols());
  for (const RunStep& s : run.steps) {
    if (s.skipped()) continue;
    if (!s.feedback->Matches(grid)) {
      throw std::invalid_argument("transcript feedback does not match the grid");
    }
    totals += s.feedback->bits.cast<std::int64_t>();
    report.learner_reward += s.reward ? 1 : 0;
    ++report.horizon;
  }
  // Column-major scan would pick a different tie; walk in grid order instead.
  GridIndex best{0, 0};
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (totals(i, j) > totals(best.aos, best.los)) best = {i, j};
    }
  }
  report.best_fixed_action = grid.At(best);
  report.best_fixed_reward = totals(best.aos, best.los);
  report.empirical_regret = report.best_fixed_reward - report.learner_reward;
  return report;
}

double ExpectedRegret(const BernoulliEnvironment& env, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (env.grid().size() * static_cast<std::size_t>(horizon) > kMaxEnumerationCells) {
    throw EnumerationTooLargeError(
        "exact enumeration needs |grid| * T <= " + std::to_string(kMaxEnumerationCells) +
        ", got " + std::to_string(env.grid().size()) + " * " + std::to_string(horizon));
  }
  RegretEnumerator walker(env, horizon);
  return horizon * env.probs().maxCoeff() - walker.ExpectedReward();
}

RunRecord RunSynthetic(const BernoulliEnvironment& env, const TieBreaker& tau,
                       std::int64_t horizon) {
  RunRecord run;
  LearnerState state = LearnerState::Initial(env.grid());
  OffsetPair action = FtlSelect(state, tau);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    RunStep step;
    step.cycle = static_cast<int>(t);
    step.action = action;
    step.feedback = BernoulliStep(env, t);
    const GridIndex idx = *env.grid().IndexOf(action);
    step.reward = step.feedback->bits(idx.aos, idx.los) != 0;
    state = Update(std::move(state), *step.feedback, action);
    action = FtlSelect(state, tau);
    step.next_action = action;
    run.steps.push_back(std::move(step));
  }
  return run;
}

std::int64_t CountMistakes(const RunRecord& run) {
  return std::count_if(run.steps.begin(), run.steps.end(),
                       [](const RunStep& s) { return !s.skipped() && !s.reward; });
}

std::int64_t MistakeBound(const ProbArray& probs) {
  return 1 + ((probs > 0.0) && (probs < 1.0)).count();
}

BernoulliEnvironment SampleSureActionInstance(std::uint64_t seed, int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
  random::Stream rng(seed);
  const auto rows = rng.Int(1, max_dim);
  const auto cols = rng.Int(1, max_dim);
  ProbArray probs(rows, cols);
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    if (rng.Bernoulli(0.25)) {
      probs(k) = 0.0;
    } else {
      double u = rng.Unit();
      while (u == 0.0) u = rng.Unit();
      probs(k) = u;
    }
  }
  probs(rng.Int(0, probs.size() - 1)) = 1.0;
  const std::vector<Duration> aos = GridLinspace(Seconds(0), Seconds(rows - 1), Seconds(1));
  const std::vector<Duration> los = GridLinspace(Seconds(0), Seconds(cols - 1), Seconds(1));
  return BernoulliEnvironment(OffsetGrid(aos, los), probs, rng.Word());
}

Estimate MonteCarloExpectedRegret(const OffsetGrid& grid, const ProbArray& probs,
                                  int horizon, std::int64_t runs, std::uint64_t seed) {
  if (runs < 2) throw std::invalid_argument("need at least two runs");
  const double best = horizon * probs.maxCoeff();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = random::KeyedWord({seed, static_cast<std::uint64_t>(r)});
    const BernoulliEnvironment env(grid, probs, run_seed);
    const RunRecord run = RunSynthetic(env, tie::UniformRandom{run_seed ^ 0x5bd1e995ULL},
                                       horizon);
    const double regret = best - static_cast<double>(horizon - CountMistakes(run));
    sum += regret;
    sum_sq += regret * regret;
  }
  const double n = static_cast<double>(runs);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

RunRecord RunOrbit(const ReplayEnvironment& env, const MissionRunConfig& config) {
  if (!env.grid().Contains(config.initial_action)) {
    throw std::invalid_argument("initial action " + ToString(config.initial_action) +
                                " is not on the offset grid");
  }
  RunRecord run;
  if (!env.passes().empty()) run.relative_orbit = env.passes().front().events.relative_orbit;

  LearnerState state = LearnerState::Initial(env.grid());
  PassHistory history;
  const std::uint64_t orbit_seed =
      random::KeyedWord({config.seed, static_cast<std::uint64_t>(run.relative_orbit)});

  auto select = [&]() -> OffsetPair {
    if (state.step == 1) return config.initial_action;
    switch (config.tie_breaker) {
      case TieBreakerKind::kUniformRandom:
        return FtlSelect(state, tie::UniformRandom{orbit_seed});
      case TieBreakerKind::kStay:
        return FtlSelect(state, tie::Stay{});
      case TieBreakerKind::kSafeMargin:
        break;
    }
    return FtlSelect(state, tie::SafeMargin{history, env.dump_duration()});
  };

  for (std::size_t k = 0; k < env.passes().size(); ++k) {
    const PassRecord& rec = env.passes()[k];
    RunStep step;
    step.cycle = rec.events.cycle;
    step.action = select();
    step.feedback = ReplayFeedback(env, k);
    if (step.feedback) {
      const GridIndex idx = *env.grid().IndexOf(step.action);
      bool feasible = true;
      try {
        ComputeDumpWindow(rec.events, step.action);
      } catch (const InfeasibleWindowError&) {
        feasible = false;
      }
      step.reward = feasible && step.feedback->bits(idx.aos, idx.los) != 0;
      state = Update(std::move(state), *step.feedback, step.action);
      history.emplace_back(rec.events, *rec.ground);
    }
    step.next_action = select();
    run.steps.push_back(std::move(step));
  }
  return run;
}

SavedPassReport SummarizeMission(const MissionDataset& dataset,
                                 const std::vector<RunRecord>& runs) {
  SavedPassReport r;
  r.total_passes = static_cast<std::int64_t>(dataset.records.size());
  for (const PassRecord& rec : dataset.records) {
    if (!rec.ground) continue;
    ++r.recorded_passes;
    if (rec.baseline_outcome == false) ++r.baseline_failures;
  }
  for (const RunRecord& run : runs) {
    const auto first = FirstRecorded(run);
    for (std::size_t k = 0; k < run.steps.size(); ++k) {
      const RunStep& s = run.steps[k];
      if (s.skipped() || s.reward) continue;
      ++r.learner_failures;
      if (k != first) ++r.learner_failures_after_first;
    }
  }
  r.saved = r.baseline_failures - r.learner_failures;
  if (r.baseline_failures > 0) {
    r.saved_fraction = static_cast<double>(r.saved) / static_cast<double>(r.baseline_failures);
  }
  return r;
}

MissionResult RunMission(const MissionDataset& dataset, const MissionRunConfig& config) {
  const auto by_orbit = dataset.ByOrbit();
  std::vector<ReplayEnvironment> envs;
  envs.reserve(by_orbit.size());
  for (const auto& [ron, recs] : by_orbit) {
    envs.emplace_back(config.grid, recs, config.dump_duration);
  }

  MissionResult result;
  result.runs.resize(envs.size());
  const std::size_t jobs =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(config.jobs, 1)), 1,
                              std::max<std::size_t>(envs.size(), 1));
  if (jobs == 1) {
    for (std::size_t k = 0; k < envs.size(); ++k) result.runs[k] = RunOrbit(envs[k], config);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < envs.size(); k += jobs) {
            result.runs[k] = RunOrbit(envs[k], config);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::map<PassKey, OffsetPair> selections;
  for (const RunRecord& run : result.runs) {
    for (const RunStep& s : run.steps) selections[{s.cycle, run.relative_orbit}] = s.action;
  }
  std::vector<PassEvents> events;
  events.reserve(dataset.records.size());
  for (const PassRecord& rec : dataset.records) events.push_back(rec.events);
  ScheduleResult sched = BuildSchedule(dataset.mission_id, events, selections);
  result.schedule = std::move(sched.schedule);
  result.issues = std::move(sched.issues);
  result.report = SummarizeMission(dataset, result.runs);
  return result;
}

std::vector<TraceRow> TraceRows(const RunRecord& run) {
  std::vector<TraceRow> rows;
  for (std::size_t k = 0; k < run.steps.size(); ++k) {
    const RunStep& s = run.steps[k];
    TraceRow row;
    row.relative_orbit = run.relative_orbit;
    row.cycle_step = static_cast<int>(k) + 1;
    row.cycle = s.cycle;
    if (!s.skipped()) {
      row.offsets = s.next_action;
      row.reward = s.reward;
      row.played = s.action;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TraceRow> TraceRows(const std::vector<RunRecord>& runs) {
  std::vector<TraceRow> rows;
  for (const RunRecord& run : runs) {
    auto part = TraceRows(run);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace dumpftl
