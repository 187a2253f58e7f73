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

// dumpftl: generate synthetic missions, replay them through per-orbit FTL
// learners, benchmark the synthetic protocol, and re-emit traces.
//
// Exit codes: 0 success, 2 usage error, 3 input error, 4 bench violation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dumpftl/dataset.hpp"
#include "dumpftl/eval.hpp"
#include "dumpftl/io.hpp"
#include "dumpftl/random.hpp"

namespace fs = std::filesystem;
using namespace dumpftl;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitViolation = 4;

// Error that maps onto a process exit code.
struct ExitError {
  int code;
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError{kExitInput, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw ExitError{kExitInput, "cannot write '" + path.string() + "'"};
}

Duration SecondsFlag(const std::string& text, const char* flag) {
  const auto d = ParseSeconds(text);
  if (!d || *d < Duration{}) {
    throw ExitError{kExitUsage, std::string("--") + flag + ": expected non-negative seconds, got '" +
                                    text + "'"};
  }
  return *d;
}

// Mission settings that several subcommands accept as flags. Strings stay
// empty unless given so they can override a config file.
struct MissionFlags {
  std::string grid_aos_min, grid_aos_max, grid_aos_step;
  std::string grid_los_min, grid_los_max, grid_los_step;
  std::string baseline_aos, baseline_los, dump_duration;
  std::string tie_breaker;

  void Register(CLI::App* app) {
    app->add_option("--grid-aos-min", grid_aos_min, "AOS offset grid minimum [s]");
    app->add_option("--grid-aos-max", grid_aos_max, "AOS offset grid maximum [s]");
    app->add_option("--grid-aos-step", grid_aos_step, "AOS offset grid step [s]");
    app->add_option("--grid-los-min", grid_los_min, "LOS offset grid minimum [s]");
    app->add_option("--grid-los-max", grid_los_max, "LOS offset grid maximum [s]");
    app->add_option("--grid-los-step", grid_los_step, "LOS offset grid step [s]");
    app->add_option("--baseline-aos", baseline_aos, "baseline / initial AOS offset [s]");
    app->add_option("--baseline-los", baseline_los, "baseline / initial LOS offset [s]");
    app->add_option("--dump-duration", dump_duration, "required dump length [s]");
    app->add_option("--tie-breaker", tie_breaker, "uniform | stay | safe-margin");
  }

  void Apply(io::MissionConfig& c) const {
    auto set = [](const std::string& v, Duration& d, const char* flag) {
      if (!v.empty()) d = SecondsFlag(v, flag);
    };
    set(grid_aos_min, c.grid_aos_min, "grid-aos-min");
    set(grid_aos_max, c.grid_aos_max, "grid-aos-max");
    set(grid_aos_step, c.grid_aos_step, "grid-aos-step");
    set(grid_los_min, c.grid_los_min, "grid-los-min");
    set(grid_los_max, c.grid_los_max, "grid-los-max");
    set(grid_los_step, c.grid_los_step, "grid-los-step");
    set(baseline_aos, c.baseline.aos_offset, "baseline-aos");
    set(baseline_los, c.baseline.los_offset, "baseline-los");
    set(dump_duration, c.dump_duration, "dump-duration");
    if (!tie_breaker.empty()) {
      const auto k = ParseTieBreakerKind(tie_breaker);
      if (!k) throw ExitError{kExitUsage, "--tie-breaker: unknown rule '" + tie_breaker + "'"};
      c.tie_breaker = *k;
    }
  }
};

OffsetGrid GridOf(const io::MissionConfig& c) {
  try {
    return c.Grid();
  } catch (const std::invalid_argument& e) {
    throw ExitError{kExitUsage, std::string("invalid offset grid: ") + e.what()};
  }
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string out_dir;
  std::uint64_t seed = kCalibratedSeed;
  int cycles = 6;
  int orbits = 127;
  int first_cycle = 6;
  double corruption = GeneratorConfig{}.corruption_probability;
  double missing = 0.0;
  std::string mission_id = "S6-SYNTH";
  MissionFlags mission;
};

int CmdGenerate(const GenerateArgs& a) {
  io::MissionConfig mc;
  mc.mission_id = a.mission_id;
  mc.orbits_per_cycle = a.orbits;
  mc.first_cycle = a.first_cycle;
  mc.cycles = a.cycles;
  mc.seed = a.seed;
  a.mission.Apply(mc);
  GridOf(mc);

  GeneratorConfig g;
  g.seed = a.seed;
  g.mission_id = a.mission_id;
  g.cycles = a.cycles;
  g.orbits_per_cycle = a.orbits;
  g.first_cycle = a.first_cycle;
  g.corruption_probability = a.corruption;
  g.missing_probability = a.missing;
  g.baseline = mc.baseline;
  g.dump_duration = mc.dump_duration;
  g.lock_jitter_max = std::min({g.lock_jitter_max, mc.baseline.aos_offset,
                                mc.baseline.los_offset});

  MissionDataset ds;
  try {
    ds = GenerateDataset(g);
  } catch (const std::invalid_argument& e) {
    throw ExitError{kExitUsage, e.what()};
  }

  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteFile(dir / "events.csv", io::EmitEventsCsv(io::EventsOf(ds)));
  WriteFile(dir / "telemetry.csv", io::EmitTelemetryCsv(io::TelemetryOf(ds)));
  WriteFile(dir / "mission.cfg", io::EmitMissionConfig(mc));

  std::int64_t recorded = 0, failures = 0;
  for (const PassRecord& r : ds.records) {
    recorded += r.ground ? 1 : 0;
    failures += r.baseline_outcome == false ? 1 : 0;
  }
  std::cout << "mission " << ds.mission_id << ": " << ds.records.size() << " passes, "
            << recorded << " recorded, " << failures << " baseline failures with offsets "
            << ToString(mc.baseline) << "\n";
  return 0;
}

// --- replay ------------------------------------------------------------------

struct ReplayArgs {
  std::string events, telemetry, config, out_dir;
  int jobs = 1;
  MissionFlags mission;
};

int CmdReplay(const ReplayArgs& a) {
  // Everything is parsed and computed before the first output is written.
  io::MissionConfig mc;
  MissionDataset ds;
  try {
    mc = io::ParseMissionConfig(ReadFile(a.config));
    a.mission.Apply(mc);
    auto events = io::ParseEventsCsv(ReadFile(a.events));
    auto telemetry = io::ParseTelemetryCsv(ReadFile(a.telemetry));
    ds = io::MergeDataset(mc.mission_id, mc.orbits_per_cycle, std::move(events), telemetry);
  } catch (const io::ParseError& e) {
    throw ExitError{kExitInput, e.what()};
  } catch (const std::invalid_argument& e) {
    throw ExitError{kExitInput, e.what()};
  }
  AnnotateBaseline(ds, mc.baseline, mc.dump_duration);

  MissionRunConfig run;
  run.grid = GridOf(mc);
  run.tie_breaker = mc.tie_breaker;
  run.dump_duration = mc.dump_duration;
  run.initial_action = mc.baseline;
  run.seed = mc.seed;
  run.jobs = a.jobs;
  if (!run.grid.Contains(run.initial_action)) {
    throw ExitError{kExitUsage, "baseline offsets " + ToString(run.initial_action) +
                                    " are not on the offset grid"};
  }
  const MissionResult result = RunMission(ds, run);

  const std::string schedule = io::EmitSchedule(result.schedule);
  const std::string traces = io::EmitTraceCsv(TraceRows(result.runs));
  const std::string metrics = io::EmitMetrics(result.report, ds.mission_id, mc.tie_breaker);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteFile(dir / "schedule.csv", schedule);
  WriteFile(dir / "traces.csv", traces);
  WriteFile(dir / "metrics.json", metrics);

  for (const ScheduleIssue& issue : result.issues) {
    std::cerr << "warning: cycle " << issue.key.cycle << " ron " << issue.key.relative_orbit
              << ": " << issue.message << "\n";
  }
  const SavedPassReport& r = result.report;
  std::cout << "replayed " << r.total_passes << " passes (" << r.recorded_passes
            << " recorded): baseline failures " << r.baseline_failures
            << ", learner failures " << r.learner_failures << ", saved " << r.saved;
  if (r.saved_fraction) std::cout << " (" << *r.saved_fraction * 100.0 << "%)";
  std::cout << "\n";
  return 0;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
  std::string probs;
  int instances = 10;
  int max_dim = 5;
  int horizon = 500;
  std::int64_t runs = 1000;
  std::uint64_t seed = 1;
  std::string tie_breaker = "uniform";
  bool exact = false;
  std::int64_t mc_runs = 0;
  std::string out;
};

ProbArray ParseProbs(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<double> cells;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      try {
        std::size_t used = 0;
        cells.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ExitError{kExitUsage, "--probs: malformed probability '" + cell + "'"};
      }
    }
    if (!rows.empty() && cells.size() != rows.front().size()) {
      throw ExitError{kExitUsage, "--probs: rows must have equal length"};
    }
    rows.push_back(cells);
  }
  if (rows.empty() || rows.front().empty()) throw ExitError{kExitUsage, "--probs: empty"};
  ProbArray p(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) p(i, j) = rows[i][j];
  }
  return p;
}

int CmdBench(const BenchArgs& a) {
  TieBreaker tau = tie::UniformRandom{a.seed};
  if (a.tie_breaker == "stay") {
    tau = tie::Stay{};
  } else if (a.tie_breaker != "uniform") {
    throw ExitError{kExitUsage, "--tie-breaker: bench supports uniform | stay"};
  }

  std::vector<BernoulliEnvironment> instances;
  if (!a.probs.empty()) {
    const ProbArray p = ParseProbs(a.probs);
    try {
      instances.emplace_back(
          OffsetGrid(GridLinspace(Seconds(0), Seconds(p.rows() - 1), Seconds(1)),
                     GridLinspace(Seconds(0), Seconds(p.cols() - 1), Seconds(1))),
          p, a.seed);
    } catch (const std::invalid_argument& e) {
      throw ExitError{kExitUsage, std::string("--probs: ") + e.what()};
    }
  } else {
    for (int k = 0; k < a.instances; ++k) {
      instances.push_back(SampleSureActionInstance(
          random::KeyedWord({a.seed, static_cast<std::uint64_t>(k)}), a.max_dim));
    }
  }

  bool violation = false;
  nlohmann::json report = nlohmann::json::array();
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const BernoulliEnvironment& inst = instances[k];
    const bool bound_applies = (inst.probs() == 1.0).any();
    const std::int64_t bound = MistakeBound(inst.probs());
    std::int64_t max_mistakes = 0, bound_violations = 0;
    double regret_sum = 0.0;
    for (std::int64_t r = 0; r < a.runs; ++r) {
      const BernoulliEnvironment env(
          inst.grid(), inst.probs(),
          random::KeyedWord({inst.seed(), static_cast<std::uint64_t>(r)}));
      TieBreaker run_tau = tau;
      if (auto* u = std::get_if<tie::UniformRandom>(&run_tau)) {
        u->seed = random::KeyedWord({a.seed, k, static_cast<std::uint64_t>(r)});
      }
      const RunRecord run = RunSynthetic(env, run_tau, a.horizon);
      const std::int64_t mistakes = CountMistakes(run);
      max_mistakes = std::max(max_mistakes, mistakes);
      if (bound_applies && mistakes > bound) ++bound_violations;
      regret_sum += static_cast<double>(EmpiricalRegret(run, inst.grid()).empirical_regret);
    }
    nlohmann::json entry = {
        {"instance", k},
        {"rows", inst.grid().rows()},
        {"cols", inst.grid().cols()},
        {"horizon", a.horizon},
        {"runs", a.runs},
        {"mean_empirical_regret", a.runs > 0 ? regret_sum / a.runs : 0.0},
        {"max_mistakes", max_mistakes},
        {"mistake_bound", bound_applies ? nlohmann::json(bound) : nlohmann::json(nullptr)},
        {"bound_violations", bound_violations},
    };
    violation = violation || bound_violations > 0;

    const bool small =
        inst.grid().size() * static_cast<std::size_t>(a.horizon) <= kMaxEnumerationCells;
    if (a.exact && !small) {
      throw ExitError{kExitUsage, "--exact: instance " + std::to_string(k) +
                                      " exceeds the enumeration limit |grid| * T <= " +
                                      std::to_string(kMaxEnumerationCells)};
    }
    if (a.exact) {
      const double exact = ExpectedRegret(inst, a.horizon);
      entry["expected_regret"] = exact;
      if (a.mc_runs > 1) {
        const Estimate mc = MonteCarloExpectedRegret(inst.grid(), inst.probs(), a.horizon,
                                                     a.mc_runs, inst.seed());
        const bool agree = std::abs(mc.mean - exact) <= 3.0 * mc.std_error + 1e-12;
        entry["monte_carlo"] = {{"mean", mc.mean}, {"std_error", mc.std_error},
                                {"within_3_sigma", agree}};
        violation = violation || !agree;
      }
    }
    report.push_back(entry);
  }

  const std::string text = report.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    WriteFile(a.out, text);
  }
  if (violation) {
    std::cerr << "bench: violation detected\n";
    return kExitViolation;
  }
  return 0;
}

// --- trace -------------------------------------------------------------------

struct TraceArgs {
  std::string traces;
  int ron = 0;
  std::string out;
};

int CmdTrace(const TraceArgs& a) {
  std::vector<TraceRow> rows;
  try {
    rows = io::ParseTraceCsv(ReadFile(a.traces));
  } catch (const io::ParseError& e) {
    throw ExitError{kExitInput, e.what()};
  }
  std::vector<TraceRow> selected;
  for (const TraceRow& r : rows) {
    if (r.relative_orbit == a.ron) selected.push_back(r);
  }
  const std::string text = io::EmitTraceCsv(selected);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    WriteFile(a.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Follow-The-Leader memory-dump offset optimization"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a seeded synthetic mission");
  g->add_option("--out-dir", gen.out_dir, "output directory")->required();
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--cycles", gen.cycles, "number of cycles")->check(CLI::PositiveNumber);
  g->add_option("--orbits", gen.orbits, "relative orbits per cycle")->check(CLI::PositiveNumber);
  g->add_option("--first-cycle", gen.first_cycle, "first cycle number")
      ->check(CLI::PositiveNumber);
  g->add_option("--corruption", gen.corruption, "per-pass lock anomaly probability")
      ->check(CLI::Range(0.0, 1.0));
  g->add_option("--missing", gen.missing, "probability a pass is unrecorded")
      ->check(CLI::Range(0.0, 1.0));
  g->add_option("--mission-id", gen.mission_id, "mission identifier");
  gen.mission.Register(g);

  ReplayArgs rep;
  auto* r = app.add_subcommand("replay", "replay a mission through per-orbit learners");
  r->add_option("--events", rep.events, "events CSV")->required();
  r->add_option("--telemetry", rep.telemetry, "telemetry CSV")->required();
  r->add_option("--config", rep.config, "mission config")->required();
  r->add_option("--out-dir", rep.out_dir, "output directory")->required();
  r->add_option("--jobs", rep.jobs, "worker threads")->check(CLI::PositiveNumber);
  rep.mission.Register(r);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "synthetic Bernoulli experiments");
  b->add_option("--probs", bench.probs, "explicit instance, rows ';' cells ','");
  b->add_option("--instances", bench.instances, "random instances")
      ->check(CLI::PositiveNumber);
  b->add_option("--max-dim", bench.max_dim, "max grid side for random instances")
      ->check(CLI::PositiveNumber);
  b->add_option("--horizon", bench.horizon, "steps per run")->check(CLI::PositiveNumber);
  b->add_option("--runs", bench.runs, "seeded runs per instance")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed, "seed");
  b->add_option("--tie-breaker", bench.tie_breaker, "uniform | stay");
  b->add_flag("--exact", bench.exact, "exact expected regret by enumeration");
  b->add_option("--mc-runs", bench.mc_runs, "Monte Carlo runs checked against --exact");
  b->add_option("--out", bench.out, "write JSON here instead of stdout");

  TraceArgs tr;
  auto* t = app.add_subcommand("trace", "re-emit one orbit's trace");
  t->add_option("--traces", tr.traces, "traces CSV from replay")->required();
  t->add_option("--ron", tr.ron, "relative orbit")->required();
  t->add_option("--out", tr.out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (g->parsed()) return CmdGenerate(gen);
    if (r->parsed()) return CmdReplay(rep);
    if (b->parsed()) return CmdBench(bench);
    if (t->parsed()) return CmdTrace(tr);
  } catch (const ExitError& e) {
    std::cerr << "dumpftl: " << e.message << "\n";
    return e.code;
  }
  return kExitUsage;
}
