// Copyright 2026 The nolabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run and sweep scenario files, run the validation
// suite, and time the permanent kernel.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "nolabel/kernels.hpp"
#include "nolabel/random.hpp"
#include "nolabel/scenario/config.hpp"
#include "nolabel/scenario/pipeline.hpp"
#include "nolabel/scenario/report.hpp"
#include "nolabel/scenario/validate.hpp"

namespace {

using namespace nolabel;
using namespace nolabel::scenario;

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  int bench_min = 4;
  int bench_max = 20;
};

void write_records(const std::vector<RunRecord> &records, const Options &opt) {
  const auto format = parse_report_format(opt.format);
  if (!format) throw Error(ErrorCode::kInvalidArgument, "unknown format '" + opt.format + "' (expected csv or json)");
  if (opt.out.empty()) {
    std::cout << render_report(records, *format);
  } else {
    emit_report(records, *format, opt.out);
    std::cerr << "wrote " << records.size() << " record(s) to " << opt.out << "\n";
  }
}

int cmd_run(const Options &opt) {
  const auto cfg = load_scenario(opt.config);
  write_records({run_pipeline(cfg)}, opt);
  return 0;
}

int cmd_sweep(const Options &opt) {
  const auto cfg = load_scenario(opt.config);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  write_records(run_sweep(cfg, threads), opt);
  return 0;
}

int cmd_validate(const Options &opt) {
  const auto report = validate_suite(opt.seed);
  report.print(std::cout);
  return report.all_passed() ? 0 : 1;
}

int cmd_bench(const Options &opt) {
  RandomSource rng(opt.seed);
  std::printf("%4s %14s %24s\n", "n", "seconds", "|perm|");
  for (int n = opt.bench_min; n <= opt.bench_max; ++n) {
    const CMatrix m = rng.matrix(n, n);
    const auto t0 = std::chrono::steady_clock::now();
    const Complex p = permanent(m);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%4d %14.6f %24.12g\n", n, dt, std::abs(p));
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"nolabel: identical-particle scenarios in the no-label formalism"};
  app.require_subcommand(1);
  Options opt;

  auto add_report_flags = [&](CLI::App *sub) {
    sub->add_option("--out", opt.out, "Report path (stdout when omitted)");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "Seed (pipelines are deterministic; kept for uniform invocation)");
  };

  auto *run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", opt.config, "Scenario JSON file")->required();
  add_report_flags(run);

  auto *sweep = app.add_subcommand("sweep", "Run the sweep declared in a scenario");
  sweep->add_option("config", opt.config, "Scenario JSON file")->required();
  add_report_flags(sweep);
  sweep->add_option("--threads", opt.threads, "Worker threads (0 = detected)");

  auto *validate = app.add_subcommand("validate", "Run the seeded invariant checks");
  validate->add_option("--seed", opt.seed, "Random seed");

  auto *bench = app.add_subcommand("bench", "Time the permanent kernel");
  bench->add_option("--seed", opt.seed, "Random seed");
  bench->add_option("--min", opt.bench_min, "Smallest size")->check(CLI::Range(1, 24));
  bench->add_option("--max", opt.bench_max, "Largest size")->check(CLI::Range(1, 24));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*validate) return cmd_validate(opt);
    if (*bench) return cmd_bench(opt);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
