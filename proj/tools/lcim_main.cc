// Copyright 2026 The LCIM Authors.
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

// lcim: generate instances, solve them, run the fixture suites, and solve
// cycle instances by dynamic programming.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lcim/branch_and_cut.h"
#include "lcim/generator.h"
#include "lcim/instance.h"
#include "lcim/special_cases.h"
#include "lcim/verify.h"

#ifndef LCIM_FIXTURE_DIR
#define LCIM_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string Short(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

// q from "<n>_<v>_<q>_<a>_<seed>.lcim", else -1.
double RewireFromName(const std::filesystem::path& path) {
  std::vector<std::string> parts;
  std::stringstream stem(path.stem().string());
  std::string part;
  while (std::getline(stem, part, '_')) parts.push_back(part);
  if (parts.size() != 5) return -1.0;
  try {
    size_t used = 0;
    const double q = std::stod(parts[2], &used);
    return used == parts[2].size() ? q : -1.0;
  } catch (const std::exception&) {
    return -1.0;
  }
}

int Threads() {
  const char* env = std::getenv("LCIM_THREADS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return std::max(1, value);
}

struct GenerateArgs {
  int n = 50;
  int v = 4;
  double q = 0.1;
  double a = 1.0;
  uint64_t seed = 0;
  int count = 1;
  std::string outdir = ".";
};

int RunGenerate(const GenerateArgs& args) {
  std::error_code ec;
  std::filesystem::create_directories(args.outdir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << args.outdir << ": " << ec.message()
              << "\n";
    return kExitIo;
  }
  for (int k = 0; k < args.count; ++k) {
    lcim::SmallWorldParams params;
    params.num_nodes = args.n;
    params.mean_degree = args.v;
    params.rewire = args.q;
    params.rate = args.a;
    params.seed = args.seed + static_cast<uint64_t>(k);
    lcim::Instance instance;
    try {
      instance = lcim::GenerateSmallWorld(params);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const std::string name = std::to_string(args.n) + "_" +
                             std::to_string(args.v) + "_" + Short(args.q) + "_" +
                             Short(args.a) + "_" +
                             std::to_string(params.seed) + ".lcim";
    const std::filesystem::path path = std::filesystem::path(args.outdir) / name;
    try {
      lcim::SaveInstance(instance, path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

struct SolveArgs {
  std::vector<std::string> paths;
  std::string mode = "def";
  double time_limit = 3600.0;
  int rounds = 50;
  std::string branch = "hybrid";
  uint64_t seed = 0;
  std::string format = "tsv";
  std::string out;
};

struct Record {
  bool ok = false;
  std::string error;
  int code = kExitOk;
  lcim::Instance instance;
  lcim::SolveReport report;
};

std::string AverageLine(const std::vector<Record>& records, const SolveArgs& args) {
  double nodes = 0, cuts = 0, seconds = 0, gap = 0;
  int count = 0, unsolved = 0;
  for (const Record& r : records) {
    if (!r.ok) continue;
    ++count;
    nodes += static_cast<double>(r.report.nodes);
    cuts += r.report.cuts_total();
    if (r.report.status == lcim::SolveStatus::kOptimal) {
      seconds += r.report.seconds;
    } else {
      ++unsolved;
      gap += r.report.gap;
    }
  }
  if (count == 0) return "";
  const int solved = count - unsolved;
  std::ostringstream out;
  if (args.format == "tsv") {
    out << "average\t" << args.mode << "\t" << count << "\t"
        << Short(nodes / count) << "\t" << Short(cuts / count) << "\t"
        << (solved ? Short(seconds / solved) : "-") << "\t"
        << (unsolved ? "[" + Short(gap / unsolved) + "]" : "-") << "\t"
        << std::string(unsolved, '*');
  } else {
    out << "average over " << count << ": nodes " << Short(nodes / count)
        << ", cuts " << Short(cuts / count) << ", time "
        << (solved ? Short(seconds / solved) : "-");
    if (unsolved) out << " [" << Short(gap / unsolved) << "]" << std::string(unsolved, '*');
  }
  return out.str();
}

int RunSolve(const SolveArgs& args) {
  const std::optional<lcim::Mode> mode = lcim::ParseMode(args.mode);
  if (!mode) {
    std::cerr << "error: unknown mode " << args.mode << "\n";
    return kExitUsage;
  }
  lcim::SolveParams params;
  params.time_limit = args.time_limit;
  params.max_rounds = args.rounds;
  params.branch_rule = *lcim::ParseBranchRule(args.branch);
  params.seed = args.seed;

  std::vector<Record> records(args.paths.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < args.paths.size(); k = next++) {
      Record& r = records[k];
      try {
        r.instance = lcim::LoadInstance(args.paths[k]);
      } catch (const std::exception& e) {
        r.error = e.what();
        r.code = kExitIo;
        continue;
      }
      try {
        r.report = lcim::Solve(r.instance, *mode, params);
        r.ok = true;
      } catch (const std::invalid_argument& e) {
        r.error = e.what();
        r.code = kExitUsage;
      } catch (const std::exception& e) {
        r.error = e.what();
        r.code = kExitVerify;
      }
    }
  };
  const int threads =
      std::min<int>(Threads(), static_cast<int>(std::max<size_t>(1, args.paths.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::ofstream file;
  bool header = args.format == "tsv";
  if (!args.out.empty()) {
    std::error_code ec;
    header &= !std::filesystem::exists(args.out, ec) ||
              std::filesystem::file_size(args.out, ec) == 0;
    file.open(args.out, std::ios::app);
    if (!file) {
      std::cerr << "error: cannot open " << args.out << "\n";
      return kExitIo;
    }
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  if (header) out << lcim::TsvHeader() << "\n";
  int status = kExitOk;
  for (size_t k = 0; k < records.size(); ++k) {
    const Record& r = records[k];
    const std::string id = std::filesystem::path(args.paths[k]).filename().string();
    if (!r.ok) {
      out << (args.format == "tsv" ? id + "\terror\t" + r.error
                                   : "instance   " + id + "\nerror      " + r.error)
          << "\n";
      status = std::max(status, r.code);
      continue;
    }
    if (args.format == "tsv") {
      out << lcim::FormatTsv(r.report, r.instance, id, RewireFromName(args.paths[k]))
          << "\n";
    } else {
      out << lcim::FormatText(r.report, r.instance, id) << "\n";
    }
  }
  if (records.size() > 1) {
    const std::string average = AverageLine(records, args);
    if (!average.empty()) out << average << "\n";
  }
  return status;
}

int RunVerify(const std::string& fixtures) {
  bool ok = true;
  for (const lcim::SuiteResult& suite : lcim::RunAllSuites(fixtures)) {
    std::cout << (suite.ok() ? "PASS " : "FAIL ") << suite.name << ": "
              << suite.passed << "/" << suite.total << "\n";
    for (const std::string& failure : suite.failures) {
      std::cout << "  " << failure << "\n";
    }
    ok &= suite.ok();
  }
  return ok ? kExitOk : kExitVerify;
}

int RunDpCycle(const std::string& path, int64_t b, bool chain) {
  lcim::Instance instance;
  try {
    instance = lcim::LoadInstance(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  if (b <= 0) b = instance.coverage();
  try {
    const lcim::CyclePlan plan = chain ? lcim::DpCycleSingleChain(instance, b)
                                       : lcim::DpCycle(instance, b);
    std::cout << "start " << plan.start + 1 << "\n"
              << "direction " << lcim::DirectionName(plan.direction) << "\n"
              << "b " << plan.b << "\n"
              << "cost " << plan.cost << "\n"
              << "order";
    for (int i : plan.order) std::cout << ' ' << i + 1;
    std::cout << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact least cost influence maximization"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write small-world instances");
  generate->add_option("--n", gen.n, "Nodes")->check(CLI::PositiveNumber);
  generate->add_option("--v", gen.v, "Mean degree (even)");
  generate->add_option("--q", gen.q, "Rewiring probability");
  generate->add_option("--a", gen.a, "Penetration rate");
  generate->add_option("--seed", gen.seed, "First seed");
  generate->add_option("--count", gen.count, "Instances to write")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--outdir", gen.outdir, "Output directory");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve instance files");
  solve_cmd->add_option("paths", solve.paths, "Instance files")->required();
  solve_cmd->add_option("--mode", solve.mode, "def, cb or ln")
      ->check(CLI::IsMember({"def", "cb", "ln"}));
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds per instance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--rounds", solve.rounds, "Root cut rounds")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--branch", solve.branch,
                        "fractional, zfirst, pseudocost or hybrid")
      ->check(CLI::IsMember({"fractional", "zfirst", "pseudocost", "hybrid"}));
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--format", solve.format, "tsv or text")
      ->check(CLI::IsMember({"tsv", "text"}));
  solve_cmd->add_option("--out", solve.out, "Append records to this file");

  std::string fixtures = LCIM_FIXTURE_DIR;
  CLI::App* verify = app.add_subcommand("verify", "Run the fixture suites");
  verify->add_option("--fixtures", fixtures, "Fixture directory");

  std::string cycle_path;
  int64_t cycle_b = 0;
  bool chain = false;
  CLI::App* dp = app.add_subcommand("dp-cycle", "Solve a simple cycle exactly");
  dp->add_option("path", cycle_path, "Instance file")->required();
  dp->add_option("--b", cycle_b, "Coverage (default: from the file)");
  dp->add_flag("--single-chain", chain, "Use the single-chain recursion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (generate->parsed()) return RunGenerate(gen);
  if (solve_cmd->parsed()) return RunSolve(solve);
  if (verify->parsed()) return RunVerify(fixtures);
  if (dp->parsed()) return RunDpCycle(cycle_path, cycle_b, chain);
  return kExitUsage;
}
