// Copyright 2026 The epipelagic Authors.
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

// Batch driver: one report record per grid cell, JSON lines or CSV.
//
// Exit codes: 0 every cell passed, 1 some cell failed, 2 no failures but
// some cell was skipped as infeasible or invalid, 64 bad usage or input.
// In check mode, 0 means every record reproduced its status and 1 means at
// least one did not.

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "epi/checks.hpp"
#include "json.hpp"

namespace {

using epi::CellResult;
using epi::CellStatus;
using nlohmann::json;

constexpr int kExitPass = 0, kExitFail = 1, kExitSkipped = 2, kExitUsage = 64;

struct Job {
  std::string check;
  json input;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

class Writer {
 public:
  Writer(std::ostream& os, bool csv) : os_(os), csv_(csv) {
    if (csv_) os_ << "check,input,status,seconds,reason\n";
  }
  void write(const CellResult& r, const json& extra = json::object()) {
    if (csv_) {
      os_ << r.check << ',' << csv_escape(r.input.dump()) << ',' << epi::status_name(r.status) << ','
          << r.seconds << ',' << csv_escape(r.reason) << '\n';
    } else {
      json j = r.to_json();
      for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
      os_ << j.dump() << '\n';
    }
    os_.flush();
  }

 private:
  std::ostream& os_;
  bool csv_;
};

// Workers take cells in order; the writer emits results in cell order as
// soon as each prefix is complete, so output is independent of the thread
// count and long grids still stream.
std::vector<CellResult> run_jobs(const std::vector<Job>& jobs, unsigned threads,
                                 const std::function<void(size_t, const CellResult&)>& emit) {
  std::vector<std::optional<CellResult>> done(jobs.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < jobs.size();) {
      CellResult r = epi::run_cell(jobs[i].check, jobs[i].input, 1);
      std::lock_guard<std::mutex> lock(mu);
      done[i] = std::move(r);
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  unsigned t = std::max(1u, std::min<unsigned>(threads, unsigned(jobs.size())));
  for (unsigned w = 0; w < t; ++w) pool.emplace_back(worker);
  std::vector<CellResult> results;
  for (size_t i = 0; i < jobs.size(); ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return done[i].has_value(); });
    results.push_back(*done[i]);
    lock.unlock();
    emit(i, results.back());
  }
  for (auto& th : pool) th.join();
  return results;
}

int summarize(const std::vector<CellResult>& results) {
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& r : results) {
    if (r.status == CellStatus::kPass) ++pass;
    else if (r.status == CellStatus::kFail) ++fail;
    else ++skipped;
  }
  std::cerr << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
  if (fail) return kExitFail;
  if (skipped) return kExitSkipped;
  return kExitPass;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifications for simple epipelagic local Langlands and Jacquet-Langlands data"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "epi 1.0.0");

  epi::RunOptions opt;
  std::string grid_file, format = "jsonl", out_path;
  unsigned threads = 1;
  app.add_option("--grid", grid_file, "JSON grid file: lists under p, f, m, n, r, s or {\"cells\": [...]}; "
                                       "for 'all' it may be keyed by check name")
      ->envname("EPI_GRID")
      ->check(CLI::ExistingFile);
  app.add_option("--cap-enum", opt.cap_enum, "enumeration cap (tuples per cell)")
      ->envname("EPI_CAP_ENUM")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap-oracle", opt.cap_oracle, "search-space cap of the coset oracle")
      ->envname("EPI_CAP_ORACLE")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap-precision", opt.cap_precision, "series precision cap, integer or a/b")
      ->envname("EPI_CAP_PRECISION");
  app.add_option("--cap-iter", opt.cap_iter, "solver iteration cap")
      ->envname("EPI_CAP_ITER")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", opt.samples, "sample count for sampled checks (overrides the grid)")
      ->envname("EPI_SAMPLES")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "seed of all sampling")->envname("EPI_SEED")->capture_default_str();
  app.add_option("--format", format, "report format")
      ->envname("EPI_FORMAT")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads over grid cells")
      ->envname("EPI_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_path, "report path (default stdout)")->envname("EPI_OUT");

  std::vector<CLI::App*> subs;
  for (const auto& name : epi::check_names()) subs.push_back(app.add_subcommand(name, "run the " + name + " grid"));
  CLI::App* all = app.add_subcommand("all", "run every check on its grid");
  std::string report_path;
  CLI::App* check_mode = app.add_subcommand("check", "re-run the inputs of a JSONL report and compare statuses");
  check_mode->add_option("report", report_path, "report file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitUsage;
    }
  }
  std::ostream& os = out_path.empty() ? std::cout : file;
  Writer writer(os, format == "csv");

  try {
    std::vector<Job> jobs;
    if (check_mode->parsed()) {
      std::ifstream in(report_path);
      std::vector<std::string> expected;
      for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        jobs.push_back({rec.at("check").get<std::string>(), rec.at("input")});
        expected.push_back(rec.at("status").get<std::string>());
      }
      int mismatches = 0;
      run_jobs(jobs, threads, [&](size_t i, const CellResult& r) {
        bool same = epi::status_name(r.status) == expected[i];
        mismatches += !same;
        writer.write(r, {{"reproduced", same}, {"expected_status", expected[i]}});
      });
      std::cerr << jobs.size() - mismatches << " of " << jobs.size() << " records reproduced\n";
      return mismatches ? kExitFail : kExitPass;
    }

    json grid = grid_file.empty() ? json() : load_json(grid_file);
    std::vector<std::string> checks;
    if (all->parsed()) {
      checks = epi::check_names();
    } else {
      for (CLI::App* s : subs)
        if (s->parsed()) checks.push_back(s->get_name());
    }
    for (const auto& c : checks) {
      std::vector<json> cells;
      if (grid.is_null()) {
        cells = epi::default_cells(c, opt);
      } else if (grid.contains(c)) {
        cells = epi::grid_cells(c, grid[c], opt);
      } else if (all->parsed()) {
        cells = epi::default_cells(c, opt);
      } else {
        cells = epi::grid_cells(c, grid, opt);
      }
      for (auto& cell : cells) jobs.push_back({c, cell});
    }
    auto results = run_jobs(jobs, threads, [&](size_t, const CellResult& r) { writer.write(r); });
    return summarize(results);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
