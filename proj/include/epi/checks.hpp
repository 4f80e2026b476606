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

// Grid verifications shared by the command-line driver and the acceptance
// run. A cell is a JSON object holding every input the check needs (caps,
// seed and sample count included), so a report record can be re-run from its
// own "input" field.

#ifndef EPI_CHECKS_HPP_
#define EPI_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace epi {

enum class CellStatus { kPass, kFail, kSkipped };
std::string status_name(CellStatus s);
CellStatus status_from_name(const std::string& s);

struct CellResult {
  std::string check;
  nlohmann::json input;
  nlohmann::json output = nlohmann::json::object();
  CellStatus status = CellStatus::kFail;
  std::string reason;  // why a cell was skipped or failed
  double seconds = 0;
  nlohmann::json to_json() const;
};

struct RunOptions {
  uint64_t cap_enum = 300000000;   // enumerated tuples per cell
  uint64_t cap_oracle = 1 << 21;   // coset oracle search space
  std::string cap_precision;       // series cap as "a/b"; empty means the default
  int cap_iter = 64;               // solver iterations
  int samples = -1;                // -1 keeps the per-cell default
  uint64_t seed = 20260101;
};

// verify-gauss, count-points, verify-lambda, lt-check, act-check, audit-dims
const std::vector<std::string>& check_names();

// Default grid of a check. Every default cell is feasible under the default
// caps, so a default run has no skipped cells.
std::vector<nlohmann::json> default_cells(const std::string& check, const RunOptions& opt);

// Cells from a grid object: either {"cells": [{...}, ...]} or lists under
// "p", "f", "m", "n", "r", "s" whose product is taken (a missing list means
// the check's default for that key). Options fill the remaining inputs.
std::vector<nlohmann::json> grid_cells(const std::string& check, const nlohmann::json& grid,
                                       const RunOptions& opt);

// Never throws for bad cells: invalid or infeasible inputs come back skipped
// with a reason.
CellResult run_cell(const std::string& check, const nlohmann::json& input, unsigned threads = 1);

}  // namespace epi

#endif  // EPI_CHECKS_HPP_
