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

// Acceptance run: one PASS/FAIL line per criterion, each with its wall time
// against its budget. Exit status is nonzero when any line fails.

#include <array>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "epi/artin_schreier.hpp"
#include "epi/checks.hpp"
#include "epi/correspondence.hpp"
#include "epi/quadratic_gauss.hpp"

namespace {

using epi::CellResult;
using epi::CellStatus;
using nlohmann::json;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) out.require(false, "over budget");
  bool pass = out.ok;
  failures += !pass;
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << std::fixed
            << std::setprecision(1) << secs << "s of " << budget_s << "s) " << out.detail.str() << std::endl;
}

std::string cell_key(const json& in) {
  std::ostringstream os;
  for (const char* k : {"p", "m", "f", "r", "s", "n"})
    if (in.contains(k)) os << k << "=" << in[k] << " ";
  return os.str();
}

std::vector<CellResult> run_all(const std::string& check, const std::vector<json>& cells) {
  std::vector<CellResult> out;
  for (const auto& c : cells) out.push_back(epi::run_cell(check, c));
  return out;
}

}  // namespace

int main() {
  const epi::RunOptions opt;

  criterion(1, "quadratic-form Gauss sum equals det class times g(psi)^r", 60, [&](Outcome& o) {
    auto res = run_all("verify-gauss", epi::default_cells("verify-gauss", opt));
    int chars = 0;
    for (const auto& r : res) {
      o.require(r.status != CellStatus::kSkipped, "skipped " + cell_key(r.input) + r.reason);
      o.require(r.output.value("closed_form", false), "closed form at " + cell_key(r.input));
      chars += r.output.value("characters", 0);
    }
    o.detail << res.size() << " cells, " << chars << " characters";
  });

  criterion(2, "g(psi)^2 = (-1/q) q", 5, [&](Outcome& o) {
    int count = 0;
    for (uint32_t p : {3u, 5u, 7u, 11u})
      for (uint32_t f : {1u, 2u}) {
        epi::FieldPtr k = epi::build_field(p, f);
        auto target = epi::CyclotomicInt::integer(p, epi::BigInt(epi::minus_one_symbol(k->q())) * epi::BigInt(k->q()));
        for (epi::Elt b = 1; b < k->q(); ++b) {
          auto g = epi::gauss_sum_char(epi::AdditiveCharacter(k, b), *k);
          o.require(g * g == target, "q=" + std::to_string(k->q()));
          ++count;
        }
      }
    o.detail << count << " characters";
  });

  std::vector<json> odd_cells, even_cells;
  for (const auto& c : epi::default_cells("count-points", opt))
    (c["p"] == 2 ? even_cells : odd_cells).push_back(c);

  criterion(3, "odd-p point counts match the Lefschetz prediction", 300, [&](Outcome& o) {
    auto res = run_all("count-points", odd_cells);
    for (const auto& r : res) o.require(r.status == CellStatus::kPass, cell_key(r.input) + r.reason);
    epi::ASVarietySpec a{3, 1, 1, 1}, b{5, 1, 1, 2};
    o.require(epi::count_Xw(a, 1) == 3, "#X(F_3) = 3");
    o.require(epi::count_Xw(b, 1) == 5, "#X(F_5) = 5");
    o.detail << res.size() << " cells";
  });

  std::vector<std::pair<epi::ASVarietySpec, int>> even;
  for (const auto& c : even_cells)
    even.push_back({epi::ASVarietySpec{2, c["m"].get<uint32_t>(), c["f"].get<uint32_t>(), c["r"].get<int>()},
                    c["s"].get<int>()});
  std::vector<int64_t> even_counts;

  criterion(4, "p = 2 point counts match q^{rs} + (2^m - 1)(q^s/(r+1)) q^{sr'}", 600, [&](Outcome& o) {
    for (const auto& [spec, s] : even) {
      int64_t c = epi::count_Xw(spec, s, opt.cap_enum);
      even_counts.push_back(c);
      o.require(c == epi::predict_count_even(spec, s), spec.str() + " s=" + std::to_string(s));
    }
    epi::ASVarietySpec f2{2, 1, 1, 2}, f4{2, 1, 2, 2};
    o.require(epi::count_Xw(f2, 1) == 2, "2 points over F_2");
    o.require(epi::count_Xw(f4, 1) == 20, "20 points over F_4");
    o.detail << even.size() << " cells";
  });

  criterion(5, "p = 2 census: X' count and strata total agree", 60, [&](Outcome& o) {
    o.require(even_counts.size() == even.size(), "criterion 4 did not finish");
    for (size_t i = 0; i < even_counts.size(); ++i) {
      const auto& [spec, s] = even[i];
      int64_t xp = epi::count_Xprime(spec, s, opt.cap_enum);
      auto cen = epi::stratum_census(spec, s, opt.cap_enum);
      o.require(xp == even_counts[i], "X' vs X at " + spec.str());
      o.require(cen.total == xp, "census total at " + spec.str());
    }
    for (int r = 2; r <= 20; r += 2)
      o.require((epi::compute_Nr(r) % 2 ? -1 : 1) == epi::jacobi(2, r + 1), "N_r parity r=" + std::to_string(r));
    o.detail << even.size() << " cells, r <= 20 parities";
  });

  criterion(6, "three-part Gauss-sum and lambda identity", 120, [&](Outcome& o) {
    int cells = 0;
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u})
      for (uint32_t f : {1u, 2u})
        for (int n = 2; n <= 12; ++n) {
          if (n % int(p) == 0) continue;
          auto rep = epi::verify_prop_ky(p, f, n);
          o.require(rep.pass(), rep.to_json().dump());
          ++cells;
        }
    o.detail << cells << " cells";
  });

  const std::vector<std::array<int, 3>> lt = {{3, 1, 2}, {3, 1, 4}, {2, 2, 3}, {5, 1, 2}};

  criterion(7, "CM point valuations, q-power chain and delta_0(xi)/t", 120, [&](Outcome& o) {
    for (const auto& c : lt) {
      json in{{"p", c[0]}, {"f", c[1]}, {"n", c[2]}, {"samples", 0}};
      CellResult r = epi::run_cell("lt-check", in);
      o.require(r.status == CellStatus::kPass, cell_key(in) + r.reason + r.output.dump());
      o.detail << cell_key(in) << "delta margin " << r.output.value("delta_margin", "?") << "; ";
    }
  });

  criterion(8, "reduction of solver points (20 per cell)", 600, [&](Outcome& o) {
    for (const auto& c : lt) {
      if (c[2] == 4) continue;
      json in{{"p", c[0]}, {"f", c[1]}, {"n", c[2]}, {"samples", 20}, {"seed", opt.seed}, {"cap_iter", opt.cap_iter}};
      CellResult r = epi::run_cell("lt-check", in);
      o.require(r.status == CellStatus::kPass, cell_key(in) + r.reason + r.output.dump());
      o.detail << cell_key(in) << "min residual " << r.output.value("min_residual", "?") << "; ";
    }
  });

  criterion(9, "g_L characteristic polynomial and action congruences", 600, [&](Outcome& o) {
    auto res = run_all("act-check", epi::default_cells("act-check", opt));
    int actors = 0;
    for (const auto& r : res) {
      o.require(r.status == CellStatus::kPass, cell_key(r.input) + r.reason + r.output.dump());
      if (r.input.value("samples", 0) > 0) actors += 3 * r.input["samples"].get<int>();
    }
    o.detail << res.size() << " cells, " << actors << " actors";
  });

  criterion(10, "index and dimension formulas, coset oracle", 60, [&](Outcome& o) {
    for (uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      uint32_t p = q % 2 == 0 ? 2 : q % 3 == 0 ? 3 : uint32_t(q);
      uint32_t f = 0;
      for (uint64_t t = 1; t < q; t *= p) ++f;
      for (int n = 2; n <= 6; ++n) {
        if (n % int(p) == 0) continue;
        auto a = epi::index_audit(p, f, n, 0);
        uint64_t qn = 1;
        for (int i = 0; i < n; ++i) qn *= q;
        uint64_t nq = std::gcd(uint64_t(n), q - 1);
        o.require(a.dim_rho == (qn - 1) / (q - 1), "dim q=" + std::to_string(q) + " n=" + std::to_string(n));
        o.require(a.hl_index == uint64_t(n) * (qn - 1) / (nq * (q - 1)), "index formula");
        o.require(a.dims_consistent, "n dim = index n_q");
      }
    }
    for (auto [p, f, n] : std::vector<std::tuple<uint32_t, uint32_t, int>>{{2, 1, 3}, {3, 1, 2}}) {
      auto a = epi::index_audit(p, f, n, opt.cap_oracle);
      o.require(a.oracle_index.has_value(), "oracle did not run");
      o.detail << "q=" << a.q << " n=" << n << ": oracle " << a.oracle_index.value_or(0) << " formula "
               << a.hl_index << "; ";
      o.require(a.oracle_pass.value_or(false), "oracle agreement q=" + std::to_string(a.q));
    }
  });

  return failures ? 1 : 0;
}
