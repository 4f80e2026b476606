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

#include "epi/checks.hpp"

#include <array>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "epi/artin_schreier.hpp"
#include "epi/correspondence.hpp"
#include "epi/group_action.hpp"
#include "epi/lubin_tate.hpp"
#include "epi/quadratic_gauss.hpp"

namespace epi {

using nlohmann::json;

std::string status_name(CellStatus s) {
  switch (s) {
    case CellStatus::kPass:
      return "pass";
    case CellStatus::kFail:
      return "fail";
    case CellStatus::kSkipped:
      return "skipped";
  }
  return "fail";
}

CellStatus status_from_name(const std::string& s) {
  if (s == "pass") return CellStatus::kPass;
  if (s == "skipped") return CellStatus::kSkipped;
  if (s == "fail") return CellStatus::kFail;
  throw std::invalid_argument("unknown status " + s);
}

json CellResult::to_json() const {
  json j{{"check", check}, {"input", input}, {"status", status_name(status)}, {"output", output},
         {"seconds", seconds}};
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"verify-gauss", "count-points", "verify-lambda",
                                                 "lt-check",     "act-check",    "audit-dims"};
  return names;
}

namespace {

// Invalid cell inputs; reported as skipped.
class CellInvalid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw CellInvalid("cap_precision must be an integer or a/b, got " + s);
  }
}

int get_int(const json& in, const char* key) {
  if (!in.contains(key) || !in[key].is_number_integer()) throw CellInvalid(std::string("missing integer ") + key);
  return in[key].get<int>();
}

uint32_t get_prime(const json& in) {
  int p = get_int(in, "p");
  if (p < 2) throw CellInvalid("p must be prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw CellInvalid("p must be prime");
  return uint32_t(p);
}

uint32_t get_pos(const json& in, const char* key) {
  int v = get_int(in, key);
  if (v < 1) throw CellInvalid(std::string(key) + " must be positive");
  return uint32_t(v);
}

// deterministic per-cell stream from the run seed
uint64_t cell_seed(const json& in) {
  uint64_t s = in.value("seed", uint64_t(0));
  for (const char* k : {"p", "f", "n"}) s = s * 1000003u + uint64_t(in.value(k, 0));
  return s;
}

std::string cap_str(const Cap& c) { return c.str(); }

// gauss_sum_form against the closed form for every nontrivial psi of k, from
// one enumerated histogram of nu_r; and g(psi)^2 = (-1/q) q
void run_gauss(const json& in, unsigned threads, CellResult& res) {
  uint32_t p = get_prime(in), f = get_pos(in, "f");
  int r = get_int(in, "r");
  if (p == 2) throw CellInvalid("quadratic Gauss sums need odd p");
  if (r < 1 || (r + 1) % int(p) == 0) throw CellInvalid("r + 1 must be prime to p");
  FieldPtr k = build_field(p, f);
  auto hist = nu_histogram(r, *k, in.value("cap_enum", kDefaultEnumCap), threads);
  int form_ok = 0, gr_ok = 0;
  const CyclotomicInt target = CyclotomicInt::integer(p, BigInt(minus_one_symbol(k->q())) * BigInt(k->q()));
  for (Elt b = 1; b < k->q(); ++b) {
    AdditiveCharacter psi(k, b);
    if (sum_against(hist, psi, *k) == gauss_sum_form_closed(r, psi, *k)) ++form_ok;
    CyclotomicInt g = gauss_sum_char(psi, *k);
    if (g * g == target) ++gr_ok;
  }
  const int chars = int(k->q() - 1);
  res.output = {{"q", k->q()},          {"det_nu_class", det_nu_class(r, *k)},
                {"characters", chars},  {"closed_form_ok", form_ok},
                {"gr_ok", gr_ok},       {"closed_form", form_ok == chars},
                {"gr", gr_ok == chars}};
  res.status = form_ok == chars && gr_ok == chars ? CellStatus::kPass : CellStatus::kFail;
}

void run_count(const json& in, unsigned threads, CellResult& res) {
  ASVarietySpec spec;
  spec.p = get_prime(in);
  spec.m = get_pos(in, "m");
  spec.f = get_pos(in, "f");
  spec.r = get_int(in, "r");
  int s = int(get_pos(in, "s"));
  try {
    spec.check(s);
  } catch (const std::invalid_argument& e) {
    throw CellInvalid(e.what());
  }
  const uint64_t cap = in.value("cap_enum", kDefaultEnumCap);
  const uint64_t size = ipow(spec.q(), s * (spec.r + 1));
  if (size > cap) throw CapExceeded("q^{s(r+1)} = " + std::to_string(size) + " exceeds cap " + std::to_string(cap));
  int64_t count = count_Xw(spec, s, cap, threads);
  json out{{"q", spec.q()}, {"count_Xw", count}};
  bool ok;
  if (spec.p != 2) {
    int64_t pred = predict_count_odd(spec, s, cap, threads);
    out["predict_count_odd"] = pred;
    ok = count == pred;
  } else {
    if (spec.r % 2) throw CellInvalid("p = 2 needs even r");
    int64_t pred = predict_count_even(spec, s);
    int64_t xprime = count_Xprime(spec, s, cap, threads);
    StratumCensus cen = stratum_census(spec, s, cap, threads);
    out["predict_count_even"] = pred;
    out["count_Xprime"] = xprime;
    out["census_total"] = cen.total;
    out["census_matches"] = cen.matches();
    ok = count == pred && xprime == count && cen.total == xprime && cen.matches();
  }
  res.output = out;
  res.status = ok ? CellStatus::kPass : CellStatus::kFail;
}

void run_lambda(const json& in, CellResult& res) {
  uint32_t p = get_prime(in), f = get_pos(in, "f");
  int n = get_int(in, "n");
  if (p == 2) throw CellInvalid("the Gauss-sum check of lambda needs odd p");
  if (n < 2 || n % int(p) == 0) throw CellInvalid("n must be >= 2 and prime to p");
  FieldPtr k = build_field(p, f);
  const uint64_t q = k->q();
  PropKyReport ky = verify_prop_ky(p, f, n);
  int weil_ok = 0;
  for (Elt u = 1; u < q; ++u) weil_ok += weil_scalar_check(p, f, n, u).pass();
  bool psi_free = true;
  if (n % 2) {
    SignedQuarticUnit l1 = lambda_tame(q, n);
    psi_free = l1.exponent() == 0;
    for (int64_t b = 1; b < int64_t(p); ++b) psi_free = psi_free && lambda_tame(q, n, b) == l1;
  }
  // lambda^n = delta(zeta varpi) for every zeta
  bool mu_ok = true;
  SignedQuarticUnit ln = lambda_tame(q, n).pow(n);
  for (Elt z = 1; z < q; ++z)
    mu_ok = mu_ok && ln == SignedQuarticUnit(delta_EK_unit(*k, n, z) * delta_EK_varpi(*k, n, z), 0, q);
  res.output = {{"prop", ky.to_json()}, {"weil_scalar_ok", weil_ok}, {"units", q - 1},
                {"odd_n_psi_free", psi_free}, {"mu_power", mu_ok}};
  bool ok = ky.pass() && weil_ok == int(q - 1) && psi_free && mu_ok;
  res.status = ok ? CellStatus::kPass : CellStatus::kFail;
}

LTContext make_context(const json& in) {
  uint32_t p = get_prime(in), f = get_pos(in, "f");
  int n = get_int(in, "n");
  if (n < 2 || n % int(p) == 0) throw CellInvalid("n must be >= 2 and prime to p");
  LTOptions o;
  if (in.contains("cap_precision") && in["cap_precision"].is_string() &&
      !in["cap_precision"].get<std::string>().empty())
    o.cap = parse_rational(in["cap_precision"].get<std::string>());
  return LTContext(p, f, n, o);
}

void run_lt(const json& in, CellResult& res) {
  LTContext ctx = make_context(in);
  const int n = ctx.n();
  const int64_t q = int64_t(ctx.q());
  const Rational required = Rational(2) + Rational(1, q - 1);
  if (ctx.cap() < Cap(required)) throw CellInvalid("cap_precision below 2 + 1/(q-1)");
  // exact valuations and the q-power chain of xi
  bool val_ok = true, chain_ok = true;
  Rational expect = Rational(1) / (Rational(n) * Rational(q - 1));
  for (int i = 0; i < n; ++i) {
    val_ok = val_ok && ctx.xi()[i].valuation() && *ctx.xi()[i].valuation() == expect;
    expect = expect / Rational(q);
  }
  for (int i = 0; i + 1 < n; ++i) chain_ok = chain_ok && ctx.qfrob(ctx.xi()[i + 1], 1).identical(ctx.xi()[i]);
  CMPoint cm = cm_point(ctx);
  bool delta_ok = Cap(Rational(1, n)) < cm.delta_margin;
  json out{{"q", q},
           {"cap", cap_str(ctx.cap())},
           {"xi_valuations", val_ok},
           {"xi_chain", chain_ok},
           {"delta_margin", cap_str(cm.delta_margin)},
           {"delta_ok", delta_ok}};
  bool ok = val_ok && chain_ok && delta_ok;

  const int samples = in.value("samples", 0);
  const int max_iter = in.value("cap_iter", 64);
  std::mt19937_64 rng(cell_seed(in));
  int positive = 0, fzapp = 0, affinoid = 0;
  std::optional<Cap> min_residual;
  for (int i = 0; i < samples; ++i) {
    auto [ybar, zbar] = sample_residue_point(ctx, rng);
    SolveResult sr = solve_affinoid_point(ctx, sample_lift(ctx, ybar, 2, rng), zbar, max_iter);
    RedmodReport rr = verify_redmod(ctx, sr);
    positive += rr.positive;
    fzapp += rr.fzapp_ok;
    affinoid += rr.affinoid;
    if (!min_residual || rr.residual < *min_residual) min_residual = rr.residual;
  }
  if (samples > 0) {
    out["samples"] = samples;
    out["residual_positive"] = positive;
    out["fzapp_ok"] = fzapp;
    out["affinoid"] = affinoid;
    out["min_residual"] = cap_str(*min_residual);
    ok = ok && positive == samples && fzapp == samples;
  }
  res.output = out;
  res.status = ok ? CellStatus::kPass : CellStatus::kFail;
}

void run_act(const json& in, CellResult& res) {
  uint32_t p = get_prime(in);
  int n = get_int(in, "n");
  if (n < 2 || n % int(p) == 0) throw CellInvalid("n must be >= 2 and prime to p");
  GLReport gl = gL_matrix(n, p);
  json out{{"charpoly_matches", gl.matches}, {"det", gl.det}};
  bool ok = gl.matches;
  const int samples = in.value("samples", 0);
  if (samples > 0) {
    LTContext ctx = make_context(in);
    for (ActorKind kind : {ActorKind::kMatrix, ActorKind::kDivision, ActorKind::kWeil}) {
      ActionReport rep = action_congruence_check(ctx, kind, samples, cell_seed(in) + uint64_t(kind));
      out[actor_kind_name(kind)] = {
          {"passed", rep.passed}, {"failed", rep.failed}, {"inconclusive", rep.inconclusive}};
      ok = ok && rep.failed == 0 && rep.inconclusive == 0 && rep.passed == samples;
    }
  }
  res.output = out;
  res.status = ok ? CellStatus::kPass : CellStatus::kFail;
}

void run_audit(const json& in, CellResult& res) {
  uint32_t p = get_prime(in), f = get_pos(in, "f");
  int n = get_int(in, "n");
  if (n < 2 || n % int(p) == 0) throw CellInvalid("n must be >= 2 and prime to p");
  IndexAudit a = index_audit(p, f, n, in.value("cap_oracle", uint64_t(1) << 21));
  res.output = a.to_json();
  bool ok = a.dims_consistent && (!a.oracle_pass || *a.oracle_pass);
  res.status = ok ? CellStatus::kPass : CellStatus::kFail;
  if (a.oracle_pass && !*a.oracle_pass)
    res.reason = "coset oracle gives " + std::to_string(*a.oracle_index) + ", formula gives " +
                 std::to_string(a.hl_index);
}

json with_options(const std::string& check, json cell, const RunOptions& opt) {
  auto put = [&](const char* key, const json& v) {
    if (!cell.contains(key)) cell[key] = v;
  };
  if (check == "verify-gauss" || check == "count-points") put("cap_enum", opt.cap_enum);
  if (check == "audit-dims") put("cap_oracle", opt.cap_oracle);
  if (check == "lt-check" || check == "act-check") {
    put("seed", opt.seed);
    put("cap_precision", opt.cap_precision);
    if (opt.samples >= 0) cell["samples"] = opt.samples;
    put("samples", 0);
  }
  if (check == "lt-check") put("cap_iter", opt.cap_iter);
  return cell;
}

bool coprime(int a, int b) { return std::gcd(a, b) == 1; }

// the Lubin-Tate cells: (q, n) = (3, 2), (3, 4), (4, 3), (5, 2)
const std::vector<std::array<int, 3>> kLTCells = {{3, 1, 2}, {3, 1, 4}, {2, 2, 3}, {5, 1, 2}};

}  // namespace

std::vector<json> default_cells(const std::string& check, const RunOptions& opt) {
  std::vector<json> cells;
  if (check == "verify-gauss") {
    for (int p : {3, 5, 7, 11})
      for (int f : {1, 2})
        for (int r = 1; r <= 4; ++r)
          if ((r + 1) % p) cells.push_back({{"p", p}, {"f", f}, {"r", r}});
  } else if (check == "count-points") {
    for (int p : {3, 5, 7, 11, 13})
      for (int f : {1, 2})
        for (int m = 1; m <= f; ++m) {
          if (f % m) continue;
          for (int r = 1; r <= 6; ++r) {
            if ((r + 1) % p == 0) continue;
            for (int s = 1; s <= 8; ++s)
              if (ipow(ipow(p, f), s * (r + 1)) <= 10000000)
                cells.push_back({{"p", p}, {"m", m}, {"f", f}, {"r", r}, {"s", s}});
          }
        }
    for (int m : {1, 2})
      for (int f = 1; f <= 4; ++f) {
        if (f % m) continue;
        for (int r : {2, 4, 6})
          for (int s = 1; s <= 8; ++s)
            if (ipow(ipow(2, f), s * (r + 1)) <= 100000000)
              cells.push_back({{"p", 2}, {"m", m}, {"f", f}, {"r", r}, {"s", s}});
      }
  } else if (check == "verify-lambda") {
    for (int p : {3, 5, 7, 11, 13})
      for (int f : {1, 2})
        for (int n = 2; n <= 12; ++n)
          if (n % p) cells.push_back({{"p", p}, {"f", f}, {"n", n}});
  } else if (check == "lt-check") {
    for (const auto& c : kLTCells)
      cells.push_back({{"p", c[0]}, {"f", c[1]}, {"n", c[2]}, {"samples", c[2] == 4 ? 0 : 20}});
  } else if (check == "act-check") {
    for (const auto& c : kLTCells) cells.push_back({{"p", c[0]}, {"f", c[1]}, {"n", c[2]}, {"samples", 10}});
    for (int p : {2, 3, 5, 7, 11, 13})
      for (int n = 2; n <= 12; ++n) {
        if (!coprime(n, p)) continue;
        bool lt = false;
        for (const auto& c : kLTCells) lt = lt || (c[0] == p && c[2] == n);
        if (!lt) cells.push_back({{"p", p}, {"f", 1}, {"n", n}, {"samples", 0}});
      }
  } else if (check == "audit-dims") {
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}})
      for (int n = 2; n <= 6; ++n)
        if (n % p) cells.push_back({{"p", p}, {"f", f}, {"n", n}});
  } else {
    throw std::invalid_argument("unknown check " + check);
  }
  for (auto& c : cells) c = with_options(check, c, opt);
  return cells;
}

std::vector<json> grid_cells(const std::string& check, const json& grid, const RunOptions& opt) {
  std::vector<json> cells;
  if (grid.contains("cells")) {
    for (const auto& c : grid["cells"]) cells.push_back(with_options(check, c, opt));
    return cells;
  }
  std::vector<std::string> keys;
  if (check == "verify-gauss") keys = {"p", "f", "r"};
  else if (check == "count-points") keys = {"p", "m", "f", "r", "s"};
  else if (check == "lt-check" || check == "act-check" || check == "verify-lambda" || check == "audit-dims")
    keys = {"p", "f", "n"};
  else
    throw std::invalid_argument("unknown check " + check);
  const std::map<std::string, std::vector<int>> fallback = {
      {"p", {3}}, {"f", {1}}, {"m", {1}}, {"n", {2}}, {"r", {1}}, {"s", {1}}};
  cells.push_back(json::object());
  for (const auto& key : keys) {
    std::vector<int> vals = grid.contains(key) ? grid[key].get<std::vector<int>>() : fallback.at(key);
    std::vector<json> next;
    for (const auto& c : cells)
      for (int v : vals) {
        json d = c;
        d[key] = v;
        next.push_back(d);
      }
    cells = std::move(next);
  }
  if (grid.contains("samples") && opt.samples < 0)
    for (auto& c : cells) c["samples"] = grid["samples"];
  for (auto& c : cells) c = with_options(check, c, opt);
  return cells;
}

CellResult run_cell(const std::string& check, const json& input, unsigned threads) {
  CellResult res;
  res.check = check;
  res.input = input;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (check == "verify-gauss") run_gauss(input, threads, res);
    else if (check == "count-points") run_count(input, threads, res);
    else if (check == "verify-lambda") run_lambda(input, res);
    else if (check == "lt-check") run_lt(input, res);
    else if (check == "act-check") run_act(input, res);
    else if (check == "audit-dims") run_audit(input, res);
    else throw CellInvalid("unknown check " + check);
  } catch (const CapExceeded& e) {
    res.status = CellStatus::kSkipped;
    res.reason = std::string("infeasible: ") + e.what();
  } catch (const CellInvalid& e) {
    res.status = CellStatus::kSkipped;
    res.reason = std::string("invalid: ") + e.what();
  } catch (const std::exception& e) {
    // anything else is a genuine failure of the check
    res.status = CellStatus::kFail;
    res.reason = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace epi
