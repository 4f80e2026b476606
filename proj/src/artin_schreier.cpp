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

#include "epi/artin_schreier.hpp"

#include <stdexcept>

namespace epi {
namespace {

int64_t ipow(int64_t b, int64_t e) {
  int64_t r = 1;
  for (int64_t i = 0; i < e; ++i) {
    if (r > INT64_MAX / b) throw std::overflow_error("integer power overflow");
    r *= b;
  }
  return r;
}

void check_cap(uint64_t Q, int r, uint64_t cap) {
  uint64_t t = 1;
  for (int i = 0; i <= r; ++i) {
    t *= Q;
    if (t > cap) throw CapExceeded("point count: q^{s(r+1)} exceeds enumeration cap");
  }
}

// Counts y below a prefix state whose nu has trace zero.
uint64_t count_below(const FiniteField& k, const std::vector<Elt>& tr, int depth, int r, Elt nu,
                     Elt s) {
  const Elt q = k.q();
  uint64_t c = 0;
  if (depth == r - 1) {
    for (Elt y = 0; y < q; ++y) c += tr[k.add(nu, k.mul(y, k.add(s, y)))] == 0;
    return c;
  }
  for (Elt y = 0; y < q; ++y) {
    Elt s2 = k.add(s, y);
    c += count_below(k, tr, depth + 1, r, k.add(nu, k.mul(y, s2)), s2);
  }
  return c;
}

// Shared enumeration of the X' equation. visit(pi_index, solutions) is called
// for every (z, a_1, ..., a_{r-1}).
template <class Visit>
void enumerate_xprime(const FiniteField& k, uint32_t m, int r, uint64_t begin, uint64_t end,
                      Visit&& visit) {
  const uint64_t Q = k.q();
  const int rp = r / 2;
  std::vector<Elt> a(r);  // a[0] = z, a[i] = a_i
  const int64_t e_full = (int64_t(1) << m) - 1;
  for (uint64_t idx = begin; idx < end; ++idx) {
    uint64_t t = idx;
    for (int i = 0; i < r; ++i, t /= Q) a[i] = Elt(t % Q);
    Elt z = a[0], top = a[r - 1];
    Elt b = k.frob(top, int64_t(m) - 1);
    Elt c = k.mul(k.sub(k.pow(top, e_full), 1), z);
    for (int i = 1; i <= rp; ++i) c = k.add(c, k.frob(a[2 * i - 1], m));
    for (int i = 1; i <= rp - 1; ++i) {
      Elt inner = k.add(top, k.add(a[2 * i + 1], a[2 * i - 1]));
      c = k.add(c, k.mul(a[2 * i], k.frob(inner, int64_t(m) - 1)));
    }
    int sols;
    if (b == 0) sols = 1;  // squaring is bijective
    else sols = k.abs_trace(k.div(c, k.mul(b, b))) == 0 ? 2 : 0;
    uint64_t pi = 0;
    for (int i = rp; i >= 1; --i) pi = pi * Q + a[2 * i - 1];
    visit(pi, sols);
  }
}

}  // namespace

uint64_t ASVarietySpec::q() const { return uint64_t(ipow(p, f)); }

void ASVarietySpec::check(int s) const {
  if (!is_prime(p)) throw std::invalid_argument("variety: p must be prime");
  if (r < 1 || s < 1 || m < 1 || f < 1) throw std::invalid_argument("variety: r, s, m, f must be positive");
  if ((r + 1) % int(p) == 0) throw std::invalid_argument("variety: r + 1 must be prime to p");
  if ((uint64_t(f) * s) % m != 0) throw std::invalid_argument("variety: m must divide f s");
}

std::string ASVarietySpec::str() const {
  return "p=" + std::to_string(p) + " m=" + std::to_string(m) + " q=" + std::to_string(q()) +
         " r=" + std::to_string(r);
}

int64_t count_Xw(const ASVarietySpec& spec, int s, uint64_t cap, unsigned threads) {
  spec.check(s);
  FieldPtr k = build_field(spec.p, spec.f * s);
  check_cap(k->q(), spec.r, cap);
  const auto& tr = k->trace_table(spec.m);
  const Elt Q = k->q();
  const int r = spec.r;
  unsigned t = chunk_count(Q, threads);
  std::vector<uint64_t> part(t, 0);
  parallel_chunks(Q, t, [&](unsigned w, uint64_t b, uint64_t e) {
    for (uint64_t y1 = b; y1 < e; ++y1) {
      Elt y = Elt(y1), nu = k->mul(y, y);
      part[w] += r == 1 ? (tr[nu] == 0) : count_below(*k, tr, 1, r, nu, y);
    }
  });
  uint64_t total = 0;
  for (uint64_t c : part) total += c;
  return int64_t(total) * ipow(spec.p, spec.m);
}

namespace {

CyclotomicInt character_sum(const ASVarietySpec& spec, int s, uint64_t cap, unsigned threads) {
  FieldPtr k = build_field(spec.p, spec.f * s);
  check_cap(k->q(), spec.r, cap);
  auto hist = nu_histogram(spec.r, *k, cap, threads);
  FieldPtr base = build_field(spec.p, spec.m);
  CyclotomicInt sum(spec.p);
  for (Elt b = 1; b < base->q(); ++b) sum += sum_against(hist, AdditiveCharacter(base, b), *k);
  return sum;
}

}  // namespace

int64_t predict_count_odd(const ASVarietySpec& spec, int s, uint64_t cap, unsigned threads) {
  if (spec.p == 2) throw std::invalid_argument("predict_count_odd: p must be odd");
  spec.check(s);
  CyclotomicInt sum = character_sum(spec, s, cap, threads);
  // each H^r eigenvalue (-1)^r g enters the trace formula with sign (-1)^r
  BigInt total = BigInt(ipow(int64_t(spec.q()), int64_t(spec.r) * s)) + sum.to_integer();
  return total.convert_to<int64_t>();
}

int64_t predict_count_odd_without_lefschetz_sign(const ASVarietySpec& spec, int s, uint64_t cap,
                                                 unsigned threads) {
  if (spec.p == 2) throw std::invalid_argument("predict_count_odd: p must be odd");
  spec.check(s);
  CyclotomicInt sum = character_sum(spec, s, cap, threads);
  BigInt sign = spec.r % 2 ? -1 : 1;
  BigInt total = BigInt(ipow(int64_t(spec.q()), int64_t(spec.r) * s)) + sign * sum.to_integer();
  return total.convert_to<int64_t>();
}

int64_t predict_count_even(const ASVarietySpec& spec, int s) {
  if (spec.p != 2) throw std::invalid_argument("predict_count_even: p must be 2");
  if (spec.r % 2) throw std::invalid_argument("predict_count_even: r must be even");
  spec.check(s);
  int64_t Q = ipow(int64_t(spec.q()), s);
  int64_t rp = spec.r / 2;
  return ipow(Q, spec.r) + ((int64_t(1) << spec.m) - 1) * jacobi(Q, spec.r + 1) * ipow(Q, rp);
}

int64_t count_Xprime(const ASVarietySpec& spec, int s, uint64_t cap, unsigned threads) {
  if (spec.p != 2) throw std::invalid_argument("count_Xprime: p must be 2");
  if (spec.r % 2) throw std::invalid_argument("count_Xprime: r must be even");
  spec.check(s);
  FieldPtr k = build_field(2, spec.f * s);
  check_cap(k->q(), spec.r, cap);
  uint64_t n = uint64_t(ipow(k->q(), spec.r));
  unsigned t = chunk_count(n, threads);
  std::vector<int64_t> part(t, 0);
  parallel_chunks(n, t, [&](unsigned w, uint64_t b, uint64_t e) {
    enumerate_xprime(*k, spec.m, spec.r, b, e, [&](uint64_t, int sols) { part[w] += sols; });
  });
  int64_t total = 0;
  for (int64_t c : part) total += c;
  return total;
}

int compute_Nr(int r) {
  if (r < 2 || r % 2) throw std::invalid_argument("compute_Nr: r must be even and positive");
  int n = 0;
  for (int l = 1; l <= r - 1; l += 2)
    if ((r - 1 - l) % 4 == 0) ++n;
  int sign = n % 2 ? -1 : 1;
  if (sign != jacobi(2, r + 1)) throw std::logic_error("compute_Nr: (-1)^N != (2/(r+1))");
  return n;
}

StratumCensus stratum_census(const ASVarietySpec& spec, int s, uint64_t cap, unsigned threads) {
  if (spec.p != 2) throw std::invalid_argument("stratum_census: p must be 2");
  if (spec.r % 2) throw std::invalid_argument("stratum_census: r must be even");
  spec.check(s);
  FieldPtr k = build_field(2, spec.f * s);
  check_cap(k->q(), spec.r, cap);
  const uint64_t Q = k->q();
  const int r = spec.r, rp = r / 2;
  const uint32_t m = spec.m;
  const uint64_t base_pts = uint64_t(ipow(Q, rp));

  // membership of each rational point of A^{r'} in S; coordinate j of the
  // target is a_{2j-1}
  std::vector<uint8_t> in_s(base_pts, 0);
  StratumCensus out;
  for (uint64_t pi = 0; pi < base_pts; ++pi) {
    std::vector<Elt> t(rp + 1);
    uint64_t x = pi;
    for (int j = 1; j <= rp; ++j, x /= Q) t[j] = Elt(x % Q);
    Elt lead = t[rp];
    bool ok = lead != 0 && k->in_subfield(lead, m);
    for (int j = 1; ok && j < rp; ++j) ok = t[j] == (((j - rp) % 2 == 0) ? lead : 0);
    in_s[pi] = ok;
    out.count_S += ok;
  }
  out.count_U = int64_t(base_pts) - out.count_S;

  uint64_t n = uint64_t(ipow(Q, r));
  unsigned nt = chunk_count(n, threads);
  std::vector<std::vector<int64_t>> fibers(nt, std::vector<int64_t>(base_pts, 0));
  parallel_chunks(n, nt, [&](unsigned w, uint64_t b, uint64_t e) {
    enumerate_xprime(*k, m, r, b, e, [&](uint64_t pi, int sols) { fibers[w][pi] += sols; });
  });
  std::vector<int64_t> fiber(base_pts, 0);
  for (const auto& part : fibers)
    for (uint64_t i = 0; i < base_pts; ++i) fiber[i] += part[i];
  for (uint64_t pi = 0; pi < base_pts; ++pi) {
    if (in_s[pi]) {
      out.count_fiber_S += fiber[pi];
    } else {
      out.count_V += fiber[pi];
      if (fiber[pi] != int64_t(base_pts)) out.fibers_uniform = false;
    }
  }
  out.total = out.count_fiber_S + out.count_V;

  int nr = compute_Nr(r);
  // the sheets over S are rational iff rho^2 - rho = N_r is solvable in
  // F_{q^s}, i.e. Tr_{F_{q^s}/F_2}(N_r) = (f s N_r) mod 2 vanishes
  bool sheets_rational = (uint64_t(spec.f) * s * nr) % 2 == 0;
  out.pred_S = (int64_t(1) << m) - 1;
  out.pred_U = int64_t(base_pts) - out.pred_S;
  out.pred_fiber_S = sheets_rational ? 2 * out.pred_S * int64_t(base_pts) : 0;
  out.pred_V = out.pred_U * int64_t(base_pts);
  return out;
}

}  // namespace epi
