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

#include "epi/quadratic_gauss.hpp"

#include <stdexcept>

namespace epi {
namespace {

BigInt to_big(Count c) {
  BigInt hi = uint64_t(c >> 64);
  return (hi << 64) + BigInt(uint64_t(c));
}

void check_r(int r, const FiniteField& k) {
  if (r < 1) throw std::invalid_argument("nu: r must be positive");
  if ((r + 1) % int(k.p()) == 0)
    throw std::invalid_argument("nu: r + 1 must be prime to the characteristic");
}

// Enumerates y_{depth..r-1} below a fixed prefix state (nu, s).
void enumerate(const FiniteField& k, int depth, int r, Elt nu, Elt s, std::vector<uint64_t>& h) {
  const Elt q = k.q();
  if (depth == r - 1) {
    for (Elt y = 0; y < q; ++y) ++h[k.add(nu, k.mul(y, k.add(s, y)))];
    return;
  }
  for (Elt y = 0; y < q; ++y) {
    Elt s2 = k.add(s, y);
    enumerate(k, depth + 1, r, k.add(nu, k.mul(y, s2)), s2, h);
  }
}

}  // namespace

// Plain evaluation works for any r; the coprimality of r + 1 and p is only
// needed where non-degeneracy matters (histograms, determinant class).
Elt nu_eval(const FiniteField& k, const std::vector<Elt>& y) {
  if (y.empty()) throw std::invalid_argument("nu: r must be positive");
  Elt nu = 0, s = 0;
  for (Elt v : y) {
    s = k.add(s, v);
    nu = k.add(nu, k.mul(v, s));  // adds y_j (y_1 + ... + y_j)
  }
  return nu;
}

FFElement nu_eval(const std::vector<FFElement>& y) {
  if (y.empty()) throw std::invalid_argument("nu: r must be positive");
  std::vector<Elt> codes;
  for (const auto& v : y) {
    if (v.field().get() != y[0].field().get()) throw FieldError("nu: mixed fields");
    codes.push_back(v.code());
  }
  return FFElement(y[0].field(), nu_eval(*y[0].field(), codes));
}

int det_nu_class(int r, const FiniteField& k) {
  if (k.p() == 2) throw FieldError("det class needs odd q");
  check_r(r, k);
  Elt v = k.mul(k.from_int(r + 1), k.pow(k.inv(2), r));
  return k.residue_symbol(v);
}

std::vector<Count> nu_histogram(int r, const FiniteField& k, uint64_t cap, unsigned threads) {
  check_r(r, k);
  const Elt q = k.q();
  uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    total *= q;
    if (total > cap) throw CapExceeded("nu histogram: q^r exceeds enumeration cap");
  }
  unsigned t = chunk_count(q, threads);
  std::vector<std::vector<uint64_t>> parts(t, std::vector<uint64_t>(q, 0));
  parallel_chunks(q, t, [&](unsigned w, uint64_t b, uint64_t e) {
    for (uint64_t y1 = b; y1 < e; ++y1) {
      Elt y = Elt(y1);
      if (r == 1) ++parts[w][k.mul(y, y)];
      else enumerate(k, 1, r, k.mul(y, y), y, parts[w]);
    }
  });
  std::vector<Count> h(q, 0);
  for (const auto& part : parts)
    for (Elt v = 0; v < q; ++v) h[v] += part[v];
  return h;
}

std::vector<Count> nu_histogram_transfer(int r, const FiniteField& k) {
  check_r(r, k);
  const uint64_t q = k.q();
  // state index nu * q + s
  std::vector<Count> cur(q * q, 0), next(q * q);
  cur[0] = 1;
  for (int j = 0; j < r; ++j) {
    std::fill(next.begin(), next.end(), 0);
    for (Elt nu = 0; nu < q; ++nu) {
      for (Elt s = 0; s < q; ++s) {
        Count c = cur[nu * q + s];
        if (!c) continue;
        for (Elt y = 0; y < q; ++y) {
          Elt s2 = k.add(s, y);
          next[uint64_t(k.add(nu, k.mul(y, s2))) * q + s2] += c;
        }
      }
    }
    std::swap(cur, next);
  }
  std::vector<Count> h(q, 0);
  for (Elt nu = 0; nu < q; ++nu)
    for (Elt s = 0; s < q; ++s) h[nu] += cur[nu * q + s];
  return h;
}

CyclotomicInt sum_against(const std::vector<Count>& hist, const AdditiveCharacter& psi,
                          const FiniteField& k) {
  if (hist.size() != k.q()) throw std::invalid_argument("sum_against: histogram size");
  const uint32_t p = k.p();
  auto ex = psi.exponent_table(k);
  std::vector<Count> acc(p, 0);
  for (Elt v = 0; v < k.q(); ++v) acc[ex[v]] += hist[v];
  std::vector<BigInt> counts(p);
  for (uint32_t j = 0; j < p; ++j) counts[j] = to_big(acc[j]);
  return CyclotomicInt::from_counts(p, counts);
}

int minus_one_symbol(uint64_t q) {
  if (q % 2 == 0) throw FieldError("(-1/q) needs odd q");
  return ((q - 1) / 2) % 2 == 0 ? 1 : -1;
}

CyclotomicInt gauss_sum_char(const AdditiveCharacter& psi, const FiniteField& k) {
  if (psi.trivial()) throw std::invalid_argument("gauss sum: trivial character");
  if (k.p() == 2) throw FieldError("gauss sum: q must be odd");
  const uint32_t p = k.p();
  auto ex = psi.exponent_table(k);
  std::vector<BigInt> counts(p);
  for (Elt x = 1; x < k.q(); ++x) counts[ex[x]] += k.residue_symbol(x);
  CyclotomicInt g = CyclotomicInt::from_counts(p, counts);
  if (g * g != CyclotomicInt::integer(p, BigInt(minus_one_symbol(k.q())) * k.q()))
    throw std::logic_error("gauss sum: g^2 != (-1/q) q");
  return g;
}

CyclotomicInt gauss_sum_char(const AdditiveCharacter& psi) { return gauss_sum_char(psi, *psi.base()); }

CyclotomicInt gauss_sum_form(int r, const AdditiveCharacter& psi, const FiniteField& k,
                             uint64_t cap, unsigned threads) {
  if (psi.trivial()) throw std::invalid_argument("gauss sum: trivial character");
  return sum_against(nu_histogram(r, k, cap, threads), psi, k);
}

CyclotomicInt gauss_sum_form_closed(int r, const AdditiveCharacter& psi, const FiniteField& k) {
  return BigInt(det_nu_class(r, k)) * gauss_sum_char(psi, k).pow(uint64_t(r));
}

SignedQuarticUnit::SignedQuarticUnit(int sign, int e, uint64_t q) : sign_(sign), e_(0), q_(q) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("quartic unit: sign must be +1 or -1");
  int s = minus_one_symbol(q);
  int ee = ((e % 4) + 4) % 4;
  if (ee >= 2) {
    sign_ *= s;
    ee -= 2;
  }
  e_ = ee;
}

SignedQuarticUnit operator*(const SignedQuarticUnit& a, const SignedQuarticUnit& b) {
  if (a.q_ != b.q_) throw std::invalid_argument("quartic unit: mismatched q");
  return SignedQuarticUnit(a.sign_ * b.sign_, a.e_ + b.e_, a.q_);
}

SignedQuarticUnit quartic_mul(const SignedQuarticUnit& a, const SignedQuarticUnit& b) { return a * b; }

SignedQuarticUnit SignedQuarticUnit::inverse() const {
  // m^{-1} = (-1/q) m
  return SignedQuarticUnit(sign_ * (e_ ? minus_one_symbol(q_) : 1), e_, q_);
}

SignedQuarticUnit SignedQuarticUnit::pow(int64_t k) const {
  // every unit has order dividing 4
  SignedQuarticUnit r = one(q_);
  for (int64_t i = 0; i < ((k % 4) + 4) % 4; ++i) r = r * *this;
  return r;
}

std::string SignedQuarticUnit::str() const {
  return std::string(sign_ > 0 ? "+" : "-") + (e_ ? "m" : "1");
}

}  // namespace epi
