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

#include "epi/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>

namespace epi {
namespace {

void same_p(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.p() != b.p()) throw std::invalid_argument("cyclotomic: mismatched p");
}

}  // namespace

CyclotomicInt::CyclotomicInt(uint32_t p) : p_(p), c_(p - 1) {
  if (!is_prime(p)) throw std::invalid_argument("cyclotomic: p must be prime");
}

CyclotomicInt CyclotomicInt::reduce(uint32_t p, std::vector<BigInt> full) {
  CyclotomicInt r(p);
  const BigInt& top = full[p - 1];
  for (uint32_t i = 0; i + 1 < p; ++i) r.c_[i] = full[i] - top;
  return r;
}

CyclotomicInt CyclotomicInt::integer(uint32_t p, const BigInt& n) {
  CyclotomicInt r(p);
  r.c_[0] = n;
  return r;
}

CyclotomicInt CyclotomicInt::zeta_power(uint32_t p, int64_t j) {
  std::vector<BigInt> full(p);
  int64_t e = ((j % int64_t(p)) + p) % p;
  full[e] = 1;
  return reduce(p, std::move(full));
}

CyclotomicInt CyclotomicInt::from_counts(uint32_t p, const std::vector<BigInt>& counts) {
  if (counts.size() != p) throw std::invalid_argument("from_counts: need p entries");
  return reduce(p, counts);
}

CyclotomicInt CyclotomicInt::from_counts(uint32_t p, const std::vector<uint64_t>& counts) {
  if (counts.size() != p) throw std::invalid_argument("from_counts: need p entries");
  std::vector<BigInt> full(counts.begin(), counts.end());
  return reduce(p, std::move(full));
}

CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
  same_p(a, b);
  CyclotomicInt r(a.p_);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

CyclotomicInt operator-(const CyclotomicInt& a) {
  CyclotomicInt r(a.p_);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = -a.c_[i];
  return r;
}

CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) { return a + (-b); }

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
  same_p(a, b);
  uint32_t p = a.p_;
  std::vector<BigInt> full(p);
  for (uint32_t i = 0; i + 1 < p; ++i) {
    if (a.c_[i] == 0) continue;
    for (uint32_t j = 0; j + 1 < p; ++j) {
      if (b.c_[j] == 0) continue;
      full[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  return CyclotomicInt::reduce(p, std::move(full));
}

CyclotomicInt operator*(const BigInt& n, const CyclotomicInt& a) {
  CyclotomicInt r(a.p_);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = n * a.c_[i];
  return r;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
  same_p(a, b);
  return a.c_ == b.c_;
}

CyclotomicInt CyclotomicInt::pow(uint64_t e) const {
  CyclotomicInt r = integer(p_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CyclotomicInt CyclotomicInt::galois(int64_t t) const {
  int64_t tt = ((t % int64_t(p_)) + p_) % p_;
  if (tt == 0) throw std::invalid_argument("galois: t must be prime to p");
  std::vector<BigInt> full(p_);
  for (uint32_t i = 0; i + 1 < p_; ++i) full[(i * tt) % p_] += c_[i];
  return reduce(p_, std::move(full));
}

bool CyclotomicInt::is_integer() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

BigInt CyclotomicInt::to_integer() const {
  if (!is_integer()) throw std::domain_error("cyclotomic value is not a rational integer: " + str());
  return c_[0];
}

std::string CyclotomicInt::str() const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (any) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    BigInt m = c_[i] < 0 ? BigInt(-c_[i]) : c_[i];
    if (i == 0) os << m;
    else {
      if (m != 1) os << m << "*";
      os << "z" << p_ << (i == 1 ? "" : "^" + std::to_string(i));
    }
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

AdditiveCharacter::AdditiveCharacter(FieldPtr base, Elt b) : base_(std::move(base)), b_(b) {
  if (b_ >= base_->q()) throw FieldError("additive character: twist out of range");
}

uint32_t AdditiveCharacter::exponent(const FiniteField& k, Elt x) const {
  // Tr_{base/F_p}(b Tr_{k/base}(x)) = Tr_{k/F_p}(b x)
  Elt b = k.embed(*base_, b_);
  return k.abs_trace(k.mul(b, x));
}

std::vector<uint32_t> AdditiveCharacter::exponent_table(const FiniteField& k) const {
  Elt b = k.embed(*base_, b_);
  const auto& tr = k.trace_table(1);
  std::vector<uint32_t> out(k.q());
  for (Elt x = 0; x < k.q(); ++x) out[x] = tr[k.mul(b, x)];
  return out;
}

CyclotomicInt char_eval(const AdditiveCharacter& psi, const FFElement& x) {
  return CyclotomicInt::zeta_power(psi.base()->p(), psi.exponent(x));
}

CyclotomicInt cyc_arith(const CyclotomicInt& a, const CyclotomicInt& b, CycOp op, int64_t t) {
  switch (op) {
    case CycOp::kAdd: return a + b;
    case CycOp::kMul: return a * b;
    case CycOp::kGalois: return a.galois(t);
  }
  throw std::invalid_argument("cyc_arith: unknown op");
}

}  // namespace epi
