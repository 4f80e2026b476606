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

#ifndef EPI_CYCLOTOMIC_HPP_
#define EPI_CYCLOTOMIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epi/finite_field.hpp"

namespace epi {

using BigInt = boost::multiprecision::cpp_int;

// Element of Z[zeta_p] in the basis zeta^0, ..., zeta^{p-2}. The relation
// 1 + zeta + ... + zeta^{p-1} = 0 is applied on every construction, so
// equality is coefficientwise.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(uint32_t p);  // zero
  static CyclotomicInt integer(uint32_t p, const BigInt& n);
  static CyclotomicInt zeta_power(uint32_t p, int64_t j);
  // sum_j counts[j] zeta^j, counts indexed by exponent mod p
  static CyclotomicInt from_counts(uint32_t p, const std::vector<BigInt>& counts);
  static CyclotomicInt from_counts(uint32_t p, const std::vector<uint64_t>& counts);

  uint32_t p() const { return p_; }
  const std::vector<BigInt>& coefficients() const { return c_; }

  friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b);
  friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b);
  friend CyclotomicInt operator-(const CyclotomicInt& a);
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
  friend CyclotomicInt operator*(const BigInt& n, const CyclotomicInt& a);
  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);
  friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }
  CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }
  CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

  CyclotomicInt pow(uint64_t e) const;
  // ring automorphism zeta -> zeta^t, gcd(t, p) = 1
  CyclotomicInt galois(int64_t t) const;

  bool is_integer() const;
  BigInt to_integer() const;  // throws unless is_integer()
  std::string str() const;

 private:
  // coefficients on zeta^0..zeta^{p-1}, then reduced
  static CyclotomicInt reduce(uint32_t p, std::vector<BigInt> full);

  uint32_t p_;
  std::vector<BigInt> c_;  // length p - 1
};

// psi_b(x) = zeta^{Tr_{F_{p^m}/F_p}(b x)} on the base field F_{p^m}; applied
// to an element of an extension it is composed with the trace down to the base.
class AdditiveCharacter {
 public:
  AdditiveCharacter(FieldPtr base, Elt b);
  const FieldPtr& base() const { return base_; }
  Elt twist() const { return b_; }
  bool trivial() const { return b_ == 0; }

  // exponent j in [0, p) with psi(x) = zeta^j; x in any field containing base
  uint32_t exponent(const FiniteField& k, Elt x) const;
  uint32_t exponent(const FFElement& x) const { return exponent(*x.field(), x.code()); }
  // table of exponents over all codes of k
  std::vector<uint32_t> exponent_table(const FiniteField& k) const;

 private:
  FieldPtr base_;
  Elt b_;
};

CyclotomicInt char_eval(const AdditiveCharacter& psi, const FFElement& x);

enum class CycOp { kAdd, kMul, kGalois };
// t is used only by kGalois, which ignores b
CyclotomicInt cyc_arith(const CyclotomicInt& a, const CyclotomicInt& b, CycOp op, int64_t t = 1);

}  // namespace epi

#endif  // EPI_CYCLOTOMIC_HPP_
