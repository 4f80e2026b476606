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

#ifndef EPI_QUADRATIC_GAUSS_HPP_
#define EPI_QUADRATIC_GAUSS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "epi/cyclotomic.hpp"
#include "epi/finite_field.hpp"
#include "epi/parallel.hpp"

namespace epi {

constexpr uint64_t kDefaultEnumCap = 100000000;  // evaluated tuples

using Count = unsigned __int128;

// nu_r(y) = sum_{1 <= i <= j <= r} y_i y_j
Elt nu_eval(const FiniteField& k, const std::vector<Elt>& y);
FFElement nu_eval(const std::vector<FFElement>& y);

// residue symbol of det nu_r = 2^{-r} (r + 1) in k
int det_nu_class(int r, const FiniteField& k);

// H[v] = #{y in k^r : nu_r(y) = v}. The brute-force version enumerates all
// q^r tuples (parallel over y_1); the transfer version runs a dynamic program
// over the state (nu, y_1 + ... + y_j) and is exact for any r.
std::vector<Count> nu_histogram(int r, const FiniteField& k, uint64_t cap = kDefaultEnumCap,
                                unsigned threads = 0);
std::vector<Count> nu_histogram_transfer(int r, const FiniteField& k);

// sum_v H[v] psi(v), with psi composed with the trace when k is an extension
CyclotomicInt sum_against(const std::vector<Count>& hist, const AdditiveCharacter& psi,
                          const FiniteField& k);

// g(psi_k) = sum_{x in k^x} (x/k) psi(Tr x); checks g^2 = (-1/q) q
CyclotomicInt gauss_sum_char(const AdditiveCharacter& psi, const FiniteField& k);
CyclotomicInt gauss_sum_char(const AdditiveCharacter& psi);

// sum_{x in k^r} psi(Tr nu_r(x)) by exhaustive enumeration
CyclotomicInt gauss_sum_form(int r, const AdditiveCharacter& psi, const FiniteField& k,
                             uint64_t cap = kDefaultEnumCap, unsigned threads = 0);

// det_nu_class(r, k) g(psi_k)^r
CyclotomicInt gauss_sum_form_closed(int r, const AdditiveCharacter& psi, const FiniteField& k);

// (-1/q) for odd q, as a residue symbol of k
int minus_one_symbol(uint64_t q);

// eps * m^e subject to m^2 = (-1/q)
class SignedQuarticUnit {
 public:
  SignedQuarticUnit(int sign, int e, uint64_t q);
  static SignedQuarticUnit one(uint64_t q) { return {1, 0, q}; }
  static SignedQuarticUnit m(uint64_t q) { return {1, 1, q}; }

  int sign() const { return sign_; }
  int exponent() const { return e_; }
  uint64_t q() const { return q_; }

  friend SignedQuarticUnit operator*(const SignedQuarticUnit& a, const SignedQuarticUnit& b);
  friend bool operator==(const SignedQuarticUnit& a, const SignedQuarticUnit& b) {
    return a.sign_ == b.sign_ && a.e_ == b.e_ && a.q_ == b.q_;
  }
  friend bool operator!=(const SignedQuarticUnit& a, const SignedQuarticUnit& b) { return !(a == b); }
  SignedQuarticUnit operator-() const { return {-sign_, e_, q_}; }
  SignedQuarticUnit pow(int64_t k) const;
  SignedQuarticUnit inverse() const;
  std::string str() const;

 private:
  int sign_;
  int e_;
  uint64_t q_;
};

SignedQuarticUnit quartic_mul(const SignedQuarticUnit& a, const SignedQuarticUnit& b);

}  // namespace epi

#endif  // EPI_QUADRATIC_GAUSS_HPP_
