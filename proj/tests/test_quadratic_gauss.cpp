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

#include <set>

#include "gtest/gtest.h"

namespace epi {
namespace {

struct OddField {
  uint32_t p, f;
};

std::vector<OddField> odd_fields_up_to(uint32_t qmax) {
  std::vector<OddField> out;
  for (uint32_t p = 3; p <= qmax; p += 2) {
    if (!is_prime(p)) continue;
    uint32_t q = p;
    for (uint32_t f = 1; q <= qmax; ++f, q *= p) out.push_back({p, f});
  }
  return out;
}

// determinant of the Gram matrix of nu_r over F_p (diagonal 1, off-diagonal
// 1/2) by Gaussian elimination, independent of the closed form
int64_t gram_det_mod_p(int r, int64_t p) {
  auto inv = [p](int64_t a) {
    int64_t res = 1, b = ((a % p) + p) % p, e = p - 2;
    while (e) {
      if (e & 1) res = res * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return res;
  };
  int64_t half = inv(2);
  std::vector<std::vector<int64_t>> m(r, std::vector<int64_t>(r, half));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  int64_t det = 1;
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = c; i < r; ++i)
      if (m[i][c] % p) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != c) { std::swap(m[piv], m[c]); det = (p - det) % p; }
    det = det * m[c][c] % p;
    int64_t iv = inv(m[c][c]);
    for (int i = c + 1; i < r; ++i) {
      int64_t fct = m[i][c] * iv % p;
      for (int j = c; j < r; ++j) m[i][j] = ((m[i][j] - fct * m[c][j]) % p + p) % p;
    }
  }
  return det;
}

TEST(QuadraticGauss, NuExamples) {
  auto f3 = build_field(3, 1);
  auto f7 = build_field(7, 1);
  for (Elt y = 0; y < 7; ++y) EXPECT_EQ(nu_eval(*f7, {y}), f7->mul(y, y));
  EXPECT_EQ(nu_eval(*f3, {1, 1}), 0u);
  EXPECT_EQ(nu_eval(*f7, {1, 0, 0}), 1u);
  EXPECT_EQ(nu_eval({FFElement(f7, 2), FFElement(f7, 3)}).code(), f7->from_int(4 + 6 + 9));
}

TEST(QuadraticGauss, NuMatchesDoubleSum) {
  auto k = build_field(5, 2);
  std::vector<Elt> y = {3, 17, 0, 24};
  Elt direct = 0;
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i; j < y.size(); ++j) direct = k->add(direct, k->mul(y[i], y[j]));
  EXPECT_EQ(nu_eval(*k, y), direct);
}

TEST(QuadraticGauss, DetClassExamples) {
  for (uint32_t p : {3u, 5u, 7u, 11u}) EXPECT_EQ(det_nu_class(1, *build_field(p, 1)), 1);
  EXPECT_EQ(det_nu_class(2, *build_field(5, 1)), -1);
  EXPECT_EQ(det_nu_class(4, *build_field(3, 1)), -1);
  EXPECT_THROW(det_nu_class(2, *build_field(3, 1)), std::invalid_argument);
  EXPECT_THROW(det_nu_class(2, *build_field(2, 2)), FieldError);
}

TEST(QuadraticGauss, DetClassMatchesGramDeterminant) {
  for (auto [p, f] : odd_fields_up_to(49)) {
    auto k = build_field(p, f);
    std::set<Elt> squares;
    for (Elt y = 1; y < k->q(); ++y) squares.insert(k->mul(y, y));
    for (int r = 1; r <= 8; ++r) {
      if ((r + 1) % int(p) == 0) continue;
      int64_t d = gram_det_mod_p(r, p);
      ASSERT_NE(d, 0);
      int expect = squares.count(k->from_int(d)) ? 1 : -1;
      EXPECT_EQ(det_nu_class(r, *k), expect) << p << "^" << f << " r=" << r;
    }
  }
}

TEST(QuadraticGauss, GaussSumCharExamples) {
  auto f3 = build_field(3, 1);
  auto z3 = CyclotomicInt::zeta_power(3, 1);
  EXPECT_EQ(gauss_sum_char(AdditiveCharacter(f3, 1)), CyclotomicInt::integer(3, 1) + BigInt(2) * z3);
  auto f5 = build_field(5, 1);
  auto g = gauss_sum_char(AdditiveCharacter(f5, 1));
  EXPECT_EQ(g * g, CyclotomicInt::integer(5, 5));
  EXPECT_THROW(gauss_sum_char(AdditiveCharacter(f5, 0)), std::invalid_argument);
}

TEST(QuadraticGauss, GaussSumSquare) {
  for (auto [p, f] : odd_fields_up_to(125)) {
    auto k = build_field(p, f);
    for (Elt b = 1; b < k->q(); ++b) {
      auto g = gauss_sum_char(AdditiveCharacter(k, b));
      EXPECT_EQ(g * g, CyclotomicInt::integer(p, BigInt(minus_one_symbol(k->q())) * k->q()));
    }
  }
}

TEST(QuadraticGauss, TwistLaw) {
  for (auto [p, f] : odd_fields_up_to(81)) {
    auto k = build_field(p, f);
    auto g1 = gauss_sum_char(AdditiveCharacter(k, 1));
    for (Elt b = 1; b < k->q(); ++b)
      EXPECT_EQ(gauss_sum_char(AdditiveCharacter(k, b)), BigInt(k->residue_symbol(b)) * g1);
  }
}

TEST(QuadraticGauss, FormExamples) {
  auto f3 = build_field(3, 1);
  auto z3 = CyclotomicInt::zeta_power(3, 1);
  EXPECT_EQ(gauss_sum_form(1, AdditiveCharacter(f3, 1), *f3), CyclotomicInt::integer(3, 1) + BigInt(2) * z3);
  auto f5 = build_field(5, 1);
  AdditiveCharacter psi(f5, 1);
  EXPECT_EQ(gauss_sum_form(2, psi, *f5), CyclotomicInt::integer(5, -5));
  EXPECT_EQ(gauss_sum_form(2, psi, *f5), gauss_sum_form_closed(2, psi, *f5));
}

// The enumerated quadratic sum equals the determinant class times the r-th
// power of the one-variable sum, for every subfield character.
TEST(QuadraticGauss, FormEqualsClosedForm) {
  for (auto [p, f] : odd_fields_up_to(49)) {
    auto k = build_field(p, f);
    for (int r = 1; r <= 4; ++r) {
      if ((r + 1) % int(p) == 0) continue;
      auto hist = nu_histogram(r, *k);
      for (uint32_t m = 1; m <= f; ++m) {
        if (f % m) continue;
        auto base = build_field(p, m);
        for (Elt b = 1; b < base->q(); ++b) {
          AdditiveCharacter psi(base, b);
          ASSERT_EQ(sum_against(hist, psi, *k), gauss_sum_form_closed(r, psi, *k))
              << p << "^" << f << " r=" << r << " m=" << m << " b=" << b;
        }
      }
    }
  }
}

TEST(QuadraticGauss, TransferMatchesEnumeration) {
  for (auto [p, f] : odd_fields_up_to(27)) {
    auto k = build_field(p, f);
    for (int r = 1; r <= 4; ++r) {
      if ((r + 1) % int(p) == 0) continue;
      EXPECT_TRUE(nu_histogram(r, *k) == nu_histogram_transfer(r, *k)) << p << "^" << f << " r=" << r;
    }
  }
  auto f4 = build_field(2, 2);
  EXPECT_TRUE(nu_histogram(4, *f4) == nu_histogram_transfer(4, *f4));
}

TEST(QuadraticGauss, EnumerationIndependentOfThreadCount) {
  auto k = build_field(7, 2);
  EXPECT_TRUE(nu_histogram(3, *k, kDefaultEnumCap, 1) == nu_histogram(3, *k, kDefaultEnumCap, 5));
}

TEST(QuadraticGauss, CapIsEnforced) {
  auto k = build_field(11, 2);
  EXPECT_THROW(nu_histogram(4, *k, 1000), CapExceeded);
}

TEST(QuadraticGauss, QuarticUnit) {
  EXPECT_EQ(quartic_mul(SignedQuarticUnit::m(3), SignedQuarticUnit::m(3)), SignedQuarticUnit(-1, 0, 3));
  EXPECT_EQ(quartic_mul(SignedQuarticUnit::m(5), SignedQuarticUnit::m(5)), SignedQuarticUnit::one(5));
  SignedQuarticUnit u(-1, 0, 7);
  EXPECT_EQ(u * SignedQuarticUnit::one(7), u);
  for (uint64_t q : {3u, 5u, 9u, 11u}) {
    for (int s : {1, -1}) {
      for (int e : {0, 1}) {
        SignedQuarticUnit a(s, e, q);
        EXPECT_EQ(a * a.inverse(), SignedQuarticUnit::one(q));
        EXPECT_EQ(a.pow(4), SignedQuarticUnit::one(q));
        EXPECT_EQ(a.pow(-1), a.inverse());
      }
    }
  }
  EXPECT_THROW(SignedQuarticUnit::m(3) * SignedQuarticUnit::m(5), std::invalid_argument);
}

}  // namespace
}  // namespace epi
