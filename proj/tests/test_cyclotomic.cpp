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

#include <complex>
#include <random>
#include <set>

#include "gtest/gtest.h"

namespace epi {
namespace {

// numeric embedding zeta -> exp(2 pi i / p), used only as an oracle
std::complex<double> embed(const CyclotomicInt& a) {
  const double pi = std::acos(-1.0);
  std::complex<double> z = std::polar(1.0, 2 * pi / a.p()), acc = 0, zp = 1;
  for (const auto& c : a.coefficients()) {
    acc += c.convert_to<double>() * zp;
    zp *= z;
  }
  return acc;
}

CyclotomicInt random_element(uint32_t p, std::mt19937_64& rng) {
  std::vector<BigInt> full(p);
  std::uniform_int_distribution<int> d(-9, 9);
  for (auto& c : full) c = d(rng);
  return CyclotomicInt::from_counts(p, full);
}

TEST(Cyclotomic, RootOfUnityProducts) {
  for (uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
    EXPECT_EQ(CyclotomicInt::zeta_power(p, 1) * CyclotomicInt::zeta_power(p, p - 1),
              CyclotomicInt::integer(p, 1));
    EXPECT_EQ(CyclotomicInt::zeta_power(p, p), CyclotomicInt::integer(p, 1));
  }
}

TEST(Cyclotomic, SquareOfThreeTermGaussSum) {
  auto z = CyclotomicInt::zeta_power(3, 1);
  auto g = CyclotomicInt::integer(3, 1) + BigInt(2) * z;
  EXPECT_EQ(g * g, CyclotomicInt::integer(3, -3));
  EXPECT_EQ(cyc_arith(g, g, CycOp::kMul), CyclotomicInt::integer(3, -3));
  EXPECT_EQ(cyc_arith(g, g, CycOp::kGalois, 2), CyclotomicInt::integer(3, -1) - BigInt(2) * z);
}

TEST(Cyclotomic, SumOfAllRootsVanishes) {
  for (uint32_t p : {2u, 3u, 5u, 11u}) {
    std::vector<uint64_t> ones(p, 1);
    EXPECT_EQ(CyclotomicInt::from_counts(p, ones), CyclotomicInt(p));
  }
}

TEST(Cyclotomic, RingOperationsMatchComplexEmbedding) {
  std::mt19937_64 rng(7);
  for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (int it = 0; it < 50; ++it) {
      auto a = random_element(p, rng), b = random_element(p, rng);
      EXPECT_LT(std::abs(embed(a * b) - embed(a) * embed(b)), 1e-6);
      EXPECT_LT(std::abs(embed(a + b) - embed(a) - embed(b)), 1e-9);
      EXPECT_LT(std::abs(embed(a.pow(3)) - std::pow(embed(a), 3)), 1e-5 * (1 + std::abs(embed(a.pow(3)))));
    }
  }
}

TEST(Cyclotomic, GaloisIsRingAutomorphism) {
  std::mt19937_64 rng(11);
  for (uint32_t p : {3u, 5u, 7u}) {
    for (int it = 0; it < 30; ++it) {
      auto a = random_element(p, rng), b = random_element(p, rng);
      for (uint32_t t = 1; t < p; ++t) {
        EXPECT_EQ((a * b).galois(t), a.galois(t) * b.galois(t));
        EXPECT_EQ((a + b).galois(t), a.galois(t) + b.galois(t));
      }
    }
  }
  EXPECT_THROW(CyclotomicInt::integer(5, 1).galois(5), std::invalid_argument);
  EXPECT_THROW(CyclotomicInt(3) + CyclotomicInt(5), std::invalid_argument);
}

TEST(Cyclotomic, CharacterBasics) {
  auto f3 = build_field(3, 1);
  AdditiveCharacter psi(f3, 1);
  EXPECT_EQ(char_eval(psi, FFElement(f3, 0)), CyclotomicInt::integer(3, 1));
  EXPECT_EQ(char_eval(psi, FFElement(f3, 1)), CyclotomicInt::zeta_power(3, 1));
  auto f25 = build_field(5, 2);
  for (Elt b = 1; b < 25; ++b) {
    AdditiveCharacter pb(f25, b), p1(f25, 1);
    for (Elt x = 0; x < 25; ++x)
      EXPECT_EQ(char_eval(pb, FFElement(f25, x)), char_eval(p1, FFElement(f25, f25->mul(b, x))));
  }
}

TEST(Cyclotomic, CharacterIsAdditive) {
  auto k = build_field(3, 3);
  for (Elt b : {Elt(1), Elt(5), Elt(17)}) {
    AdditiveCharacter psi(k, b);
    for (Elt x = 0; x < k->q(); ++x)
      for (Elt y = 0; y < k->q(); ++y)
        ASSERT_EQ((psi.exponent(*k, x) + psi.exponent(*k, y)) % 3, psi.exponent(*k, k->add(x, y)));
  }
}

TEST(Cyclotomic, Orthogonality) {
  for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 31u}) {
    for (uint32_t m = 1;; ++m) {
      uint64_t q = 1;
      for (uint32_t i = 0; i < m; ++i) q *= p;
      if (q > 1024) break;
      auto k = build_field(p, m);
      for (Elt b = 1; b < q; ++b) {
        AdditiveCharacter psi(k, b);
        std::vector<uint64_t> counts(p, 0);
        for (Elt x = 0; x < q; ++x) ++counts[psi.exponent(*k, x)];
        ASSERT_EQ(CyclotomicInt::from_counts(p, counts), CyclotomicInt(p)) << p << "^" << m << " b=" << b;
      }
    }
  }
}

TEST(Cyclotomic, PrimeFieldCharactersDistinctAndGaloisTwist) {
  for (uint32_t p : {3u, 5u, 7u, 11u}) {
    auto k = build_field(p, 1);
    std::set<std::vector<uint32_t>> seen;
    for (Elt b = 0; b < p; ++b) {
      AdditiveCharacter psi(k, b);
      std::vector<uint32_t> values;
      for (Elt x = 0; x < p; ++x) values.push_back(psi.exponent(*k, x));
      seen.insert(values);
      for (uint32_t t = 1; t < p; ++t) {
        AdditiveCharacter twisted(k, k->mul(Elt(t), b));
        for (Elt x = 0; x < p; ++x)
          EXPECT_EQ(char_eval(psi, FFElement(k, x)).galois(t), char_eval(twisted, FFElement(k, x)));
      }
    }
    EXPECT_EQ(seen.size(), p);
  }
}

TEST(Cyclotomic, ExtensionComposesWithTrace) {
  auto base = build_field(3, 2);
  auto ext = build_field(3, 4);
  AdditiveCharacter psi(base, 4);
  auto table = psi.exponent_table(*ext);
  for (Elt x = 0; x < ext->q(); ++x) {
    FFElement tr = trace_norm(FFElement(ext, x), 2).first;
    EXPECT_EQ(psi.exponent(FFElement(ext, x)), psi.exponent(tr));
    EXPECT_EQ(table[x], psi.exponent(tr));
  }
  EXPECT_THROW(psi.exponent(FFElement(build_field(3, 3), 1)), FieldError);
}

}  // namespace
}  // namespace epi
