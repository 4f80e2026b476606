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

#include "epi/correspondence.hpp"

#include <random>

#include "gtest/gtest.h"

namespace epi {
namespace {

struct Fq {
  uint32_t p, f;
};
const std::vector<Fq> kOdd = {{3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}};

TEST(Tame, ExtensionClasses) {
  EXPECT_EQ(enumerate_tame_extensions(3, 1, 2).size(), 2u);
  EXPECT_EQ(enumerate_tame_extensions(2, 2, 3).size(), 3u);
  EXPECT_EQ(enumerate_tame_extensions(5, 1, 3).size(), 1u);
  EXPECT_THROW(enumerate_tame_extensions(3, 1, 3), std::invalid_argument);
  for (uint32_t p : {2u, 3u, 5u, 7u})
    for (int n = 2; n <= 8; ++n) {
      if (n % int(p) == 0) continue;
      auto reps = enumerate_tame_extensions(p, 1, n);
      EXPECT_EQ(reps.size(), n_q(p, n));
      EXPECT_EQ(reps.front(), 1u);
    }
}

TEST(Tame, DeltaValues) {
  FieldPtr k3 = build_field(3, 1), k5 = build_field(5, 1), k7 = build_field(7, 1);
  for (Elt u = 1; u < 7; ++u) EXPECT_EQ(delta_EK_unit(*k7, 3, u), 1);
  EXPECT_EQ(delta_EK_unit(*k3, 2, 1), 1);
  EXPECT_EQ(delta_EK_unit(*k3, 2, 2), -1);
  EXPECT_EQ(delta_EK_varpi(*k5, 3, 1), -1);
  EXPECT_EQ(delta_EK_varpi(*k7, 3, 2), 1);  // (7/3) = 1
  EXPECT_THROW(delta_EK_unit(*k3, 3, 1), std::invalid_argument);
}

TEST(Tame, MuIsACharacterOfL) {
  // mu(phi_zeta)^n = mu(zeta varpi) = delta(zeta) delta(varpi)
  for (const Fq& c : kOdd) {
    FieldPtr k = build_field(c.p, c.f);
    for (int n = 2; n <= 12; ++n) {
      if (n % int(c.p) == 0) continue;
      SignedQuarticUnit lam = lambda_tame(k->q(), n);
      for (Elt z = 1; z < k->q(); ++z) {
        int d = delta_EK_unit(*k, n, z) * delta_EK_varpi(*k, n, z);
        EXPECT_EQ(lam.pow(n), SignedQuarticUnit(d, 0, k->q())) << k->q() << " " << n << " " << z;
      }
    }
  }
}

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda_tame(5, 3), SignedQuarticUnit(-1, 0, 5));
  for (uint64_t q : {3u, 5u, 7u, 9u, 11u}) EXPECT_EQ(lambda_tame(q, 2), SignedQuarticUnit::m(q));
  EXPECT_EQ(lambda_tame(3, 4), SignedQuarticUnit::m(3));
  EXPECT_THROW(lambda_tame(4, 3), std::invalid_argument);
  EXPECT_THROW(lambda_tame(9, 3), std::invalid_argument);
}

TEST(Lambda, OddDegreeIsIndependentOfPsi) {
  for (uint64_t q : {3u, 5u, 7u, 11u, 13u, 25u})
    for (int n = 3; n <= 11; n += 2) {
      if (std::gcd(uint64_t(n), q) != 1) continue;
      SignedQuarticUnit l1 = lambda_tame(q, n);
      EXPECT_EQ(l1.exponent(), 0);
      for (int64_t b = 1; b < 6; ++b) EXPECT_EQ(lambda_tame(q, n, b), l1);
    }
}

TEST(Lambda, GaussSumTwists) {
  // g(psi_b) = (b/k) g(psi); with b = 2 this is the quadratic subextension step
  for (const Fq& c : kOdd) {
    FieldPtr k = build_field(c.p, c.f);
    CyclotomicInt g1 = gauss_sum_char(AdditiveCharacter(k, 1), *k);
    for (Elt b = 1; b < k->q(); ++b) {
      CyclotomicInt gb = gauss_sum_char(AdditiveCharacter(k, b), *k);
      EXPECT_EQ(gb, BigInt(k->residue_symbol(b)) * g1);
    }
    Elt two = k->from_int(2);
    EXPECT_EQ(k->residue_symbol(two), jacobi(2, int64_t(k->q())));
  }
}

TEST(GaussLambdaIdentity, Examples) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, int>>{{3, 2}, {5, 3}, {7, 4}}) {
    PropKyReport r = verify_prop_ky(p, 1, n);
    EXPECT_TRUE(r.pass()) << r.to_json().dump();
    EXPECT_EQ(r.characters, int(p) - 1);
  }
  EXPECT_EQ(verify_prop_ky(3, 1, 2).lambda, "+m");
  EXPECT_EQ(verify_prop_ky(5, 1, 3).lambda, "-1");
  EXPECT_THROW(verify_prop_ky(2, 1, 3), std::invalid_argument);
}

TEST(GaussLambdaIdentity, SmallGrid) {
  for (const Fq& c : {Fq{3, 1}, Fq{5, 1}, Fq{3, 2}})
    for (int n = 2; n <= 8; ++n) {
      if (n % int(c.p) == 0) continue;
      EXPECT_TRUE(verify_prop_ky(c.p, c.f, n).pass()) << c.p << " " << c.f << " " << n;
    }
}

TEST(CharacterValue, Algebra) {
  CharacterValue m(5, 5), m3(3, 3);
  m.mul_m(1);
  m3.mul_m(1);
  EXPECT_TRUE((m * m).is_one());  // (-1/5) = 1
  CharacterValue minus(3, 3);
  minus.mul_sign(-1);
  EXPECT_EQ(m3 * m3, minus);
  CharacterValue eps(3, 3);
  eps.mul_eps(1);
  EXPECT_EQ(eps, minus);  // eps is -1 in F_3^x
  CharacterValue x(7, 7);
  x.mul_c(2).mul_w(-1).mul_zeta(3).mul_eps(5).mul_m(1);
  EXPECT_TRUE((x * x.inverse()).is_one());
}

class Characters : public ::testing::TestWithParam<std::tuple<uint32_t, uint32_t, int>> {
 protected:
  EpipelagicParam param(bool twisted) const {
    auto [p, f, n] = GetParam();
    EpipelagicParam r;
    r.p = p;
    r.f = f;
    r.n = n;
    FieldPtr k = build_field(p, f);
    r.zeta = k->exp(k->q() > 2 ? 1 : 0);
    r.chi = 1;
    r.omega.trivial = !twisted;
    r.omega.units = 2;
    return r;
  }
};

TEST_P(Characters, GeneratorValues) {
  EpipelagicCharacters ch(param(false));
  const int n = ch.param().n;
  const uint64_t q = ch.kq()->q();
  CharacterValue c(q, ch.param().p);
  c.mul_c(1);
  EXPECT_EQ(ch.Lambda(ch.phi_M(6)), c);
  CharacterValue tc = c;
  tc.mul_sign(n % 2 ? 1 : -1);
  EXPECT_EQ(ch.theta(ch.phi_D(3 * n)), tc);
  // scalars give chi
  for (Elt z = 1; z < q; ++z) {
    TruncatedMatrix s(ch.kq(), n, 4);
    for (int i = 0; i < n; ++i) s.at(i, i)[0] = z;
    EXPECT_EQ(ch.Lambda(s), ch.chi_of(z));
  }
  // 1 + E_{n1} varpi gives psi(zeta^{-1})
  TruncatedMatrix u = TruncatedMatrix::identity(ch.kq(), n, 4);
  u.at(n - 1, 0)[1] = 1;
  EXPECT_EQ(ch.Lambda(u), ch.psi_of(ch.kq()->inv(ch.param().zeta)));
}

TEST_P(Characters, Multiplicative) {
  for (bool tw : {false, true}) {
    EpipelagicCharacters ch(param(tw));
    const int n = ch.param().n;
    const uint64_t q = ch.kq()->q();
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> kk(0, 2);
    std::uniform_int_distribution<Elt> unit(1, Elt(q - 1));
    const int depth = 3 * n + 6;
    auto random_M = [&] {
      TruncatedMatrix s(ch.kq(), n, depth);
      Elt z = unit(rng);
      for (int i = 0; i < n; ++i) s.at(i, i)[0] = z;
      TruncatedMatrix g = s * random_UI1(ch.kq(), n, depth, rng, false);
      for (int t = kk(rng); t > 0; --t) g = ch.phi_M(depth) * g;
      return g;
    };
    auto random_D = [&] {
      // Nrd of a product of valuation up to 4 needs 5 digits of K
      const int ddepth = 6 * n;
      DivisionAlgElement s(ch.kn(), ch.param().f, n, ddepth);
      s[0] = ch.kn()->embed(*ch.kq(), unit(rng));
      DivisionAlgElement d = s * random_UD1(ch.kn(), ch.param().f, n, ddepth, rng, false);
      for (int t = kk(rng); t > 0; --t) d = ch.phi_D(ddepth) * d;
      return d;
    };
    for (int t = 0; t < 50; ++t) {
      TruncatedMatrix a = random_M(), b = random_M();
      EXPECT_EQ(ch.Lambda(a * b), ch.Lambda(a) * ch.Lambda(b));
      DivisionAlgElement x = random_D(), y = random_D();
      EXPECT_EQ(ch.theta(x * y), ch.theta(x) * ch.theta(y));
    }
  }
}

TEST_P(Characters, TwistCoherence) {
  EpipelagicCharacters plain(param(false)), tw(param(true));
  const int n = plain.param().n;
  std::mt19937_64 rng(22);
  const int depth = 3 * n + 4;
  for (int t = 0; t < 10; ++t) {
    TruncatedMatrix g = random_UI1(plain.kq(), n, depth, rng, false);
    if (t % 2) g = plain.phi_M(depth) * g;
    PSeries D = g.det();
    int v = *D.valuation();
    EXPECT_EQ(tw.Lambda(g), plain.Lambda(g) * tw.omega_of(v, D[v]));
    DivisionAlgElement d = random_UD1(plain.kn(), plain.param().f, n, depth, rng, false);
    if (t % 2) d = plain.phi_D(depth) * d;
    PSeries N = nrd(d);
    int w = *N.valuation();
    EXPECT_EQ(tw.theta(d), plain.theta(d) * tw.omega_of(w, N[w]));
  }
}

TEST_P(Characters, LambdaAndThetaAgreeOnL) {
  EpipelagicCharacters ch(param(true));
  const int n = ch.param().n;
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Elt> pick(0, Elt(ch.kq()->q() - 1));
  for (int t = 0; t < 10; ++t) {
    LElement x{t % 3, PSeries(ch.kq(), 6)};
    for (int i = 0; i < 6; ++i) x.a[i] = pick(rng);
    if (!x.a[0]) x.a[0] = 1;
    CharacterValue L = ch.Lambda(ch.embed_M(x, 3 * n + x.k + 2));
    CharacterValue T = ch.theta(ch.embed_D(x, n * (x.k + 3)));
    T.mul_sign((n - 1) * x.k % 2 ? -1 : 1);
    EXPECT_EQ(L, T);
    EXPECT_EQ(ch.xi(x), L);
  }
}

TEST_P(Characters, DomainErrors) {
  EpipelagicCharacters ch(param(false));
  const int n = ch.param().n;
  TruncatedMatrix low = TruncatedMatrix::identity(ch.kq(), n, 4);
  low.at(1, 0)[0] = 1;
  EXPECT_THROW(ch.Lambda(low), std::domain_error);
  if (ch.kq()->q() > 2) {
    TruncatedMatrix diag = TruncatedMatrix::identity(ch.kq(), n, 4);
    diag.at(0, 0)[0] = ch.kq()->exp(1);
    EXPECT_THROW(ch.Lambda(diag), std::domain_error);
  }
  DivisionAlgElement d = DivisionAlgElement::one(ch.kn(), ch.param().f, n, 2 * n);
  d[0] = ch.kn()->generator();
  EXPECT_THROW(ch.theta(d), std::domain_error);
}

INSTANTIATE_TEST_SUITE_P(Cells, Characters,
                         ::testing::Values(std::make_tuple(3u, 1u, 2), std::make_tuple(5u, 1u, 3),
                                           std::make_tuple(2u, 2u, 3), std::make_tuple(7u, 1u, 4),
                                           std::make_tuple(3u, 2u, 2)));

TEST(LLParameter, Values) {
  for (const Fq& c : {Fq{3, 1}, Fq{5, 1}, Fq{7, 1}, Fq{2, 2}})
    for (int n : {2, 3, 4}) {
      if (n % int(c.p) == 0) continue;
      EpipelagicParam prm;
      prm.p = c.p;
      prm.f = c.f;
      prm.n = n;
      prm.chi = 3;
      EpipelagicCharacters ch(prm);
      const FiniteField& k = *ch.kq();
      LLParameter ll = ll_parameter(prm);
      EXPECT_EQ(ll.dim, n);
      if (k.q() % 2) {
        // lambda^{-1} c
        CharacterValue want = CharacterValue::from_quartic(lambda_tame(k.q(), n).inverse(), c.p);
        want.mul_c(1);
        EXPECT_EQ(*ll.at_phi, want);
      } else {
        EXPECT_FALSE(ll.at_phi);
      }
      ASSERT_EQ(ll.at_mu.size(), k.q() - 1);
      for (const auto& [z, v] : ll.at_mu) {
        // (z/k)^{n-1} chi(z)
        CharacterValue want = ch.chi_of(z);
        if (k.p() != 2 && n % 2 == 0) want.mul_sign(k.residue_symbol(z));
        EXPECT_EQ(v, want);
      }
    }
}

TEST(WeilScalar, MatchesMu) {
  for (const Fq& c : kOdd) {
    FieldPtr k = build_field(c.p, c.f);
    for (int n = 2; n <= 12; ++n) {
      if (n % int(c.p) == 0) continue;
      for (Elt u = 1; u < std::min<uint64_t>(k->q(), 6); ++u) {
        WeilScalarReport r = weil_scalar_check(c.p, c.f, n, u);
        EXPECT_TRUE(r.pass()) << r.gauss_side.str() << " vs " << r.mu_side.str();
      }
    }
  }
}

TEST(IndexAudit, Formulas) {
  IndexAudit a = index_audit(3, 1, 2);
  EXPECT_EQ(a.hl_index, 4u);
  EXPECT_EQ(a.dim_rho, 4u);
  EXPECT_EQ(a.n_q, 2u);
  IndexAudit b = index_audit(2, 1, 3, 0);
  EXPECT_EQ(b.hl_index, 21u);
  EXPECT_EQ(b.dim_rho, 7u);
  EXPECT_FALSE(b.oracle_index);
  for (uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
    for (int n = 2; n <= 6; ++n) {
      uint32_t p = q % 2 == 0 ? 2 : (q % 3 == 0 ? 3 : uint32_t(q));
      uint32_t f = q == 4 ? 2 : q == 8 ? 3 : q == 9 ? 2 : 1;
      if (n % int(p) == 0) continue;
      EXPECT_TRUE(index_audit(p, f, n, 0).dims_consistent);
    }
}

TEST(IndexAudit, CosetOracle) {
  // the brute-force count is the index of F_q^x U_D^1 in O_D^x
  for (auto [p, f, n] : std::vector<std::tuple<uint32_t, uint32_t, int>>{{3, 1, 2}, {2, 1, 3}, {5, 1, 2}, {7, 1, 2}}) {
    IndexAudit a = index_audit(p, f, n, 1 << 21);
    ASSERT_TRUE(a.oracle_index) << p << f << n;
    EXPECT_EQ(*a.oracle_index, a.dim_rho);
  }
  EXPECT_TRUE(*index_audit(3, 1, 2).oracle_pass);
}

}  // namespace
}  // namespace epi
