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

#include "epi/group_action.hpp"

#include <random>

#include "gtest/gtest.h"

namespace epi {
namespace {

bool agree(const HahnSeries& a, const HahnSeries& b) {
  Cap c = min(a.cap(), b.cap());
  if (c.is_infinite()) return a.identical(b);
  return (a.truncate(c) - b.truncate(c)).empty();
}

PSeries random_ps(const FieldPtr& k, int prec, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> pick(0, Elt(k->q() - 1));
  PSeries s(k, prec);
  for (int i = 0; i < prec; ++i) s[i] = pick(rng);
  return s;
}

TEST(PSeries, InverseAndRoot) {
  FieldPtr k = build_field(5, 1);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    PSeries a = random_ps(k, 8, rng);
    if (!a[0]) a[0] = 2;
    EXPECT_EQ(a * ps_inverse(a), PSeries::constant(k, 8, 1));
    a[0] = 1;
    PSeries r = ps_one_unit_root(a, 3);
    EXPECT_EQ(r * r * r, a);
    EXPECT_EQ(r[0], 1u);
  }
  EXPECT_THROW(ps_one_unit_root(PSeries::constant(k, 3, 1), 5), std::invalid_argument);
}

TEST(Charpoly, CompanionMatrix) {
  // companion matrix of x^3 - 2x^2 + 3 over F_7
  FieldPtr k = build_field(7, 1);
  auto c = [&](int64_t v) { return PSeries::constant(k, 1, k->from_int(v)); };
  std::vector<std::vector<PSeries>> A = {{c(0), c(0), c(-3)}, {c(1), c(0), c(0)}, {c(0), c(1), c(2)}};
  auto cp = charpoly(A);
  ASSERT_EQ(cp.size(), 4u);
  EXPECT_EQ(cp[0][0], 1u);
  EXPECT_EQ(cp[1][0], k->from_int(-2));
  EXPECT_EQ(cp[2][0], 0u);
  EXPECT_EQ(cp[3][0], k->from_int(3));
}

TEST(TruncatedMatrix, DeterminantIsMultiplicative) {
  FieldPtr k = build_field(3, 1);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    TruncatedMatrix a(k, 3, 5), b(k, 3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a.at(i, j) = random_ps(k, 5, rng);
        b.at(i, j) = random_ps(k, 5, rng);
      }
    EXPECT_EQ((a * b).det(), a.det() * b.det());
  }
  EXPECT_EQ(TruncatedMatrix::phi_M(k, 3, 4).det(), PSeries::from_digits(k, {0, 1, 0, 0}));
}

TEST(Iwahori, Membership) {
  FieldPtr k = build_field(3, 1);
  auto id = iwahori_check(TruncatedMatrix::identity(k, 3, 3));
  EXPECT_TRUE(id.in_I && id.in_I_units && id.in_UI1 && id.det_is_one);
  TruncatedMatrix g = TruncatedMatrix::identity(k, 3, 3);
  g.at(2, 0)[1] = 1;  // varpi below the diagonal
  g.at(0, 2)[0] = 2;
  auto r = iwahori_check(g);
  EXPECT_TRUE(r.in_UI1);
  auto ph = iwahori_check(TruncatedMatrix::phi_M(k, 3, 3));
  EXPECT_TRUE(ph.in_I);
  EXPECT_FALSE(ph.in_I_units);
  EXPECT_FALSE(ph.in_UI1);
  TruncatedMatrix low = TruncatedMatrix::identity(k, 2, 3);
  low.at(1, 0)[0] = 1;
  EXPECT_FALSE(iwahori_check(low).in_I);
  TruncatedMatrix two = TruncatedMatrix::identity(k, 2, 3);
  two.at(0, 0)[0] = 2;
  EXPECT_TRUE(iwahori_check(two).in_I_units);
  EXPECT_FALSE(iwahori_check(two).in_UI1);
}

TEST(Iwahori, RLMatrix) {
  FieldPtr k = build_field(5, 1);
  EXPECT_EQ(r_L_matrix(TruncatedMatrix::identity(k, 2, 3)), 0u);
  TruncatedMatrix g = TruncatedMatrix::identity(k, 2, 3);
  g.at(1, 0)[1] = 1;
  EXPECT_EQ(r_L_matrix(g), 1u);
  g.at(0, 1)[0] = 3;
  EXPECT_EQ(r_L_matrix(g), 4u);
  // a homomorphism U^1 -> F_q
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      TruncatedMatrix a = random_UI1(k, n, 4, rng, t % 2);
      TruncatedMatrix b = random_UI1(k, n, 4, rng, false);
      EXPECT_EQ(r_L_matrix(a * b), k->add(r_L_matrix(a), r_L_matrix(b)));
      if (t % 2) EXPECT_TRUE(iwahori_check(a).det_is_one);
    }
}

struct DivCell {
  uint32_t p, f;
  int n;
};

TEST(DivisionAlgebra, ReducedTraceAndNorm) {
  for (const DivCell& c : {DivCell{3, 1, 2}, DivCell{2, 2, 3}, DivCell{5, 1, 3}}) {
    FieldPtr kn = build_field(c.p, c.f * uint32_t(c.n));
    FieldPtr kq = build_field(c.p, c.f);
    const int depth = 4 * c.n;
    const int P = depth / c.n;
    auto one = DivisionAlgElement::one(kn, c.f, c.n, depth);
    auto phi = DivisionAlgElement::phi(kn, c.f, c.n, depth);
    EXPECT_EQ(trd(one), PSeries::constant(kq, P, kq->from_int(c.n)));
    EXPECT_EQ(nrd(one), PSeries::constant(kq, P, 1));
    DivisionAlgElement pw = one;
    for (int i = 1; i < c.n; ++i) {
      pw = pw * phi;
      EXPECT_TRUE(trd(pw).is_zero()) << i;
    }
    // Nrd(phi) = (-1)^{n-1} varpi
    PSeries np(kq, P);
    np[1] = c.n % 2 ? 1 : kq->neg(1);
    EXPECT_EQ(nrd(phi), np);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<Elt> pick(0, Elt(kn->q() - 1));
    for (int t = 0; t < 10; ++t) {
      DivisionAlgElement a(kn, c.f, c.n, depth), b(kn, c.f, c.n, depth);
      for (int i = 0; i < depth; ++i) {
        a[i] = pick(rng);
        b[i] = pick(rng);
      }
      EXPECT_EQ(nrd(a * b), nrd(a) * nrd(b));
      EXPECT_EQ(trd(a + b), trd(a) + trd(b));
      if (a[0]) {
        EXPECT_EQ(a * a.inverse(), one);
        EXPECT_EQ(a.inverse() * a, one);
      }
    }
  }
}

TEST(DivisionAlgebra, RLDivisionMatchesKappa) {
  for (const DivCell& c : {DivCell{3, 1, 2}, DivCell{2, 2, 3}, DivCell{3, 1, 4}}) {
    FieldPtr kn = build_field(c.p, c.f * uint32_t(c.n));
    FieldPtr kq = build_field(c.p, c.f);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      auto d = random_UD1(kn, c.f, c.n, 3 * c.n, rng, t % 2);
      // Tr_{q^n/q}(kappa(d)) in F_q codes
      Elt tk = kn->restrict_to(*kq, kn->relative_trace(kappa(d), c.f * uint32_t(c.n), c.f));
      EXPECT_EQ(r_L_div(d), tk);
      if (t % 2) EXPECT_EQ(nrd(d), PSeries::constant(kq, 3, 1));
    }
    // d^{-1} = 1 + zeta phi
    auto e = DivisionAlgElement::one(kn, c.f, c.n, 2 * c.n);
    e[1] = kn->generator();
    Elt tz = kn->restrict_to(*kq, kn->relative_trace(kn->generator(), c.f * uint32_t(c.n), c.f));
    EXPECT_EQ(r_L_div(e.inverse()), tz);
  }
}

TEST(GL, CharacteristicPolynomial) {
  for (uint32_t p : {2u, 3u, 5u})
    for (int n = 2; n <= 12; ++n) {
      GLReport r = gL_matrix(n, p);
      EXPECT_TRUE(r.matches) << p << " " << n;
      EXPECT_EQ(r.charpoly.size(), size_t(n));
      FieldPtr k = build_field(p, 1);
      // det = (-1)^{n-1} times the constant term
      EXPECT_EQ(r.det, (n - 1) % 2 ? k->neg(1) : 1u);
    }
  GLReport two = gL_matrix(2, 3);
  ASSERT_EQ(two.matrix.size(), 1u);
  EXPECT_EQ(two.matrix[0][0], 2u);
}

class Action : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { ctx_ = new LTContext(3, 1, 2); }
  static void TearDownTestSuite() { delete ctx_; }
  static Point point(uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto [yb, zb] = sample_residue_point(*ctx_, rng);
    return solve_affinoid_point(*ctx_, yb, zb).X;
  }
  static LTContext* ctx_;
};
LTContext* Action::ctx_ = nullptr;

TEST_F(Action, IdentityActors) {
  const LTContext& ctx = *ctx_;
  Point X = point(6);
  Actor g;
  g.g = TruncatedMatrix::identity(ctx.residue_field(), 2, 6);
  Actor d{ActorKind::kDivision};
  d.d = DivisionAlgElement::one(ctx.field(), 1, 2, 6);
  Actor w{ActorKind::kWeil};
  w.u = PSeries::constant(ctx.residue_field(), 6, 1);
  for (const Actor& a : {g, d, w}) {
    Point Y = analytic_action(ctx, a, X);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(agree(Y[i], X[i])) << actor_kind_name(a.kind);
  }
}

TEST_F(Action, MatrixActionComposes) {
  const LTContext& ctx = *ctx_;
  Point X = point(7);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 3; ++t) {
    Actor g, h, gh;
    g.g = random_UI1(ctx.residue_field(), 2, 6, rng, false);
    h.g = random_UI1(ctx.residue_field(), 2, 6, rng, false);
    gh.g = *g.g * *h.g;
    Point a = analytic_action(ctx, h, analytic_action(ctx, g, X));
    Point b = analytic_action(ctx, gh, X);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(agree(a[i], b[i]));
  }
}

TEST_F(Action, DiagonalScalarActsTrivially) {
  // (a, a, 1) with a a unit of O_K
  const LTContext& ctx = *ctx_;
  Point X = point(9);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 3; ++t) {
    PSeries a = random_ps(ctx.residue_field(), 3, rng);
    a[0] = 2;
    Actor g, d{ActorKind::kDivision};
    g.g = TruncatedMatrix(ctx.residue_field(), 2, 3);
    for (int i = 0; i < 2; ++i) g.g->at(i, i) = a;
    d.d = DivisionAlgElement::from_K(ctx.field(), 1, 2, a, 6);
    Point Y = analytic_action(ctx, d, analytic_action(ctx, g, X));
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(agree(Y[i], X[i]));
  }
}

TEST_F(Action, CongruencesOnSolverPoints) {
  for (ActorKind kind : {ActorKind::kMatrix, ActorKind::kDivision, ActorKind::kWeil}) {
    ActionReport r = action_congruence_check(*ctx_, kind, 10, 11);
    EXPECT_EQ(r.passed, 10) << r.to_json().dump();
    EXPECT_EQ(r.failed, 0);
  }
}

}  // namespace
}  // namespace epi
