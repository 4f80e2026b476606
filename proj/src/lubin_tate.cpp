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

#include "epi/lubin_tate.hpp"

#include <algorithm>
#include <numeric>

namespace epi {
namespace {

Rational qpow(uint64_t q, int64_t e) {
  Rational r(1), b(int64_t(q), 1);
  for (int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return e < 0 ? Rational(1) / r : r;
}

nlohmann::json cap_json(const Cap& c) { return c.is_infinite() ? nlohmann::json("inf") : nlohmann::json(c.value().str()); }

// sign of a permutation given as images
int perm_sign(const std::vector<int>& perm) {
  int s = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Sum over tuples m (sum 0, max |m_i| <= B) and permutations of
// sign * prod X_i^{q^{n m_i - shift + perm(i)}}, skipping every product whose
// valuation bound reaches cap.
HahnSeries moore_sum(const LTContext& ctx, const Point& X, int B, int shift, const Cap& cap) {
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const FieldPtr& k = ctx.field();
  std::vector<Cap> v(n);
  for (int i = 0; i < n; ++i) v[i] = X[i].val_or_cap();
  auto perms = all_perms(n);
  std::vector<int> signs;
  for (const auto& pm : perms) signs.push_back(perm_sign(pm));
  HahnSeries total(k, cap);
  std::vector<int> m(n, -B);
  if (n == 1) m[0] = 0;
  while (true) {
    int sum = 0;
    for (int i = 0; i + 1 < n; ++i) sum += m[i];
    m[n - 1] = -sum;
    if (std::abs(m[n - 1]) <= B) {
      for (size_t pi = 0; pi < perms.size(); ++pi) {
        Cap lb(Rational(0));
        for (int i = 0; i < n; ++i) lb = lb + v[i] * qpow(q, int64_t(n) * m[i] - shift + perms[pi][i]);
        if (!(lb < cap)) continue;
        HahnSeries prod = HahnSeries::constant(k, signs[pi] > 0 ? 1 : k->neg(1));
        for (int i = 0; i < n && !prod.empty(); ++i)
          prod = (prod * ctx.qfrob(X[i], int64_t(n) * m[i] - shift + perms[pi][i])).truncate(cap);
        total += prod;
      }
    }
    int i = 0;
    for (; i + 1 < n; ++i) {
      if (m[i] < B) {
        ++m[i];
        break;
      }
      m[i] = -B;
    }
    if (i + 1 >= n) break;
  }
  return total.truncate(cap);
}

// Every tuple with max |m_i| > B has some m_i >= (B+1)/(n-1), so its terms have
// valuation >= v_min q^{n ceil((B+1)/(n-1)) - shift}.
int shell_bound(const LTContext& ctx, const Point& X, int shift, const Cap& cap) {
  if (cap.is_infinite()) throw PrecisionError("delta_0: an infinite cap gives an unbounded sum");
  std::optional<Rational> vmin;
  for (const auto& x : X) {
    Cap c = x.val_or_cap();
    if (c.is_infinite()) continue;
    if (!(Rational(0) < c.value())) throw std::invalid_argument("delta_0: coordinates need positive valuation");
    if (!vmin || c.value() < *vmin) vmin = c.value();
  }
  if (!vmin) return 0;
  const int n = ctx.n();
  for (int B = 0;; ++B) {
    int64_t mmax = (B + 1 + (n - 2)) / (n - 1);
    if (!(*vmin * qpow(ctx.q(), int64_t(n) * mmax - shift) < cap.value())) return B;
    if (B > 64) throw PrecisionError("delta_0: tuple bound did not close");
  }
}

HahnSeries sum_pairs(const std::vector<HahnSeries>& Y, const FieldPtr& k) {
  HahnSeries r(k);
  for (size_t i = 0; i < Y.size(); ++i)
    for (size_t j = i; j < Y.size(); ++j) r += Y[i] * Y[j];
  return r;
}

}  // namespace

LTContext::LTContext(uint32_t p, uint32_t f, int n, const LTOptions& opt)
    : p_(p), f_(f), n_(n) {
  if (!is_prime(p) || f < 1) throw std::invalid_argument("LTContext: bad residue field");
  if (n < 2 || n % int(p) == 0) throw std::invalid_argument("LTContext: need n >= 2 prime to p");
  q_ = 1;
  for (uint32_t i = 0; i < f; ++i) q_ *= p;
  kq_ = build_field(p, f);
  k_ = build_field(p, f * uint32_t(n));
  Rational qm1(int64_t(q_) - 1);
  cap_ = opt.cap.num() ? Cap(opt.cap) : Cap(Rational(2) + Rational(1) / qm1);
  phi_cap_ = opt.phi_cap.num() ? opt.phi_cap : cap_.value() + Rational(2);
  point_cap_ = opt.point_cap.num() ? opt.point_cap : Rational(7, 2);
  s_exp_ = Rational(1) / (Rational(n) * qm1);
  for (int i = 0; i < n; ++i) xi_.push_back(HahnSeries::monomial(k_, 1, s_exp_ / qpow(q_, i)));
  eta_ = HahnSeries::monomial(k_, 1, Rational(1, n));
  eta_half_ = HahnSeries::monomial(k_, 1, Rational(1, 2 * n));

  // phi = -(w_1)^{q-1} where w_1 comes down the tower from xi_{L,1}
  Cap W(phi_cap_);
  phi_ = HahnSeries::monomial(k_, k_->neg(1), Rational(1, n), W);
  int top = tower_depth(1, phi_cap_);
  for (phi_iterations_ = 1; phi_iterations_ <= 64; ++phi_iterations_) {
    HahnSeries w1 = tower_powers(top, W)[0];
    HahnSeries next = (-rational_power(w1, qm1, W)).truncate(W);
    bool same = next.identical(phi_);
    phi_ = next;
    if (same) break;
  }
  if (phi_iterations_ > 64) throw PrecisionError("LTContext: phi_L did not stabilize");
  varpi_ = rational_power(phi_, Rational(n));
  bool flip = (q_ % 2 == 1) && ((n - 1) % 2 == 1);
  varpi_prime_ = flip ? -varpi_ : varpi_;
}

HahnSeries LTContext::qfrob(const HahnSeries& x, int64_t j) const { return x.pfrob(int64_t(f_) * j); }

int LTContext::tower_depth(int m, const Rational& cap) const {
  // The error E_k of w_k obeys E_{k-1} = E_k + phi^{q^{k-2}} E_k^{1/q}, so
  // v(E_k)/q^{k-1} gains exactly 1/n per level going down. It starts at
  // v(E_top) >= q^{top-1}/n, which gives v(E_m) >= (top - m + 1) q^{m-1}/n.
  for (int top = m;; ++top)
    if (!(Rational(top - m + 1, n_) < cap)) return top;
}

std::vector<HahnSeries> LTContext::tower_powers(int top, const Cap& cap) const {
  std::vector<HahnSeries> w(top, HahnSeries(k_));
  // v(w_top - xi_{L,1}) = q^{top-1}/n + 1/(nq(q-1)) >= q^{top-1}/n
  Cap start = min(Cap(qpow(q_, top - 1) / Rational(n_)), cap * qpow(q_, top - 1));
  w[top - 1] = xi_[0].truncate(start);
  // w_{k-1} = w_k + phi^{q^{k-2}} w_k^{1/q}
  for (int lev = top; lev >= 2; --lev) {
    const HahnSeries& wk = w[lev - 1];
    w[lev - 2] = (wk + qfrob(phi_, lev - 2) * qfrob(wk, -1)).truncate(cap * qpow(q_, lev - 2));
  }
  return w;
}

HahnSeries phi_action(const LTContext& ctx, const HahnSeries& X) { return ctx.phi() * X + ctx.qfrob(X, 1); }

HahnSeries formal_action(const LTContext& ctx, const std::vector<Elt>& digits, const HahnSeries& X) {
  if (!X.empty() && !(Rational(0) < X.leading().e))
    throw std::invalid_argument("formal_action: argument needs positive valuation");
  HahnSeries res(ctx.field(), X.cap());
  HahnSeries cur = X;
  for (size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] != 0) res += cur.scale(ctx.embed(digits[j]));
    if (j + 1 < digits.size()) cur = phi_action(ctx, cur);
  }
  return res;
}

std::vector<HahnSeries> torsion_tower(const LTContext& ctx, int m) {
  if (m < 1) throw std::invalid_argument("torsion_tower: level must be positive");
  const Cap& cap = ctx.cap();
  int top = ctx.tower_depth(m, cap.value());
  auto w = ctx.tower_powers(top, cap);
  std::vector<HahnSeries> t;
  for (int lev = 1; lev <= m; ++lev) t.push_back(ctx.qfrob(w[lev - 1], -(lev - 1)));
  return t;
}

HahnSeries moore_det(const LTContext& ctx, const Point& X, const Cap& cap) {
  if (int(X.size()) != ctx.n()) throw std::invalid_argument("moore_det: wrong arity");
  const int n = ctx.n();
  const FieldPtr& k = ctx.field();
  HahnSeries total(k, cap);
  for (const auto& pm : all_perms(n)) {
    HahnSeries prod = HahnSeries::constant(k, perm_sign(pm) > 0 ? 1 : k->neg(1));
    for (int i = 0; i < n; ++i) prod = (prod * ctx.qfrob(X[i], pm[i])).truncate(cap);
    total += prod;
  }
  return total;
}

int delta0_shell_bound(const LTContext& ctx, const Point& X, const Cap& cap) { return shell_bound(ctx, X, 0, cap); }

HahnSeries delta_m_shell(const LTContext& ctx, const Point& X, int m, int B, const Cap& cap) {
  if (int(X.size()) != ctx.n() || m < 0 || B < 0) throw std::invalid_argument("delta_m_shell: bad arguments");
  return moore_sum(ctx, X, B, m, cap);
}

HahnSeries delta0_eval(const LTContext& ctx, const Point& X, const Cap& cap) {
  if (int(X.size()) != ctx.n()) throw std::invalid_argument("delta0_eval: wrong arity");
  return moore_sum(ctx, X, shell_bound(ctx, X, 0, cap), 0, cap);
}

HahnSeries delta_m_eval(const LTContext& ctx, const Point& X, int m, const Cap& cap) {
  if (int(X.size()) != ctx.n() || m < 0) throw std::invalid_argument("delta_m_eval: bad arguments");
  return moore_sum(ctx, X, shell_bound(ctx, X, m, cap), m, cap);
}

HahnSeries h_eval(const LTContext& ctx, const Point& X, const Cap& cap) {
  HahnSeries r = ctx.constant(1);
  for (int i = 0; i < ctx.n(); ++i) r = (r * ctx.qfrob(X[i], i)).truncate(cap);
  return r;
}

CMPoint cm_point(const LTContext& ctx) {
  CMPoint out;
  out.xi = ctx.xi();
  out.eta = ctx.eta();
  const Cap& cap = ctx.cap();
  const uint64_t q = ctx.q();
  const Rational qm1(int64_t(q) - 1);

  // xi_{L,1} as the limit of t_{L,m}^{q^{m-1}}
  for (int m = 1; m <= 12; ++m) {
    int top = ctx.tower_depth(m, cap.value());
    auto w = ctx.tower_powers(top, cap);
    Cap margin = (w[m - 1] - ctx.xi()[0]).truncate(cap).val_or_cap();
    out.limit_margins.push_back(margin);
    if (margin == cap) break;
  }
  if (!(out.limit_margins.back() == cap)) throw PrecisionError("cm_point: tower limit did not stabilize");

  // t = lim t'_m^{q^{m-1}}: w'_1 = (-varpi')^{1/(q-1)}, then w'_2 from
  // x + varpi' x^{1/q} = w'_1 by iteration. The iteration closes in on the
  // root up to the kernel, of valuation q/(q-1); w'_3 - w'_2 is of order q.
  Rational tv = Rational(1) + Rational(1) / (Rational(int64_t(q)) * qm1);
  for (int it = 0; it < 8; ++it) tv = Rational(1) + tv / Rational(int64_t(q));
  Cap tcap(std::min(tv, Rational(int64_t(q))));
  HahnSeries w1 = rational_power(-ctx.varpi_prime(), Rational(1) / qm1, tcap);
  HahnSeries d0 = delta0_eval(ctx, ctx.xi(), cap);
  const FieldPtr& k = ctx.field();
  Elt c = k->div(d0.leading().c, w1.leading().c);
  if (k->pow(c, int64_t(q) - 1) != 1) throw std::logic_error("cm_point: no F_q branch matches delta_0(xi)");
  out.t_branch = c;
  w1 = w1.scale(c);
  HahnSeries x = w1;
  for (int it = 0; it < 9; ++it) x = (w1 - ctx.varpi_prime() * ctx.qfrob(x, -1)).truncate(tcap);
  out.t = x;
  HahnSeries ratio = div(d0, out.t);
  out.delta_margin = (ratio - ctx.constant(1)).val_or_cap();
  return out;
}

nlohmann::json CMPoint::to_json() const {
  nlohmann::json m = nlohmann::json::array();
  for (const auto& c : limit_margins) m.push_back(cap_json(c));
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& x : xi) xs.push_back(x.to_json());
  return {{"xi", xs}, {"t", t.to_json()}, {"limit_margins", m}, {"t_branch", t_branch},
          {"delta_margin", cap_json(delta_margin)}};
}

MixedReport lemma_mixed_check(const LTContext& ctx, const Point& X, const Cap& cap) {
  MixedReport rep;
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const Rational qm1(int64_t(q) - 1);
  rep.required = Rational(1, n) + Rational(1) / qm1;
  // the proof only uses v(X_i) >= 1/(n q^{n-1}(q-1)) for every i
  Rational need = Rational(1) / (Rational(n) * qpow(q, n - 1) * qm1);
  for (const auto& x : X)
    if (x.val_or_cap() < Cap(need)) rep.hypothesis = false;
  if (!rep.hypothesis) throw std::invalid_argument("lemma_mixed_check: valuation hypothesis violated");
  HahnSeries d0 = delta0_eval(ctx, X, cap);
  rep.ok = true;
  for (int m = 1; m <= 2; ++m) {
    HahnSeries dm = delta_m_eval(ctx, X, m, cap * qpow(q, -m));
    Cap margin = (ctx.qfrob(dm, m) - d0).truncate(cap).val_or_cap();
    rep.margins.push_back(margin);
    if (!(Cap(rep.required) < margin)) rep.ok = false;
  }
  return rep;
}

nlohmann::json MixedReport::to_json() const {
  nlohmann::json m = nlohmann::json::array();
  for (const auto& c : margins) m.push_back(cap_json(c));
  return {{"hypothesis", hypothesis}, {"ok", ok}, {"required", required.str()}, {"margins", m}};
}

AffinoidReport affinoid_membership(const LTContext& ctx, const Point& X) {
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  AffinoidReport rep;
  std::vector<HahnSeries> x;
  for (int i = 0; i < n; ++i) x.push_back(X[i].shift(-ctx.xi()[i].leading().e));
  auto test = [&](const HahnSeries& d, const Rational& bound) {
    Cap v = d.val_or_cap();
    rep.values.push_back(v);
    rep.bounds.push_back(bound);
    if (d.empty() && d.cap() <= Cap(bound)) throw PrecisionError("affinoid_membership: cap below the bound");
    return !(v < Cap(bound));
  };
  bool ok = test(x[n - 1] - ctx.constant(1), Rational(1) / (Rational(2 * n) * qpow(q, n - 1)));
  for (int i = 0; i + 1 < n; ++i) ok = test(x[i] - x[i + 1], Rational(1) / (Rational(2 * n) * qpow(q, i + 1))) && ok;
  rep.member = ok;
  return rep;
}

HahnSeries f0q_eval(const LTContext& ctx, const Point& X, const Cap& cap) {
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const Rational qm1(int64_t(q) - 1);
  HahnSeries r(ctx.field(), cap);
  for (int i = 0; i + 1 < n; ++i) r += rational_power(div(X[i], X[i + 1]), qpow(q, i + 1) * qm1);
  r += rational_power(div(ctx.qfrob(X[n - 1], n), X[0]), qm1);
  return r.truncate(cap);
}

Coords coords(const LTContext& ctx, const Point& X) {
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const Rational qm1(int64_t(q) - 1);
  Coords c;
  std::vector<HahnSeries> x;
  for (int i = 0; i < n; ++i) x.push_back(X[i].shift(-ctx.xi()[i].leading().e));
  for (int i = 0; i + 1 < n; ++i) {
    c.Y.push_back(rational_power(div(x[i], x[i + 1]), qpow(q, i + 1) * qm1) - ctx.constant(1));
    c.y.push_back(c.Y.back().shift(-ctx.eta_half().leading().e));
  }
  c.f0q = f0q_eval(ctx, X, Cap());
  HahnSeries base = f0q_eval(ctx, ctx.xi(), Cap());
  c.Z = ctx.qfrob(c.f0q - base, -1);
  c.z = c.Z.shift(-ctx.eta().leading().e);
  return c;
}

Point theta_inverse(const LTContext& ctx, const std::vector<HahnSeries>& y, const HahnSeries& z) {
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const Rational qm1(int64_t(q) - 1);
  if (int(y.size()) != n - 1) throw std::invalid_argument("theta_inverse: need n - 1 values of y");
  for (const auto& s : y)
    if (!s.empty() && s.leading().e < Rational(0)) throw std::invalid_argument("theta_inverse: v(y) < 0");
  if (!z.empty() && z.leading().e < Rational(0)) throw std::invalid_argument("theta_inverse: v(z) < 0");
  const Cap P(ctx.point_cap());
  const HahnSeries one = ctx.constant(1);
  std::vector<HahnSeries> Y;
  for (const auto& s : y) Y.push_back(ctx.eta_half() * s);
  // x_i / x_{i+1} = (1 + Y_i)^{1/(q^i (q-1))}
  std::vector<HahnSeries> ratio;
  for (int i = 0; i + 1 < n; ++i)
    ratio.push_back(ctx.qfrob(binomial_power(Y[i], Rational(1) / qm1, P * qpow(q, i + 1)), -(i + 1)));
  // x_n^{(q-1)(q^n-1)} = (1 + eta z^q - sum Y_i) prod (1 + Y_i)^{q^{-i}}
  HahnSeries rhs = (one + (ctx.eta() * ctx.qfrob(z, 1)).truncate(P)).truncate(P);
  for (const auto& s : Y) rhs -= s;
  rhs = rhs.truncate(P);
  for (int i = 0; i + 1 < n; ++i) rhs = (rhs * ctx.qfrob((one + Y[i]).truncate(P * qpow(q, i + 1)), -(i + 1))).truncate(P);
  if (rhs.empty() || rhs.leading().e != Rational(0) || rhs.leading().c != 1)
    throw PrecisionError("theta_inverse: x_n equation is not a unit congruent to 1");
  Rational e = Rational(1) / (qm1 * (qpow(q, n) - Rational(1)));
  std::vector<HahnSeries> x(n, HahnSeries(ctx.field()));
  x[n - 1] = rational_power(rhs, e, P);
  for (int i = n - 2; i >= 0; --i) x[i] = (x[i + 1] * ratio[i]).truncate(P);
  Point X;
  for (int i = 0; i < n; ++i) X.push_back(ctx.xi()[i] * x[i]);
  return X;
}

std::optional<Elt> residue_branch(const LTContext& ctx, Elt c) {
  const FiniteField& k = *ctx.field();
  for (Elt z = 0; z < k.q(); ++z) {
    if (k.sub(ctx.qfrob(z, 1), z) != c) continue;
    if (k.trace(z, ctx.f()) == 0) return z;
  }
  return std::nullopt;
}

Elt quadratic_residue(const LTContext& ctx, const std::vector<Elt>& ybar) {
  const FiniteField& k = *ctx.field();
  Elt c = 0;
  for (size_t i = 0; i < ybar.size(); ++i)
    for (size_t j = i; j < ybar.size(); ++j) c = k.add(c, k.mul(ybar[i], ybar[j]));
  return c;
}

std::pair<std::vector<Elt>, Elt> sample_residue_point(const LTContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> pick(0, Elt(ctx.field()->q() - 1));
  while (true) {
    std::vector<Elt> y(ctx.n() - 1);
    for (auto& v : y) v = pick(rng);
    auto z = residue_branch(ctx, quadratic_residue(ctx, y));
    if (z) return {y, *z};
  }
}

std::vector<HahnSeries> sample_lift(const LTContext& ctx, const std::vector<Elt>& ybar, int terms,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> coef(1, Elt(ctx.field()->q() - 1));
  const int64_t d = 2 * int64_t(ctx.n()) * int64_t(ctx.q() - 1);
  std::uniform_int_distribution<int64_t> num(1, d);
  std::vector<HahnSeries> y;
  for (Elt c : ybar) {
    std::vector<Term> t{{Rational(0), c}};
    for (int i = 0; i < terms; ++i) t.push_back({Rational(num(rng), d), coef(rng)});
    y.push_back(HahnSeries::from_terms(ctx.field(), t, Cap()));
  }
  return y;
}

namespace {

// S = R(X)/eta with R from delta_0
HahnSeries s_function(const LTContext& ctx, const Point& X, const Coords& c, const HahnSeries& d0xi,
                      const HahnSeries& hxi) {
  const Cap P(ctx.point_cap());
  const Rational qm1(int64_t(ctx.q()) - 1);
  const HahnSeries one = ctx.constant(1);
  HahnSeries hX = h_eval(ctx, X, P);
  HahnSeries dX = delta0_eval(ctx, X, P);
  HahnSeries ratio = div(d0xi * hX, hxi * dX);  // 1 + Z + F
  HahnSeries prod = one;
  for (const auto& s : c.Y) prod = prod * (one + s);
  HahnSeries R(ctx.field());
  for (const auto& s : c.Y) R += s;
  R += div(rational_power(ratio, qm1 * qm1), prod);
  R = R - one - sum_pairs(c.Y, ctx.field()) - c.Z;
  return R.shift(-ctx.eta().leading().e);
}

}  // namespace

SolveResult solve_affinoid_point(const LTContext& ctx, const std::vector<Elt>& ybar, Elt zbar, int max_iter) {
  std::vector<HahnSeries> y;
  for (Elt c : ybar) y.push_back(ctx.constant(c));
  return solve_affinoid_point(ctx, y, zbar, max_iter);
}

SolveResult solve_affinoid_point(const LTContext& ctx, const std::vector<HahnSeries>& y, Elt zbar, int max_iter) {
  if (int(y.size()) != ctx.n() - 1) throw std::invalid_argument("solve_affinoid_point: need n - 1 values");
  SolveResult out;
  for (const auto& s : y) {
    if (!s.empty() && s.leading().e < Rational(0)) throw std::invalid_argument("solve_affinoid_point: v(y) < 0");
    out.ybar.push_back(s.coeff(Rational(0)));
  }
  out.zbar = zbar;
  const FiniteField& k = *ctx.field();
  if (k.sub(ctx.qfrob(zbar, 1), zbar) != quadratic_residue(ctx, out.ybar))
    throw std::invalid_argument("solve_affinoid_point: zbar does not solve the residue equation");
  const Cap P(ctx.point_cap());
  const Cap hi(ctx.point_cap() + Rational(2));
  HahnSeries d0xi = delta0_eval(ctx, ctx.xi(), hi);
  HahnSeries hxi = h_eval(ctx, ctx.xi(), hi);
  out.y = y;
  HahnSeries yy = sum_pairs(out.y, ctx.field());
  HahnSeries z = ctx.constant(zbar);
  for (out.iterations = 1; out.iterations <= max_iter; ++out.iterations) {
    Point X = theta_inverse(ctx, out.y, z);
    Coords c = coords(ctx, X);
    HahnSeries S = s_function(ctx, X, c, d0xi, hxi);
    HahnSeries next = ctx.qfrob(z, 1) - yy - S;
    HahnSeries dz = next - z;
    out.step_valuations.push_back(dz.val_or_cap());
    z = next;
    if (dz.empty()) {
      out.converged = true;
      break;
    }
  }
  out.z = z;
  out.z_cap = z.cap();
  out.X = theta_inverse(ctx, out.y, z);
  HahnSeries dX = delta0_eval(ctx, out.X, P);
  out.delta_margin = (div(dX, d0xi) - ctx.constant(1)).val_or_cap();
  return out;
}

nlohmann::json SolveResult::to_json() const {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& c : step_valuations) steps.push_back(cap_json(c));
  return {{"ybar", ybar}, {"zbar", zbar}, {"iterations", iterations}, {"converged", converged},
          {"step_valuations", steps}, {"z_cap", cap_json(z_cap)}, {"delta_margin", cap_json(delta_margin)}};
}

RedmodReport verify_redmod(const LTContext& ctx, const SolveResult& pt) {
  RedmodReport rep;
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const Cap P(ctx.point_cap());
  Coords c = coords(ctx, pt.X);
  HahnSeries res = ctx.qfrob(c.z, 1) - c.z - sum_pairs(c.y, ctx.field());
  rep.residual = res.val_or_cap();
  if (res.empty() && !(Cap(Rational(0)) < res.cap())) throw PrecisionError("verify_redmod: cap too small to certify");
  rep.positive = Cap(Rational(0)) < rep.residual;

  // f = 1 - delta_0/h against f_0 = (f_0^q)^{1/q}
  const HahnSeries one = ctx.constant(1);
  auto f_of = [&](const Point& X) { return one - div(delta0_eval(ctx, X, P), h_eval(ctx, X, P)); };
  HahnSeries fX = f_of(pt.X), fxi = f_of(ctx.xi());
  HahnSeries f0 = ctx.qfrob(c.f0q, -1);
  rep.fzapp_f = (fX - f0).val_or_cap();
  rep.fzapp_z = (c.Z - (fX - fxi)).val_or_cap();
  Rational bf = Rational(int64_t(q) - 1) / Rational(int64_t(n) * int64_t(q));
  rep.fzapp_ok = Cap(bf) < rep.fzapp_f && Cap(Rational(1, n)) < rep.fzapp_z;
  try {
    rep.affinoid = affinoid_membership(ctx, pt.X).member;
  } catch (const PrecisionError&) {
    rep.affinoid = false;
  }
  return rep;
}

nlohmann::json RedmodReport::to_json() const {
  return {{"residual", cap_json(residual)}, {"positive", positive}, {"fzapp_f", cap_json(fzapp_f)},
          {"fzapp_z", cap_json(fzapp_z)}, {"fzapp_ok", fzapp_ok}, {"affinoid", affinoid}};
}

}  // namespace epi
