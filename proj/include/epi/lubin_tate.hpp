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

#ifndef EPI_LUBIN_TATE_HPP_
#define EPI_LUBIN_TATE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "epi/hahn_series.hpp"

namespace epi {

// A point of the perfectoid polydisc: X_1, ..., X_n stored 0-based.
using Point = std::vector<HahnSeries>;

struct LTOptions {
  // precision of the CM-point level checks; 0 means 2 + 1/(q-1)
  Rational cap{0};
  // precision of the uniformizer phi_L; 0 means cap + 2
  Rational phi_cap{0};
  // precision of points built from (y, z); 0 means 7/2
  Rational point_cap{0};
};

// The totally ramified extension L = K(phi_L), K = F_q((varpi)), realized
// inside Hahn series over F_{q^n} in a variable T chosen so that the CM
// point is a monomial: xi_{L,1} = T^{1/(n(q-1))}. phi_L is the series
// determined by requiring lim t_{L,m}^{q^{m-1}} = xi_{L,1}; it is found as
// the fixed point of the tower recursion and has v(phi_L) = 1/n.
class LTContext {
 public:
  LTContext(uint32_t p, uint32_t f, int n, const LTOptions& opt = {});

  uint32_t p() const { return p_; }
  uint32_t f() const { return f_; }
  uint64_t q() const { return q_; }
  int n() const { return n_; }
  // coefficient field F_{q^n} and residue field F_q
  const FieldPtr& field() const { return k_; }
  const FieldPtr& residue_field() const { return kq_; }
  const Cap& cap() const { return cap_; }
  const Rational& point_cap() const { return point_cap_; }
  const Rational& phi_cap() const { return phi_cap_; }

  // x -> x^{q^j}
  HahnSeries qfrob(const HahnSeries& x, int64_t j) const;
  Elt qfrob(Elt c, int64_t j) const { return k_->frob(c, int64_t(f_) * j); }
  HahnSeries constant(Elt c) const { return HahnSeries::constant(k_, c); }
  HahnSeries monomial(Elt c, const Rational& e, Cap cap = Cap()) const {
    return HahnSeries::monomial(k_, c, e, cap);
  }
  // F_q code -> F_{q^n} code
  Elt embed(Elt c) const { return k_->embed(*kq_, c); }

  const HahnSeries& phi() const { return phi_; }
  const HahnSeries& varpi() const { return varpi_; }
  // (-1)^{q(n-1)} varpi
  const HahnSeries& varpi_prime() const { return varpi_prime_; }
  int phi_iterations() const { return phi_iterations_; }
  // xi_{L,i+1} = T^{q^{-i}/(n(q-1))}, exact
  const Point& xi() const { return xi_; }
  // eta_L = xi_{L,1}^{q-1} and the chosen square root T^{1/(2n)}
  const HahnSeries& eta() const { return eta_; }
  const HahnSeries& eta_half() const { return eta_half_; }
  const Rational& xi_exponent() const { return s_exp_; }

  // w_1, ..., w_top with w_k = t_{L,k}^{q^{k-1}}, each known to `cap`
  // relative to its own scale; w_top starts at xi_{L,1}
  std::vector<HahnSeries> tower_powers(int top, const Cap& cap) const;
  // least top level with the truncation error of w_1..w_m beyond cap
  int tower_depth(int m, const Rational& cap) const;

 private:
  uint32_t p_, f_;
  uint64_t q_;
  int n_;
  FieldPtr k_, kq_;
  Cap cap_;
  Rational phi_cap_, point_cap_, s_exp_;
  HahnSeries phi_, varpi_, varpi_prime_, eta_, eta_half_;
  Point xi_;
  int phi_iterations_ = 0;
};

// sum_j [a_j phi_L^j](X) with digits a_j in F_q (residue-field codes); the
// formal O_L-module is additive with [phi_L](X) = phi_L X + X^q
HahnSeries formal_action(const LTContext& ctx, const std::vector<Elt>& digits, const HahnSeries& X);
HahnSeries phi_action(const LTContext& ctx, const HahnSeries& X);

// t_{L,1}, ..., t_{L,m}; t_{L,1} = (-phi_L)^{1/(q-1)} with the least-log root
std::vector<HahnSeries> torsion_tower(const LTContext& ctx, int m);

struct CMPoint {
  Point xi;
  HahnSeries t;
  HahnSeries eta;
  // v(t_{L,m}^{q^{m-1}} - xi_{L,1}) for m = 1, ..., depth
  std::vector<Cap> limit_margins;
  // F_q^x scalar applied to the least-log root of -varpi' so that t and
  // delta_0(xi) share a leading coefficient
  Elt t_branch = 1;
  // v(delta_0(xi)/t - 1)
  Cap delta_margin;
  nlohmann::json to_json() const;
};
CMPoint cm_point(const LTContext& ctx);

// det(X_i^{q^j}), exact up to the caps of the entries
HahnSeries moore_det(const LTContext& ctx, const Point& X, const Cap& cap = Cap());
// sum over m_1 + ... + m_n = 0 of moore_det(X_i^{q^{n m_i}}), all tuples
// whose term can fall below cap; requires v(X_i) > 0
HahnSeries delta0_eval(const LTContext& ctx, const Point& X, const Cap& cap);
// delta_m(X) with exponents q^{n m_i - m}
HahnSeries delta_m_eval(const LTContext& ctx, const Point& X, int m, const Cap& cap);
// the tuple bound used by delta0_eval
int delta0_shell_bound(const LTContext& ctx, const Point& X, const Cap& cap);
// the delta_m sum over tuples with max |m_i| <= B
HahnSeries delta_m_shell(const LTContext& ctx, const Point& X, int m, int B, const Cap& cap);

// h(X) = prod X_i^{q^{i-1}}
HahnSeries h_eval(const LTContext& ctx, const Point& X, const Cap& cap);

struct MixedReport {
  bool hypothesis = true;
  bool ok = false;
  Rational required;       // 1/n + 1/(q-1)
  std::vector<Cap> margins;  // v(delta_m^{q^m} - delta_0), m = 1, 2
  nlohmann::json to_json() const;
};
MixedReport lemma_mixed_check(const LTContext& ctx, const Point& X, const Cap& cap);

struct AffinoidReport {
  bool member = false;
  std::vector<Cap> values;    // v(x_n - 1), v(x_i - x_{i+1})
  std::vector<Rational> bounds;
};
// v(X_n/xi_n - 1) >= 1/(2nq^{n-1}) and v(X_i/xi_i - X_{i+1}/xi_{i+1}) >= 1/(2nq^i);
// throws PrecisionError when a cap hides the answer
AffinoidReport affinoid_membership(const LTContext& ctx, const Point& X);

struct Coords {
  HahnSeries f0q;            // f_0(X)^q
  HahnSeries Z;              // f_0(X) - f_0(xi)
  std::vector<HahnSeries> Y; // (x_i/x_{i+1})^{q^i(q-1)} - 1
  std::vector<HahnSeries> y; // Y_i / eta^{1/2}
  HahnSeries z;              // Z / eta
};
Coords coords(const LTContext& ctx, const Point& X);
// f_0(X)^q
HahnSeries f0q_eval(const LTContext& ctx, const Point& X, const Cap& cap);

// inverse of (y, z): x_i/x_{i+1} from Y_i, then x_n from the Z-equation with
// the root congruent to 1
Point theta_inverse(const LTContext& ctx, const std::vector<HahnSeries>& y, const HahnSeries& z);

struct SolveResult {
  std::vector<Elt> ybar;
  Elt zbar = 0;
  Point X;
  std::vector<HahnSeries> y;
  HahnSeries z;
  int iterations = 0;
  bool converged = false;
  std::vector<Cap> step_valuations;  // v(z_{k+1} - z_k)
  Cap z_cap;                         // precision of the final z
  Cap delta_margin;                  // v(delta_0(X)/delta_0(xi) - 1)
  nlohmann::json to_json() const;
};
// Iterates z <- z^q - sum y_i y_j - S(y, z) from the residue branch, with
// S = R/eta computed from delta_0
SolveResult solve_affinoid_point(const LTContext& ctx, const std::vector<Elt>& ybar, Elt zbar,
                                 int max_iter = 64);
// the same with y lifted to series with residues ybar; zbar must solve the
// residue equation for ybar
SolveResult solve_affinoid_point(const LTContext& ctx, const std::vector<HahnSeries>& y, Elt zbar,
                                 int max_iter = 64);

// the root of z^q - z = c in F_{q^n} with Tr_{F_{q^n}/F_q}(z) = 0, if any
std::optional<Elt> residue_branch(const LTContext& ctx, Elt c);
// sum_{i<=j} y_i y_j
Elt quadratic_residue(const LTContext& ctx, const std::vector<Elt>& ybar);
// random ybar with a solvable z-equation, and its branch
std::pair<std::vector<Elt>, Elt> sample_residue_point(const LTContext& ctx, std::mt19937_64& rng);
// ybar_i plus `terms` random monomials with exponents in (0, 1]
std::vector<HahnSeries> sample_lift(const LTContext& ctx, const std::vector<Elt>& ybar, int terms,
                                    std::mt19937_64& rng);

struct RedmodReport {
  Cap residual;         // v(z^q - z - sum y_i y_j)
  bool positive = false;
  Cap fzapp_f;          // v(f(X) - f_0(X)), needs > (q-1)/(nq)
  Cap fzapp_z;          // v(Z - (f(X) - f(xi))), needs > 1/n
  bool fzapp_ok = false;
  bool affinoid = false;
  nlohmann::json to_json() const;
};
RedmodReport verify_redmod(const LTContext& ctx, const SolveResult& point);

}  // namespace epi

#endif  // EPI_LUBIN_TATE_HPP_
