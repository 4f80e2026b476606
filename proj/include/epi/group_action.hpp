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

#ifndef EPI_GROUP_ACTION_HPP_
#define EPI_GROUP_ACTION_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epi/finite_field.hpp"
#include "epi/lubin_tate.hpp"
#include "json.hpp"

namespace epi {

// sum c_i varpi^i for i < prec over a finite field, known modulo varpi^prec.
// K = F_q((varpi)) has characteristic p, so the varpi-adic digits of a sum
// are the sums of the digits.
class PSeries {
 public:
  PSeries() = default;
  PSeries(FieldPtr k, int prec) : k_(std::move(k)), c_(size_t(prec), 0) {}
  static PSeries constant(FieldPtr k, int prec, Elt c);
  static PSeries from_digits(FieldPtr k, std::vector<Elt> digits);

  const FieldPtr& field() const { return k_; }
  int prec() const { return int(c_.size()); }
  Elt operator[](int i) const { return c_[size_t(i)]; }
  Elt& operator[](int i) { return c_[size_t(i)]; }
  const std::vector<Elt>& digits() const { return c_; }
  // least index with a nonzero digit
  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation(); }

  PSeries truncate(int prec) const;
  PSeries operator-() const;
  friend PSeries operator+(const PSeries& a, const PSeries& b);
  friend PSeries operator-(const PSeries& a, const PSeries& b);
  friend PSeries operator*(const PSeries& a, const PSeries& b);
  // coefficientwise x -> x^{p^j}
  PSeries frob(int64_t j) const;
  // same precision and digits
  friend bool operator==(const PSeries& a, const PSeries& b) { return a.k_.get() == b.k_.get() && a.c_ == b.c_; }

  nlohmann::json to_json() const { return c_; }

 private:
  FieldPtr k_;
  std::vector<Elt> c_;
};

// inverse of a unit (digit 0 nonzero)
PSeries ps_inverse(const PSeries& a);
// the n-th root congruent to 1 of a 1-unit, p not dividing n
PSeries ps_one_unit_root(const PSeries& a, int n);

// Coefficients c_0 = 1, c_1, ..., c_m of det(x - A), computed without
// division (Berkowitz), so it applies over the truncated series ring.
std::vector<PSeries> charpoly(const std::vector<std::vector<PSeries>>& A);

// n x n matrix over O_K = F_q[[varpi]], entries known modulo varpi^depth
class TruncatedMatrix {
 public:
  TruncatedMatrix(FieldPtr kq, int n, int depth);
  static TruncatedMatrix identity(FieldPtr kq, int n, int depth);
  // rows (0, I_{n-1}) and (varpi_L, 0)
  static TruncatedMatrix phi_M(FieldPtr kq, int n, int depth);

  int n() const { return n_; }
  int depth() const { return depth_; }
  const FieldPtr& field() const { return k_; }
  const PSeries& at(int i, int j) const { return a_[size_t(i * n_ + j)]; }
  PSeries& at(int i, int j) { return a_[size_t(i * n_ + j)]; }

  friend TruncatedMatrix operator+(const TruncatedMatrix& a, const TruncatedMatrix& b);
  friend TruncatedMatrix operator-(const TruncatedMatrix& a, const TruncatedMatrix& b);
  friend TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b);
  friend bool operator==(const TruncatedMatrix& a, const TruncatedMatrix& b) { return a.a_ == b.a_; }
  PSeries det() const;
  nlohmann::json to_json() const;

 private:
  FieldPtr k_;
  int n_, depth_;
  std::vector<PSeries> a_;
};

struct IwahoriReport {
  bool in_I = false;        // reduction upper triangular
  bool in_I_units = false;  // and invertible
  bool in_UI1 = false;      // reduction upper triangular unipotent
  bool det_is_one = false;  // det = 1 modulo varpi^depth
  PSeries det;
  nlohmann::json to_json() const;
};
// needs depth >= 2
IwahoriReport iwahori_check(const TruncatedMatrix& g);

// residue of tr(phi_M^{-1}(g - 1)) as an F_q code; g must lie in U^1
Elt r_L_matrix(const TruncatedMatrix& g);
// random element of U^1, scaled in its first column to det 1 if asked
TruncatedMatrix random_UI1(FieldPtr kq, int n, int depth, std::mt19937_64& rng, bool det_one);

// sum_{i < depth} c_i phi^i in O_D with c_i in F_{q^n}, phi c = c^q phi and
// phi^n = varpi
class DivisionAlgElement {
 public:
  DivisionAlgElement(FieldPtr kn, uint32_t f, int n, int depth);
  static DivisionAlgElement one(FieldPtr kn, uint32_t f, int n, int depth);
  static DivisionAlgElement phi(FieldPtr kn, uint32_t f, int n, int depth);
  // a central element of O_K, digits in F_q codes
  static DivisionAlgElement from_K(FieldPtr kn, uint32_t f, int n, const PSeries& a, int depth);

  const FieldPtr& field() const { return k_; }
  uint32_t f() const { return f_; }
  int n() const { return n_; }
  int depth() const { return int(c_.size()); }
  Elt operator[](int i) const { return c_[size_t(i)]; }
  Elt& operator[](int i) { return c_[size_t(i)]; }

  friend DivisionAlgElement operator+(const DivisionAlgElement& a, const DivisionAlgElement& b);
  friend DivisionAlgElement operator-(const DivisionAlgElement& a, const DivisionAlgElement& b);
  friend DivisionAlgElement operator*(const DivisionAlgElement& a, const DivisionAlgElement& b);
  friend bool operator==(const DivisionAlgElement& a, const DivisionAlgElement& b) { return a.c_ == b.c_; }
  // needs c_0 != 0
  DivisionAlgElement inverse() const;
  // phi^{-1} x for x in phi O_D
  DivisionAlgElement phi_inverse_times() const;
  // the n x n matrix over K_n of left multiplication on the right K_n-basis
  // 1, phi, ..., phi^{n-1}, entries known modulo varpi^{floor(depth/n)}
  std::vector<std::vector<PSeries>> regular_representation() const;
  nlohmann::json to_json() const { return c_; }

 private:
  FieldPtr k_;
  uint32_t f_;
  int n_;
  std::vector<Elt> c_;
};

// Trd and Nrd as elements of O_K (F_q digits), from the regular
// representation; throws std::logic_error if a value fails to descend to K
PSeries trd(const DivisionAlgElement& d);
PSeries nrd(const DivisionAlgElement& d);

enum class DivOp { kMul, kTrd, kNrd };
struct DivResult {
  std::optional<DivisionAlgElement> element;
  std::optional<PSeries> value;
};
DivResult div_alg_ops(const DivisionAlgElement& a, const DivisionAlgElement& b, DivOp op);

// residue of Trd((-phi)^{-1}(d - 1)) as an F_q code; d must be 1 mod phi
Elt r_L_div(const DivisionAlgElement& d);
// kappa(d) = e_1/e_0 for d^{-1} = sum e_i phi^i
Elt kappa(const DivisionAlgElement& d);
// random element of U_D^1, times the central n-th root making Nrd = 1 if asked
DivisionAlgElement random_UD1(FieldPtr kn, uint32_t f, int n, int depth, std::mt19937_64& rng, bool nrd_one);

struct GLReport {
  int n = 0;
  std::vector<std::vector<Elt>> matrix;  // over F_p
  std::vector<Elt> charpoly;             // c_0 = 1, ..., c_{n-1}
  bool matches = false;                  // equals (T^n - 1)/(T - 1)
  Elt det = 0;
  nlohmann::json to_json() const;
};
// the action y_1 -> -sum y_i, y_i -> y_{i-1} on F_p^{n-1}
GLReport gL_matrix(int n, uint32_t p);

enum class ActorKind { kMatrix, kDivision, kWeil };
std::string actor_kind_name(ActorKind k);

struct Actor {
  ActorKind kind = ActorKind::kMatrix;
  std::optional<TruncatedMatrix> g;
  std::optional<DivisionAlgElement> d;
  // Weil element sigma in W_L with Art_L^{-1}(sigma) = u phi_L^{n_sigma};
  // u is a unit of O_L = F_q[[phi_L]]
  std::optional<PSeries> u;
  int n_sigma = 0;
  nlohmann::json to_json() const;
};

// sigma^{-1} on a series: coefficients c -> c^{q^{n_sigma}} and
// xi_{L,1} -> sum w_j xi_{L,1}^{q^j} with w = u^{-1}; exponents must lie in
// xi_exponent * (1/2) Z[1/p]
HahnSeries weil_inverse(const LTContext& ctx, const PSeries& u, int n_sigma, const HahnSeries& x);

// coordinates of the point acted on: X_i -> sum_j [a_{j,i}] X_j for g,
// X_i -> sum e_j X_i^{q^j} with d^{-1} = sum e_j phi^j for d, and
// X_i -> sum_l u_l sigma^{-1}(X_i)^{q^l} for (a_sigma^{-1}, sigma), the
// Galois part acting through coefficients alone
Point analytic_action(const LTContext& ctx, const Actor& actor, const Point& X);

struct ActionSample {
  Actor actor;
  std::vector<Elt> ybar;
  Elt zbar = 0;
  Elt predicted_shift = 0;  // r_L in F_q codes (matrix and division)
  Cap z_margin;             // v(z' - predicted z')
  std::vector<Cap> y_margins;
  bool affinoid = false;
  bool pass = false;
  bool inconclusive = false;
  nlohmann::json to_json() const;
};
struct ActionReport {
  ActorKind kind = ActorKind::kMatrix;
  std::vector<ActionSample> samples;
  int passed = 0, failed = 0, inconclusive = 0;
  nlohmann::json to_json() const;
};
// Acts by `samples` random actors of the given class on solver points and
// checks the predicted maps on (z, y) modulo > 0.
ActionReport action_congruence_check(const LTContext& ctx, ActorKind kind, int samples, uint64_t seed,
                                     int points = 3);

}  // namespace epi

#endif  // EPI_GROUP_ACTION_HPP_
