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

// Parameters (zeta, chi, c, omega) of simple epipelagic representations, the
// characters Lambda, theta and xi attached to them, the Langlands constant
// of a totally tame extension, and the index and dimension bookkeeping.
//
// Character values are symbolic: c and omega(varpi) are formal, roots of
// unity are exponents, and the normalized Gauss sum m is kept as a symbol
// with m^2 = (-1/q).

#ifndef EPI_CORRESPONDENCE_HPP_
#define EPI_CORRESPONDENCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epi/cyclotomic.hpp"
#include "epi/finite_field.hpp"
#include "epi/group_action.hpp"
#include "epi/quadratic_gauss.hpp"
#include "json.hpp"

namespace epi {

// gcd(n, q - 1)
uint64_t n_q(uint64_t q, int n);

// One zeta in mu_{q-1} per class of totally ramified degree-n extensions
// K((zeta varpi)^{1/n}); classes are the orbits of (k^x)^n. Codes of
// F_q = build_field(p, f). Throws if p | n.
std::vector<Elt> enumerate_tame_extensions(uint32_t p, uint32_t f, int n);

// delta_{E/K}(x) for E = K((zeta varpi)^{1/e}). For a unit x (given by its
// residue) the value is (x/k)^{e-1}. For x = varpi it is (q/e) when e is
// odd; for even e it is the quadratic character of the subextension E' of
// index 2 restricted to K, which gives (zeta/k)(-1/q)^{e/2}.
int delta_EK_unit(const FiniteField& k, int e, Elt xbar);
int delta_EK_varpi(const FiniteField& k, int e, Elt zeta);

// lambda_{L/K}(psi_b) for totally tame L/K of degree n, q odd, psi_b(x) =
// psi(bx). Odd n gives the Jacobi symbol (q/n); even n halves through the
// quadratic subextension, whose character has residue part psi(2bx).
SignedQuarticUnit lambda_tame(uint64_t q, int n, int64_t b = 1);

// Symbolic character value
//   (+-1) eps^a zeta_p^j m^e c^s w^t,
// eps a fixed primitive (q-1)-th root of unity with chi(g^i) = eps^{chi i}
// for the generator g of k^x, w = omega(varpi). For odd q the sign is
// folded into eps^{(q-1)/2}, which makes equality componentwise.
class CharacterValue {
 public:
  CharacterValue(uint64_t q, uint32_t p);
  static CharacterValue from_quartic(const SignedQuarticUnit& u, uint32_t p);

  uint64_t q() const { return q_; }
  uint32_t p() const { return p_; }
  int sign() const { return sign_; }
  int64_t eps() const { return eps_; }
  int64_t zeta() const { return zeta_; }
  int m() const { return m_; }
  int64_t c() const { return c_; }
  int64_t w() const { return w_; }

  CharacterValue& mul_sign(int s);
  CharacterValue& mul_eps(int64_t a);
  CharacterValue& mul_zeta(int64_t j);
  CharacterValue& mul_m(int64_t e);
  CharacterValue& mul_c(int64_t s);
  CharacterValue& mul_w(int64_t t);

  friend CharacterValue operator*(const CharacterValue& a, const CharacterValue& b);
  friend bool operator==(const CharacterValue& a, const CharacterValue& b);
  friend bool operator!=(const CharacterValue& a, const CharacterValue& b) { return !(a == b); }
  CharacterValue inverse() const;
  bool is_one() const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void normalize();
  uint64_t q_;
  uint32_t p_;
  int sign_ = 1;
  int64_t eps_ = 0, zeta_ = 0;
  int m_ = 0;
  int64_t c_ = 0, w_ = 0;
};

// Tame twist omega: omega(varpi) = w (formal) and omega(x) = eps^{units log x}
// on mu_{q-1}, trivial on U_K^1. `trivial` means omega = 1.
struct Omega {
  bool trivial = true;
  int64_t units = 0;
};

struct EpipelagicParam {
  uint32_t p = 0, f = 0;
  int n = 0;
  Elt zeta = 1;    // F_q code, nonzero
  int64_t chi = 0; // chi(g^i) = eps^{chi i}
  Omega omega;
  Elt psi = 1;     // psi(x) = zeta_p^{Tr(psi x)} on k

  uint64_t q() const;
  void validate() const;
  nlohmann::json to_json() const;
  // {"p","f","n","zeta_index","chi","omega":{"units"}|null,"psi"}
  static EpipelagicParam from_json(const nlohmann::json& j);
};

// x = phi_zeta^k (a_0 + a_1 phi_zeta + ...) in L_zeta^x with a_i in F_q
struct LElement {
  int k = 0;
  PSeries a;  // a[0] != 0
};

// Lambda on L_zeta^x U_I^1 inside GL_n(O_K) (entries of positive valuation
// in the phi-part are fine), theta on L_zeta^x U_D^1 inside O_D, and
// xi = Lambda restricted to L_zeta^x through phi_zeta -> phi_{M,zeta}. All
// include the omega twist through det, Nrd and Nr. Inputs outside the domain
// throw std::domain_error.
class EpipelagicCharacters {
 public:
  explicit EpipelagicCharacters(const EpipelagicParam& param);

  const EpipelagicParam& param() const { return param_; }
  const FieldPtr& kq() const { return kq_; }
  const FieldPtr& kn() const { return kn_; }
  // beta in F_{q^n} with N(beta) = zeta; phi_{D,zeta} = beta phi
  Elt beta() const { return beta_; }

  TruncatedMatrix phi_M(int depth) const;
  DivisionAlgElement phi_D(int depth) const;
  TruncatedMatrix embed_M(const LElement& x, int depth) const;
  DivisionAlgElement embed_D(const LElement& x, int depth) const;

  CharacterValue Lambda(const TruncatedMatrix& g) const;
  CharacterValue theta(const DivisionAlgElement& d) const;
  CharacterValue xi(const LElement& x) const;

  // the omega factor on an element of K^x given by valuation and leading digit
  CharacterValue omega_of(int v, Elt lead) const;
  CharacterValue chi_of(Elt z) const;
  CharacterValue psi_of(Elt x) const;

 private:
  EpipelagicParam param_;
  FieldPtr kq_, kn_;
  Elt beta_;
  AdditiveCharacter psi_;
};

// mu_zeta on L_zeta^x: trivial on U^1, delta_{L/K} on K^x and lambda at
// phi_zeta. q odd.
CharacterValue mu_zeta(const EpipelagicParam& param, const LElement& x);

// Values of mu_zeta^{-1} xi on generators of L_zeta^x.
struct LLParameter {
  int dim = 0;
  std::optional<CharacterValue> at_phi;       // needs q odd
  std::vector<std::pair<Elt, CharacterValue>> at_mu;  // zeta' in mu_{q-1}
  // on U_L^1 the value is psi(n b_1) for 1 + b_1 phi_zeta + ...
  nlohmann::json to_json() const;
};
LLParameter ll_parameter(const EpipelagicParam& param);

struct PropKyReport {
  uint64_t q = 0;
  int n = 0;
  bool a = false, b = false, c = false;
  int characters = 0;        // nontrivial psi checked in (a) and (b)
  std::string lambda;        // lambda_tame
  std::string rhs;           // (det nu_{n-1} / q) m^{n-1}
  bool pass() const { return a && b && c; }
  nlohmann::json to_json() const;
};
// (a) sum over nu_{n-1} against psi equals (det nu/q) g(psi)^{n-1} in Z[zeta_p],
// from the exact histogram; (b) g(psi)^2 = (-1/q) q; (c) lambda_tame equals
// (det nu_{n-1}/q) m^{n-1}. Every nontrivial psi is checked in (a) and (b).
PropKyReport verify_prop_ky(uint32_t p, uint32_t f, int n);

// (-1)^{n-1} (u/k)^{n-1} [g(nu_{n-1}, psi) q^{-(n-1)/2}]^{-1} against
// (-1)^{n-1} mu_zeta(a_sigma)^{-1} for a_sigma = u phi_zeta, q odd
struct WeilScalarReport {
  CharacterValue gauss_side, mu_side;
  bool pass() const { return gauss_side == mu_side; }
};
WeilScalarReport weil_scalar_check(uint32_t p, uint32_t f, int n, Elt ubar);

struct IndexAudit {
  uint64_t q = 0;
  int n = 0;
  uint64_t n_q = 0;
  uint64_t hl_index = 0;  // n (q^n - 1) / (n_q (q - 1))
  uint64_t dim_rho = 0;   // (q^n - 1)/(q - 1)
  bool dims_consistent = false;  // n dim_rho = hl_index n_q
  std::optional<uint64_t> oracle_index;  // brute-force coset count
  std::optional<bool> oracle_pass;       // oracle_index == hl_index
  nlohmann::json to_json() const;
};
// The oracle counts cosets of the image of O_L^x U_D^{1,Nrd=1} in
// (O_D / phi^2)^x, with the Nrd = 1 condition tested on all lifts to
// depth 2n; it runs when q^{n(2n-1)} <= oracle_cap.
IndexAudit index_audit(uint32_t p, uint32_t f, int n, uint64_t oracle_cap = 1 << 20);

}  // namespace epi

#endif  // EPI_CORRESPONDENCE_HPP_
