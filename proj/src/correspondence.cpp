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

#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace epi {
namespace {

int64_t mod(int64_t a, int64_t m) { return m <= 1 ? 0 : ((a % m) + m) % m; }

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require_tame(uint32_t p, int n) {
  if (n < 1) throw std::invalid_argument("degree must be positive");
  if (n % int(p) == 0) throw std::invalid_argument("degree divisible by p: not tame");
}

}  // namespace

uint64_t n_q(uint64_t q, int n) { return std::gcd(uint64_t(n), q - 1); }

std::vector<Elt> enumerate_tame_extensions(uint32_t p, uint32_t f, int n) {
  require_tame(p, n);
  FieldPtr k = build_field(p, f);
  const uint64_t q = k->q();
  // orbits of (k^x)^n on k^x, each named by its element of least log
  std::vector<bool> seen(q, false);
  std::vector<Elt> nth;
  for (Elt x = 1; x < q; ++x) {
    Elt y = k->pow(x, n);
    if (std::find(nth.begin(), nth.end(), y) == nth.end()) nth.push_back(y);
  }
  std::vector<Elt> reps;
  for (uint64_t i = 0; i + 1 < q; ++i) {
    Elt z = k->exp(i);
    if (seen[z]) continue;
    reps.push_back(z);
    for (Elt s : nth) seen[k->mul(z, s)] = true;
  }
  if (reps.size() != n_q(q, n)) throw std::logic_error("tame extension count differs from gcd(n, q-1)");
  return reps;
}

int delta_EK_unit(const FiniteField& k, int e, Elt xbar) {
  require_tame(k.p(), e);
  if (xbar == 0) throw std::invalid_argument("delta_EK_unit: zero residue");
  if (k.p() == 2 || e % 2 == 1) return 1;
  return k.residue_symbol(xbar);
}

int delta_EK_varpi(const FiniteField& k, int e, Elt zeta) {
  require_tame(k.p(), e);
  if (e % 2 == 1) return jacobi(int64_t(k.q()), e);
  // E = E'(sqrt(pi')) with pi' = phi_E^2 and varpi = zeta^{-1} pi'^{e/2}; the
  // quadratic character of E'^x with kernel Nr(E^x) is (u/k) on units and
  // (-1/q) on pi'
  int s = e / 2 % 2 ? minus_one_symbol(k.q()) : 1;
  return k.residue_symbol(zeta) * s;
}

SignedQuarticUnit lambda_tame(uint64_t q, int n, int64_t b) {
  if (q % 2 == 0) throw std::invalid_argument("lambda_tame: q must be odd");
  if (n < 1 || std::gcd(uint64_t(n), q) != 1) throw std::invalid_argument("lambda_tame: n must be prime to p");
  if (n % 2 == 1) return SignedQuarticUnit(jacobi(int64_t(q), n), 0, q);
  // lambda_{L/K}(psi_b) = lambda_{L/K'}(psi_{K',b}) m(psi_b)^{n/2}, and the
  // residue character of psi_{K',b} is psi_{2b}
  SignedQuarticUnit mb(jacobi(b, int64_t(q)), 1, q);
  return lambda_tame(q, n / 2, 2 * b) * mb.pow(n / 2);
}

// ---- CharacterValue ----

CharacterValue::CharacterValue(uint64_t q, uint32_t p) : q_(q), p_(p) {}

CharacterValue CharacterValue::from_quartic(const SignedQuarticUnit& u, uint32_t p) {
  CharacterValue v(u.q(), p);
  v.sign_ = u.sign();
  v.m_ = u.exponent();
  v.normalize();
  return v;
}

void CharacterValue::normalize() {
  if (m_ && q_ % 2 == 0) throw std::logic_error("CharacterValue: m needs odd q");
  while (m_ >= 2) {
    m_ -= 2;
    sign_ *= minus_one_symbol(q_);
  }
  if (q_ % 2 == 1 && sign_ < 0) {
    sign_ = 1;
    eps_ += int64_t(q_ - 1) / 2;
  }
  eps_ = mod(eps_, int64_t(q_) - 1);
  zeta_ = mod(zeta_, p_);
}

CharacterValue& CharacterValue::mul_sign(int s) {
  sign_ *= s;
  normalize();
  return *this;
}
CharacterValue& CharacterValue::mul_eps(int64_t a) {
  eps_ += mod(a, int64_t(q_) - 1);
  normalize();
  return *this;
}
CharacterValue& CharacterValue::mul_zeta(int64_t j) {
  zeta_ += mod(j, p_);
  normalize();
  return *this;
}
CharacterValue& CharacterValue::mul_m(int64_t e) {
  // m^{-1} = (-1/q) m
  int64_t ee = mod(e, 4);
  m_ += int(ee);
  normalize();
  return *this;
}
CharacterValue& CharacterValue::mul_c(int64_t s) {
  c_ += s;
  return *this;
}
CharacterValue& CharacterValue::mul_w(int64_t t) {
  w_ += t;
  return *this;
}

CharacterValue operator*(const CharacterValue& a, const CharacterValue& b) {
  if (a.q_ != b.q_ || a.p_ != b.p_) throw std::invalid_argument("CharacterValue: mismatched fields");
  CharacterValue r = a;
  r.sign_ *= b.sign_;
  r.eps_ += b.eps_;
  r.zeta_ += b.zeta_;
  r.m_ += b.m_;
  r.c_ += b.c_;
  r.w_ += b.w_;
  r.normalize();
  return r;
}

bool operator==(const CharacterValue& a, const CharacterValue& b) {
  return a.q_ == b.q_ && a.p_ == b.p_ && a.sign_ == b.sign_ && a.eps_ == b.eps_ && a.zeta_ == b.zeta_ &&
         a.m_ == b.m_ && a.c_ == b.c_ && a.w_ == b.w_;
}

CharacterValue CharacterValue::inverse() const {
  CharacterValue r(q_, p_);
  r.sign_ = sign_;
  r.eps_ = -eps_;
  r.zeta_ = -zeta_;
  r.m_ = m_ ? 3 : 0;
  r.c_ = -c_;
  r.w_ = -w_;
  r.normalize();
  return r;
}

bool CharacterValue::is_one() const { return *this == CharacterValue(q_, p_); }

std::string CharacterValue::str() const {
  std::string s = sign_ < 0 ? "-" : "";
  auto part = [&](const char* name, int64_t e) {
    if (!e) return;
    if (!s.empty() && s != "-") s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  };
  part("eps", eps_);
  part("zeta_p", zeta_);
  part("m", m_);
  part("c", c_);
  part("w", w_);
  if (s.empty() || s == "-") s += "1";
  return s;
}

nlohmann::json CharacterValue::to_json() const {
  return {{"q", q_}, {"sign", sign_}, {"eps", eps_}, {"zeta_p", zeta_}, {"m", m_},
          {"c", c_}, {"w", w_},       {"str", str()}};
}

// ---- parameters ----

uint64_t EpipelagicParam::q() const { return ipow(p, int(f)); }

void EpipelagicParam::validate() const {
  if (!is_prime(p) || f < 1) throw std::invalid_argument("param: bad field");
  if (n < 2) throw std::invalid_argument("param: n must be at least 2");
  require_tame(p, n);
  FieldPtr k = build_field(p, f);
  if (zeta == 0 || zeta >= k->q()) throw std::invalid_argument("param: zeta must be a nonzero element of k");
  if (psi == 0 || psi >= k->q()) throw std::invalid_argument("param: psi must be nontrivial");
}

nlohmann::json EpipelagicParam::to_json() const {
  FieldPtr k = build_field(p, f);
  nlohmann::json om = omega.trivial ? nlohmann::json(nullptr) : nlohmann::json{{"units", omega.units}};
  return {{"p", p},   {"f", f},     {"n", n},   {"zeta_index", k->log(zeta)},
          {"chi", chi}, {"omega", om}, {"psi", psi}};
}

EpipelagicParam EpipelagicParam::from_json(const nlohmann::json& j) {
  EpipelagicParam r;
  r.p = j.at("p").get<uint32_t>();
  r.f = j.value("f", 1u);
  r.n = j.at("n").get<int>();
  FieldPtr k = build_field(r.p, r.f);
  r.zeta = k->exp(j.value("zeta_index", uint64_t(0)));
  r.chi = j.value("chi", int64_t(0));
  if (j.contains("omega") && !j["omega"].is_null()) {
    r.omega.trivial = false;
    r.omega.units = j["omega"].value("units", int64_t(0));
  }
  r.psi = j.value("psi", Elt(1));
  r.validate();
  return r;
}

// ---- characters ----

EpipelagicCharacters::EpipelagicCharacters(const EpipelagicParam& param)
    : param_(param),
      kq_((param.validate(), build_field(param.p, param.f))),
      kn_(build_field(param.p, param.f * uint32_t(param.n))),
      beta_(0),
      psi_(kq_, param.psi) {
  const uint32_t f = param.f, fn = f * uint32_t(param.n);
  Elt target = kn_->embed(*kq_, param.zeta);
  for (Elt b = 1; b < kn_->q(); ++b)
    if (kn_->relative_norm(b, fn, f) == target) {
      beta_ = b;
      break;
    }
  if (!beta_) throw std::logic_error("norm map is not onto");
}

TruncatedMatrix EpipelagicCharacters::phi_M(int depth) const {
  const int n = param_.n;
  TruncatedMatrix m(kq_, n, depth);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1)[0] = 1;
  m.at(n - 1, 0)[1] = param_.zeta;
  return m;
}

DivisionAlgElement EpipelagicCharacters::phi_D(int depth) const {
  DivisionAlgElement d(kn_, param_.f, param_.n, depth);
  d[1] = beta_;
  return d;
}

TruncatedMatrix EpipelagicCharacters::embed_M(const LElement& x, int depth) const {
  if (x.k < 0) throw std::domain_error("embed_M: negative valuation is not integral");
  const int n = param_.n;
  TruncatedMatrix phi = phi_M(depth), pw = TruncatedMatrix::identity(kq_, n, depth);
  TruncatedMatrix acc(kq_, n, depth);
  for (int i = 0; i < x.a.prec() && i < depth * n; ++i) {
    if (x.a[i]) {
      TruncatedMatrix s(kq_, n, depth);
      for (int r = 0; r < n; ++r) s.at(r, r)[0] = x.a[i];
      acc = acc + s * pw;
    }
    pw = pw * phi;
  }
  for (int t = 0; t < x.k; ++t) acc = acc * phi;
  return acc;
}

DivisionAlgElement EpipelagicCharacters::embed_D(const LElement& x, int depth) const {
  if (x.k < 0) throw std::domain_error("embed_D: negative valuation is not integral");
  DivisionAlgElement phi = phi_D(depth), pw = DivisionAlgElement::one(kn_, param_.f, param_.n, depth);
  DivisionAlgElement acc(kn_, param_.f, param_.n, depth);
  for (int i = 0; i < x.a.prec() && i < depth; ++i) {
    if (x.a[i]) {
      DivisionAlgElement s(kn_, param_.f, param_.n, depth);
      s[0] = kn_->embed(*kq_, x.a[i]);
      acc = acc + s * pw;
    }
    pw = pw * phi;
  }
  for (int t = 0; t < x.k; ++t) acc = acc * phi;
  return acc;
}

CharacterValue EpipelagicCharacters::chi_of(Elt z) const {
  CharacterValue v(kq_->q(), param_.p);
  return v.mul_eps(param_.chi * int64_t(kq_->log(z)));
}

CharacterValue EpipelagicCharacters::psi_of(Elt x) const {
  CharacterValue v(kq_->q(), param_.p);
  return v.mul_zeta(psi_.exponent(*kq_, x));
}

CharacterValue EpipelagicCharacters::omega_of(int v, Elt lead) const {
  CharacterValue r(kq_->q(), param_.p);
  if (param_.omega.trivial) return r;
  r.mul_w(v);
  return r.mul_eps(param_.omega.units * int64_t(kq_->log(lead)));
}

namespace {

// phi_{M,zeta}^{-1} h: row 0 is (zeta varpi)^{-1} times row n-1, row i + 1 is row i
TruncatedMatrix phi_M_inverse_times(const TruncatedMatrix& h, Elt zeta) {
  const FiniteField& k = *h.field();
  const int n = h.n(), d = h.depth() - 1;
  TruncatedMatrix r(h.field(), n, d);
  Elt zi = k.inv(zeta);
  for (int j = 0; j < n; ++j) {
    if (h.at(n - 1, j)[0]) throw std::domain_error("Lambda: element is not in L^x U^1");
    for (int l = 0; l < d; ++l) r.at(0, j)[l] = k.mul(zi, h.at(n - 1, j)[l + 1]);
    for (int i = 0; i + 1 < n; ++i) r.at(i + 1, j) = h.at(i, j).truncate(d);
  }
  return r;
}

}  // namespace

CharacterValue EpipelagicCharacters::Lambda(const TruncatedMatrix& g) const {
  const int n = param_.n;
  const FiniteField& k = *kq_;
  if (g.n() != n || g.field().get() != kq_.get()) throw std::invalid_argument("Lambda: wrong matrix shape");
  PSeries D = g.det();
  auto v = D.valuation();
  if (!v) throw PrecisionError("Lambda: determinant vanishes to depth");
  TruncatedMatrix h = g;
  for (int t = 0; t < *v; ++t) h = phi_M_inverse_times(h, param_.zeta);
  if (h.depth() < 2) throw PrecisionError("Lambda: depth too small");
  Elt z = h.at(0, 0)[0];
  if (!z) throw std::domain_error("Lambda: element is not in L^x U^1");
  for (int i = 0; i < n; ++i) {
    if (h.at(i, i)[0] != z) throw std::domain_error("Lambda: element is not in L^x U^1");
    for (int j = 0; j < i; ++j)
      if (h.at(i, j)[0]) throw std::domain_error("Lambda: element is not in L^x U^1");
  }
  // u = z^{-1} h in U^1; tr(phi_{M,zeta}^{-1}(u - 1)) mod varpi
  Elt zi = k.inv(z);
  Elt r = k.mul(k.inv(param_.zeta), k.mul(zi, h.at(n - 1, 0)[1]));
  for (int i = 0; i + 1 < n; ++i) r = k.add(r, k.mul(zi, h.at(i, i + 1)[0]));
  CharacterValue val(k.q(), param_.p);
  val.mul_c(*v);
  return val * chi_of(z) * psi_of(r) * omega_of(*v, D[*v]);
}

CharacterValue EpipelagicCharacters::theta(const DivisionAlgElement& d) const {
  const int n = param_.n;
  const FiniteField& K = *kn_;
  const int64_t f = param_.f;
  if (d.field().get() != kn_.get() || d.n() != n) throw std::invalid_argument("theta: wrong algebra");
  int v = 0;
  while (v < d.depth() && d[v] == 0) ++v;
  if (v == d.depth()) throw PrecisionError("theta: element vanishes to depth");
  // phi_{D,zeta}^v = B phi^v with B = beta beta^q ... beta^{q^{v-1}}
  Elt B = 1;
  for (int i = 0; i < v; ++i) B = K.mul(B, K.frob(beta_, f * i));
  const int depth = d.depth() - v;
  if (depth < n + 1) throw PrecisionError("theta: depth too small");
  DivisionAlgElement h(kn_, param_.f, n, depth);
  for (int j = 0; j < depth; ++j) h[j] = K.frob(K.div(d[j + v], B), -f * v);
  if (!K.in_subfield(h[0], param_.f)) throw std::domain_error("theta: element is not in L^x U_D^1");
  Elt z = h[0];
  // x = beta^{-1}(u - 1) with u = z^{-1} h, then phi^{-1} x
  DivisionAlgElement x(kn_, param_.f, n, depth);
  Elt s = K.inv(K.mul(z, beta_));
  for (int j = 1; j < depth; ++j) x[j] = K.mul(s, h[j]);
  PSeries t = trd(x.phi_inverse_times());
  PSeries N = nrd(d);
  auto nv = N.valuation();
  if (!nv || *nv != v) throw PrecisionError("theta: reduced norm not resolved at this depth");
  CharacterValue val(kq_->q(), param_.p);
  val.mul_c(v).mul_sign((n - 1) * v % 2 ? -1 : 1);
  return val * chi_of(K.restrict_to(*kq_, z)) * psi_of(t[0]) * omega_of(v, N[v]);
}

CharacterValue EpipelagicCharacters::xi(const LElement& x) const {
  if (x.a.prec() < 1 || x.a[0] == 0) throw std::domain_error("xi: leading digit must be nonzero");
  return Lambda(embed_M(x, x.k + 3));
}

CharacterValue mu_zeta(const EpipelagicParam& param, const LElement& x) {
  FieldPtr k = build_field(param.p, param.f);
  if (x.a.prec() < 1 || x.a[0] == 0) throw std::domain_error("mu_zeta: leading digit must be nonzero");
  CharacterValue r(k->q(), param.p);
  if (x.k == 0) return r.mul_sign(delta_EK_unit(*k, param.n, x.a[0]));
  CharacterValue lam = CharacterValue::from_quartic(lambda_tame(k->q(), param.n), param.p);
  for (int i = 0; i < std::abs(x.k); ++i) r = r * (x.k > 0 ? lam : lam.inverse());
  return r.mul_sign(delta_EK_unit(*k, param.n, x.a[0]));
}

nlohmann::json LLParameter::to_json() const {
  nlohmann::json mu = nlohmann::json::array();
  for (const auto& [z, v] : at_mu) mu.push_back({{"zeta", z}, {"value", v.to_json()}});
  return {{"dim", dim},
          {"at_phi", at_phi ? at_phi->to_json() : nlohmann::json(nullptr)},
          {"at_mu", mu},
          {"at_U1", "psi(n b_1)"}};
}

LLParameter ll_parameter(const EpipelagicParam& param) {
  EpipelagicCharacters ch(param);
  const FiniteField& k = *ch.kq();
  LLParameter r;
  r.dim = param.n;
  auto unit = [&](Elt z) { return LElement{0, PSeries::constant(ch.kq(), 1, z)}; };
  if (k.q() % 2) {
    LElement phi{1, PSeries::constant(ch.kq(), 1, 1)};
    r.at_phi = mu_zeta(param, phi).inverse() * ch.xi(phi);
  }
  for (Elt z = 1; z < k.q(); ++z) {
    CharacterValue mu(k.q(), param.p);
    mu.mul_sign(delta_EK_unit(k, param.n, z));
    r.at_mu.emplace_back(z, mu.inverse() * ch.xi(unit(z)));
  }
  return r;
}

// ---- Langlands constant ----

nlohmann::json PropKyReport::to_json() const {
  return {{"q", q}, {"n", n}, {"a", a}, {"b", b}, {"c", c}, {"characters", characters},
          {"lambda", lambda}, {"rhs", rhs}, {"pass", pass()}};
}

PropKyReport verify_prop_ky(uint32_t p, uint32_t f, int n) {
  if (p == 2) throw std::invalid_argument("verify_prop_ky: p must be odd");
  require_tame(p, n);
  if (n < 2) throw std::invalid_argument("verify_prop_ky: n must be at least 2");
  FieldPtr k = build_field(p, f);
  const uint64_t q = k->q();
  const int r = n - 1;
  PropKyReport rep;
  rep.q = q;
  rep.n = n;
  const int det = det_nu_class(r, *k);
  std::vector<Count> hist = nu_histogram_transfer(r, *k);
  const CyclotomicInt gq = CyclotomicInt::integer(p, BigInt(minus_one_symbol(q)) * BigInt(q));
  rep.a = rep.b = true;
  for (Elt b = 1; b < q; ++b) {
    AdditiveCharacter psi(k, b);
    CyclotomicInt g(p);
    try {
      g = gauss_sum_char(psi, *k);
    } catch (const std::logic_error&) {
      rep.b = false;
      continue;
    }
    if (g * g != gq) rep.b = false;
    if (sum_against(hist, psi, *k) != BigInt(det) * g.pow(uint64_t(r))) rep.a = false;
    ++rep.characters;
  }
  SignedQuarticUnit lam = lambda_tame(q, n);
  SignedQuarticUnit rhs(det, r, q);
  rep.c = lam == rhs;
  rep.lambda = lam.str();
  rep.rhs = rhs.str();
  return rep;
}

WeilScalarReport weil_scalar_check(uint32_t p, uint32_t f, int n, Elt ubar) {
  if (p == 2) throw std::invalid_argument("weil_scalar_check: p must be odd");
  FieldPtr k = build_field(p, f);
  const uint64_t q = k->q();
  const int sgn = (n - 1) % 2 ? -1 : 1;
  // g(nu_{n-1}, psi) q^{-(n-1)/2} = (det nu/q) m^{n-1}
  SignedQuarticUnit G(det_nu_class(n - 1, *k), n - 1, q);
  CharacterValue gauss = CharacterValue::from_quartic(G.inverse(), p);
  gauss.mul_sign(sgn).mul_sign(delta_EK_unit(*k, n, ubar));
  EpipelagicParam param;
  param.p = p;
  param.f = f;
  param.n = n;
  CharacterValue mu = mu_zeta(param, LElement{1, PSeries::constant(k, 1, ubar)}).inverse();
  mu.mul_sign(sgn);
  return {gauss, mu};
}

// ---- index audit ----

nlohmann::json IndexAudit::to_json() const {
  nlohmann::json j{{"q", q}, {"n", n}, {"n_q", n_q}, {"hl_index", hl_index},
                   {"dim_rho", dim_rho}, {"dims_consistent", dims_consistent}};
  j["oracle_index"] = oracle_index ? nlohmann::json(*oracle_index) : nlohmann::json(nullptr);
  j["oracle_pass"] = oracle_pass ? nlohmann::json(*oracle_pass) : nlohmann::json(nullptr);
  return j;
}

IndexAudit index_audit(uint32_t p, uint32_t f, int n, uint64_t oracle_cap) {
  require_tame(p, n);
  if (n < 2) throw std::invalid_argument("index_audit: n must be at least 2");
  FieldPtr kq = build_field(p, f);
  IndexAudit a;
  a.q = kq->q();
  a.n = n;
  a.n_q = n_q(a.q, n);
  const uint64_t qn = ipow(a.q, n);
  a.dim_rho = (qn - 1) / (a.q - 1);
  const uint64_t num = uint64_t(n) * (qn - 1), den = a.n_q * (a.q - 1);
  if (num % den) throw std::logic_error("index formula is not integral");
  a.hl_index = num / den;
  a.dims_consistent = uint64_t(n) * a.dim_rho == a.hl_index * a.n_q;

  // feasibility of the depth-2n enumeration
  uint64_t work = 1;
  for (int i = 0; i < n * (2 * n - 1); ++i) {
    work *= a.q;
    if (work > oracle_cap) return a;
  }
  FieldPtr kn = build_field(p, f * uint32_t(n));
  const FiniteField& K = *kn;
  const uint64_t Q = K.q();
  // (O_D / phi^2)^x = {a_0 + a_1 phi}, a_0 != 0, encoded as log(a_0) Q + a_1
  auto enc = [&](Elt a0, Elt a1) { return uint64_t(K.log(a0)) * Q + a1; };
  auto mul = [&](uint64_t x, uint64_t y) {
    Elt a0 = K.exp(x / Q), a1 = Elt(x % Q), b0 = K.exp(y / Q), b1 = Elt(y % Q);
    return enc(K.mul(a0, b0), K.add(K.mul(a0, b1), K.mul(a1, K.frob(b0, f))));
  };
  std::unordered_set<uint64_t> gens;
  // O_L^x for L = K(varpi^{1/n}) with phi_L -> phi: F_q^x and 1 + c phi, c in F_q
  for (Elt z = 1; z < a.q; ++z) gens.insert(enc(K.embed(*kq, z), 0));
  for (Elt c = 0; c < a.q; ++c) gens.insert(enc(1, K.embed(*kq, c)));
  // U_D^{1,Nrd=1}: Nrd = 1 mod varpi^2 at depth 2n lifts to Nrd = 1 by a
  // central factor in U_K^2, which is invisible mod phi^2
  const int depth = 2 * n;
  const PSeries one = PSeries::constant(kq, 2, 1);
  std::vector<Elt> digits(size_t(depth - 1), 0);
  for (;;) {
    DivisionAlgElement d = DivisionAlgElement::one(kn, f, n, depth);
    for (int i = 1; i < depth; ++i) d[i] = digits[size_t(i - 1)];
    if (nrd(d) == one) gens.insert(enc(1, d[1]));
    size_t i = 0;
    while (i < digits.size() && ++digits[i] == Q) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  std::unordered_set<uint64_t> H{enc(1, 0)};
  std::vector<uint64_t> frontier{enc(1, 0)};
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    for (uint64_t x : frontier)
      for (uint64_t g : gens) {
        uint64_t y = mul(x, g);
        if (H.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  const uint64_t G = (Q - 1) * Q;
  if (G % H.size()) throw std::logic_error("coset count: subgroup order does not divide");
  a.oracle_index = G / H.size();
  a.oracle_pass = *a.oracle_index == a.hl_index;
  return a;
}

}  // namespace epi
