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

#include <algorithm>
#include <stdexcept>

namespace epi {
namespace {

nlohmann::json cap_json(const Cap& c) { return c.is_infinite() ? nlohmann::json("inf") : nlohmann::json(c.value().str()); }

void same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a.get() != b.get()) throw FieldError("operands over different fields");
}

Rational rpow(uint64_t q, int64_t e) {
  Rational r(1);
  for (int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= Rational(int64_t(q));
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace

// ---- PSeries ----

PSeries PSeries::constant(FieldPtr k, int prec, Elt c) {
  PSeries s(std::move(k), prec);
  if (prec > 0) s.c_[0] = c;
  return s;
}

PSeries PSeries::from_digits(FieldPtr k, std::vector<Elt> digits) {
  PSeries s(std::move(k), 0);
  s.c_ = std::move(digits);
  return s;
}

std::optional<int> PSeries::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) return int(i);
  return std::nullopt;
}

PSeries PSeries::truncate(int prec) const {
  PSeries s = *this;
  if (prec < this->prec()) s.c_.resize(size_t(prec));
  return s;
}

PSeries PSeries::operator-() const {
  PSeries s = *this;
  for (auto& c : s.c_) c = k_->neg(c);
  return s;
}

PSeries operator+(const PSeries& a, const PSeries& b) {
  same_field(a.k_, b.k_);
  PSeries s(a.k_, std::min(a.prec(), b.prec()));
  for (int i = 0; i < s.prec(); ++i) s[i] = a.k_->add(a[i], b[i]);
  return s;
}

PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }

PSeries operator*(const PSeries& a, const PSeries& b) {
  same_field(a.k_, b.k_);
  const FiniteField& k = *a.k_;
  PSeries s(a.k_, std::min(a.prec(), b.prec()));
  for (int i = 0; i < s.prec(); ++i) {
    if (!a[i]) continue;
    for (int j = 0; i + j < s.prec(); ++j)
      if (b[j]) s[i + j] = k.add(s[i + j], k.mul(a[i], b[j]));
  }
  return s;
}

PSeries PSeries::frob(int64_t j) const {
  PSeries s = *this;
  for (auto& c : s.c_) c = k_->frob(c, j);
  return s;
}

PSeries ps_inverse(const PSeries& a) {
  const FiniteField& k = *a.field();
  if (a.prec() == 0 || a[0] == 0) throw std::invalid_argument("ps_inverse: not a unit");
  PSeries x(a.field(), a.prec());
  Elt inv0 = k.inv(a[0]);
  // sum_{i <= m} x_i a_{m-i} = [m = 0]
  for (int m = 0; m < a.prec(); ++m) {
    Elt s = m == 0 ? 1 : 0;
    for (int i = 0; i < m; ++i) s = k.sub(s, k.mul(x[i], a[m - i]));
    x[m] = k.mul(s, inv0);
  }
  return x;
}

PSeries ps_one_unit_root(const PSeries& a, int n) {
  const FiniteField& k = *a.field();
  if (a.prec() == 0 || a[0] != 1) throw std::invalid_argument("ps_one_unit_root: not a 1-unit");
  Elt nn = k.from_int(n);
  if (nn == 0) throw std::invalid_argument("ps_one_unit_root: p divides n");
  PSeries x = PSeries::constant(a.field(), a.prec(), 1);
  // the varpi^m digit of x^n is n x_m plus terms in x_1, ..., x_{m-1}
  for (int m = 1; m < a.prec(); ++m) {
    PSeries pw = PSeries::constant(a.field(), m + 1, 1);
    PSeries xm = x.truncate(m + 1);
    for (int e = 0; e < n; ++e) pw = pw * xm;
    x[m] = k.div(k.sub(a[m], pw[m]), nn);
  }
  return x;
}

std::vector<PSeries> charpoly(const std::vector<std::vector<PSeries>>& A) {
  const size_t m = A.size();
  if (m == 0) throw std::invalid_argument("charpoly: empty matrix");
  const FieldPtr& k = A[0][0].field();
  int prec = A[0][0].prec();
  for (const auto& row : A) {
    if (row.size() != m) throw std::invalid_argument("charpoly: matrix is not square");
    for (const auto& e : row) prec = std::min(prec, e.prec());
  }
  const PSeries one = PSeries::constant(k, prec, 1);
  std::vector<PSeries> c{one};
  for (size_t r = 0; r < m; ++r) {
    // A_r = [[M, S], [R, a]] with M the leading r x r block
    std::vector<PSeries> t{one, -A[r][r].truncate(prec)};
    std::vector<PSeries> v(r);  // M^j S
    for (size_t i = 0; i < r; ++i) v[i] = A[i][r].truncate(prec);
    for (size_t j = 0; j + 1 <= r; ++j) {
      PSeries rs(k, prec);
      for (size_t i = 0; i < r; ++i) rs = rs + A[r][i] * v[i];
      t.push_back(-rs);
      if (j + 1 == r) break;
      std::vector<PSeries> nv(r, PSeries(k, prec));
      for (size_t i = 0; i < r; ++i)
        for (size_t l = 0; l < r; ++l) nv[i] = nv[i] + A[i][l] * v[l];
      v = std::move(nv);
    }
    std::vector<PSeries> nc(r + 2, PSeries(k, prec));
    for (size_t i = 0; i < r + 2; ++i)
      for (size_t j = 0; j <= std::min(i, r); ++j) nc[i] = nc[i] + t[i - j] * c[j];
    c = std::move(nc);
  }
  return c;
}

// ---- TruncatedMatrix ----

TruncatedMatrix::TruncatedMatrix(FieldPtr kq, int n, int depth)
    : k_(std::move(kq)), n_(n), depth_(depth), a_(size_t(n * n), PSeries(k_, depth)) {
  if (n < 1 || depth < 1) throw std::invalid_argument("TruncatedMatrix: bad shape");
}

TruncatedMatrix TruncatedMatrix::identity(FieldPtr kq, int n, int depth) {
  TruncatedMatrix m(std::move(kq), n, depth);
  for (int i = 0; i < n; ++i) m.at(i, i)[0] = 1;
  return m;
}

TruncatedMatrix TruncatedMatrix::phi_M(FieldPtr kq, int n, int depth) {
  if (depth < 2) throw std::invalid_argument("phi_M: needs depth >= 2");
  TruncatedMatrix m(std::move(kq), n, depth);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1)[0] = 1;
  m.at(n - 1, 0)[1] = 1;
  return m;
}

TruncatedMatrix operator+(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  TruncatedMatrix s(a.k_, a.n_, std::min(a.depth_, b.depth_));
  for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] = a.a_[i] + b.a_[i];
  return s;
}

TruncatedMatrix operator-(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  TruncatedMatrix s(a.k_, a.n_, std::min(a.depth_, b.depth_));
  for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] = a.a_[i] - b.a_[i];
  return s;
}

TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  const int n = a.n_;
  TruncatedMatrix s(a.k_, n, std::min(a.depth_, b.depth_));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) s.at(i, j) = s.at(i, j) + a.at(i, l) * b.at(l, j);
  return s;
}

PSeries TruncatedMatrix::det() const {
  std::vector<std::vector<PSeries>> A{size_t(n_)};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) A[size_t(i)].push_back(at(i, j));
  PSeries c = charpoly(A).back();
  return n_ % 2 ? -c : c;
}

nlohmann::json TruncatedMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n_; ++j) row.push_back(at(i, j).to_json());
    rows.push_back(row);
  }
  return {{"n", n_}, {"depth", depth_}, {"field", k_->name()}, {"entries", rows}};
}

IwahoriReport iwahori_check(const TruncatedMatrix& g) {
  if (g.depth() < 2) throw PrecisionError("iwahori_check: needs depth >= 2");
  IwahoriReport r;
  const int n = g.n();
  bool upper = true, diag_units = true, unipotent = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elt c = g.at(i, j)[0];
      if (i > j && c) upper = false;
      if (i == j && !c) diag_units = false;
      if (i == j && c != 1) unipotent = false;
    }
  r.in_I = upper;
  r.in_I_units = upper && diag_units;
  r.in_UI1 = upper && unipotent;
  r.det = g.det();
  r.det_is_one = r.det == PSeries::constant(g.field(), r.det.prec(), 1);
  return r;
}

nlohmann::json IwahoriReport::to_json() const {
  return {{"in_I", in_I}, {"in_I_units", in_I_units}, {"in_UI1", in_UI1}, {"det_is_one", det_is_one},
          {"det", det.to_json()}};
}

Elt r_L_matrix(const TruncatedMatrix& g) {
  if (!iwahori_check(g).in_UI1) throw std::invalid_argument("r_L_matrix: g is not in U^1");
  const FiniteField& k = *g.field();
  const int n = g.n();
  // phi_M^{-1} has 1 at (i, i-1) and varpi^{-1} at (1, n); with A = g - 1,
  // tr(phi_M^{-1} A) = sum_i A_{i,i+1} + varpi^{-1} A_{n,1}
  Elt s = g.at(n - 1, 0)[1];
  for (int i = 0; i + 1 < n; ++i) s = k.add(s, g.at(i, i + 1)[0]);
  return s;
}

TruncatedMatrix random_UI1(FieldPtr kq, int n, int depth, std::mt19937_64& rng, bool det_one) {
  std::uniform_int_distribution<Elt> pick(0, Elt(kq->q() - 1));
  TruncatedMatrix g(kq, n, depth);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < depth; ++l) {
        if (l == 0 && i > j) continue;
        g.at(i, j)[l] = (l == 0 && i == j) ? 1 : pick(rng);
      }
  if (det_one) {
    PSeries inv = ps_inverse(g.det());
    for (int i = 0; i < n; ++i) g.at(i, 0) = g.at(i, 0) * inv;
  }
  return g;
}

// ---- DivisionAlgElement ----

DivisionAlgElement::DivisionAlgElement(FieldPtr kn, uint32_t f, int n, int depth)
    : k_(std::move(kn)), f_(f), n_(n), c_(size_t(depth), 0) {
  if (k_->f() != f * uint32_t(n)) throw FieldError("DivisionAlgElement: coefficients must lie in F_{q^n}");
}

DivisionAlgElement DivisionAlgElement::one(FieldPtr kn, uint32_t f, int n, int depth) {
  DivisionAlgElement d(std::move(kn), f, n, depth);
  if (depth > 0) d.c_[0] = 1;
  return d;
}

DivisionAlgElement DivisionAlgElement::phi(FieldPtr kn, uint32_t f, int n, int depth) {
  DivisionAlgElement d(std::move(kn), f, n, depth);
  if (depth > 1) d.c_[1] = 1;
  return d;
}

DivisionAlgElement DivisionAlgElement::from_K(FieldPtr kn, uint32_t f, int n, const PSeries& a, int depth) {
  DivisionAlgElement d(kn, f, n, std::min(depth, a.prec() * n));
  for (int k = 0; k * n < d.depth(); ++k) d.c_[size_t(k * n)] = kn->embed(*a.field(), a[k]);
  return d;
}

DivisionAlgElement operator+(const DivisionAlgElement& a, const DivisionAlgElement& b) {
  same_field(a.k_, b.k_);
  DivisionAlgElement s(a.k_, a.f_, a.n_, std::min(a.depth(), b.depth()));
  for (int i = 0; i < s.depth(); ++i) s[i] = a.k_->add(a[i], b[i]);
  return s;
}

DivisionAlgElement operator-(const DivisionAlgElement& a, const DivisionAlgElement& b) {
  same_field(a.k_, b.k_);
  DivisionAlgElement s(a.k_, a.f_, a.n_, std::min(a.depth(), b.depth()));
  for (int i = 0; i < s.depth(); ++i) s[i] = a.k_->sub(a[i], b[i]);
  return s;
}

DivisionAlgElement operator*(const DivisionAlgElement& a, const DivisionAlgElement& b) {
  same_field(a.k_, b.k_);
  const FiniteField& k = *a.k_;
  DivisionAlgElement s(a.k_, a.f_, a.n_, std::min(a.depth(), b.depth()));
  // (a_i phi^i)(b_j phi^j) = a_i b_j^{q^i} phi^{i+j}
  for (int i = 0; i < s.depth(); ++i) {
    if (!a[i]) continue;
    for (int j = 0; i + j < s.depth(); ++j)
      if (b[j]) s[i + j] = k.add(s[i + j], k.mul(a[i], k.frob(b[j], int64_t(a.f_) * i)));
  }
  return s;
}

DivisionAlgElement DivisionAlgElement::inverse() const {
  if (c_.empty() || c_[0] == 0) throw std::invalid_argument("DivisionAlgElement: not a unit of O_D");
  const FiniteField& k = *k_;
  DivisionAlgElement x(k_, f_, n_, depth());
  // sum_{i <= m} x_i c_{m-i}^{q^i} = [m = 0]
  for (int m = 0; m < depth(); ++m) {
    Elt s = m == 0 ? 1 : 0;
    for (int i = 0; i < m; ++i) s = k.sub(s, k.mul(x[i], k.frob(c_[size_t(m - i)], int64_t(f_) * i)));
    x[m] = k.div(s, k.frob(c_[0], int64_t(f_) * m));
  }
  return x;
}

DivisionAlgElement DivisionAlgElement::phi_inverse_times() const {
  if (c_.empty() || c_[0] != 0) throw std::invalid_argument("phi_inverse_times: element is not in phi O_D");
  DivisionAlgElement x(k_, f_, n_, depth() - 1);
  // phi^{-1} c phi^i = c^{q^{-1}} phi^{i-1}
  for (int i = 1; i < depth(); ++i) x[i - 1] = k_->frob(c_[size_t(i)], -int64_t(f_));
  return x;
}

std::vector<std::vector<PSeries>> DivisionAlgElement::regular_representation() const {
  const int n = n_;
  const int P = depth() / n;
  if (P < 1) throw PrecisionError("regular_representation: depth below n");
  // x = sum_i X_i phi^i with X_i = sum_k c_{i+kn} varpi^k in K_n
  std::vector<PSeries> X(size_t(n), PSeries(k_, P));
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < P; ++kk) X[size_t(i)][kk] = c_[size_t(i + kk * n)];
  std::vector<std::vector<PSeries>> M(size_t(n), std::vector<PSeries>(size_t(n), PSeries(k_, P)));
  // x phi^j = sum_i phi^{i+j} sigma^{-(i+j)}(X_i), phi^{i+j} = phi^{(i+j) mod n} varpi^{floor}
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int s = (i + j) / n, row = (i + j) % n;
      PSeries e = X[size_t(i)].frob(-int64_t(f_) * (i + j));
      PSeries shifted(k_, P);
      for (int kk = 0; kk + s < P; ++kk) shifted[kk + s] = e[kk];
      M[size_t(row)][size_t(j)] = shifted;
    }
  return M;
}

namespace {

PSeries descend(const PSeries& a, uint32_t f) {
  const FiniteField& k = *a.field();
  FieldPtr kq = build_field(k.p(), f);
  PSeries out(kq, a.prec());
  for (int i = 0; i < a.prec(); ++i) {
    if (!k.in_subfield(a[i], f)) throw std::logic_error("reduced trace or norm does not descend to K");
    out[i] = k.restrict_to(*kq, a[i]);
  }
  return out;
}

}  // namespace

PSeries trd(const DivisionAlgElement& d) {
  auto M = d.regular_representation();
  PSeries t(d.field(), M[0][0].prec());
  for (size_t j = 0; j < M.size(); ++j) t = t + M[j][j];
  return descend(t, d.f());
}

PSeries nrd(const DivisionAlgElement& d) {
  auto M = d.regular_representation();
  PSeries c = charpoly(M).back();
  return descend(d.n() % 2 ? -c : c, d.f());
}

DivResult div_alg_ops(const DivisionAlgElement& a, const DivisionAlgElement& b, DivOp op) {
  DivResult r;
  switch (op) {
    case DivOp::kMul:
      r.element = a * b;
      break;
    case DivOp::kTrd:
      r.value = trd(a);
      break;
    case DivOp::kNrd:
      r.value = nrd(a);
      break;
  }
  return r;
}

Elt r_L_div(const DivisionAlgElement& d) {
  if (d.depth() < d.n() + 1 || d[0] != 1) throw std::invalid_argument("r_L_div: d is not in U_D^1");
  DivisionAlgElement x = d - DivisionAlgElement::one(d.field(), d.f(), d.n(), d.depth());
  // (-phi)^{-1} = -phi^{-1}
  DivisionAlgElement y = x.phi_inverse_times();
  PSeries t = trd(y);
  return t.field()->neg(t[0]);
}

Elt kappa(const DivisionAlgElement& d) {
  if (d.depth() < 2) throw PrecisionError("kappa: needs depth >= 2");
  DivisionAlgElement e = d.inverse();
  return d.field()->div(e[1], e[0]);
}

DivisionAlgElement random_UD1(FieldPtr kn, uint32_t f, int n, int depth, std::mt19937_64& rng, bool nrd_one) {
  std::uniform_int_distribution<Elt> pick(0, Elt(kn->q() - 1));
  DivisionAlgElement d = DivisionAlgElement::one(kn, f, n, depth);
  for (int i = 1; i < depth; ++i) d[i] = pick(rng);
  if (!nrd_one) return d;
  // Nrd(a d) = a^n Nrd(d) for central a
  PSeries N = nrd(d);
  PSeries a = ps_one_unit_root(ps_inverse(N), n);
  return DivisionAlgElement::from_K(kn, f, n, a, depth) * d;
}

// ---- g_L ----

GLReport gL_matrix(int n, uint32_t p) {
  if (n < 2) throw std::invalid_argument("gL_matrix: needs n >= 2");
  FieldPtr k = build_field(p, 1);
  GLReport r;
  r.n = n;
  const int m = n - 1;
  r.matrix.assign(size_t(m), std::vector<Elt>(size_t(m), 0));
  for (int j = 0; j < m; ++j) r.matrix[0][size_t(j)] = k->neg(1);
  for (int i = 1; i < m; ++i) r.matrix[size_t(i)][size_t(i - 1)] = 1;
  std::vector<std::vector<PSeries>> A{size_t(m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A[size_t(i)].push_back(PSeries::constant(k, 1, r.matrix[size_t(i)][size_t(j)]));
  auto c = charpoly(A);
  r.matches = true;
  for (const auto& e : c) {
    r.charpoly.push_back(e[0]);
    if (e[0] != 1) r.matches = false;
  }
  Elt cm = c.back()[0];
  r.det = m % 2 ? k->neg(cm) : cm;
  return r;
}

nlohmann::json GLReport::to_json() const {
  return {{"n", n}, {"matrix", matrix}, {"charpoly", charpoly}, {"matches", matches}, {"det", det}};
}

// ---- analytic action ----

std::string actor_kind_name(ActorKind k) {
  switch (k) {
    case ActorKind::kMatrix:
      return "matrix";
    case ActorKind::kDivision:
      return "division";
    case ActorKind::kWeil:
      return "weil";
  }
  return "?";
}

nlohmann::json Actor::to_json() const {
  nlohmann::json j{{"kind", actor_kind_name(kind)}};
  if (g) j["g"] = g->to_json();
  if (d) j["d"] = d->to_json();
  if (u) j["u"] = u->to_json();
  if (kind == ActorKind::kWeil) j["n_sigma"] = n_sigma;
  return j;
}

HahnSeries weil_inverse(const LTContext& ctx, const PSeries& u, int n_sigma, const HahnSeries& x) {
  const FieldPtr& k = ctx.field();
  const FiniteField& kq = *ctx.residue_field();
  const uint64_t q = ctx.q();
  if (u.prec() < 1 || u[0] == 0) throw std::invalid_argument("weil_inverse: u is not a unit");
  if (x.cap().is_infinite() && !x.empty()) throw PrecisionError("weil_inverse: needs a finite cap");
  const Rational s = ctx.xi_exponent();
  PSeries w = ps_inverse(u);
  Elt w0 = k->embed(kq, w[0]);
  // rho^2 = w_0 with the least discrete log
  const uint64_t Q = k->q();
  std::optional<Elt> rho;
  for (uint64_t e = 0; e < Q - 1 && !rho; ++e)
    if (k->pow(k->exp(e), 2) == w0) rho = k->exp(e);
  if (!rho) throw FieldError("weil_inverse: w_0 has no square root in the coefficient field");
  // sigma^{-1}(xi_1) = w_0 xi_1 (1 + v), known to xi_1^{q^{prec}}
  HahnSeries v(k, Cap(s * (rpow(q, u.prec()) - Rational(1))));
  for (int j = 1; j < u.prec(); ++j)
    if (w[j]) v += ctx.monomial(k->div(k->embed(kq, w[j]), w0), s * (rpow(q, j) - Rational(1)));
  const uint32_t p = k->p();
  HahnSeries out(k, x.cap());
  for (const auto& t : x.terms()) {
    Rational r = t.e / s;
    // 2r = a / p^j
    int64_t a = 2 * r.num(), b = r.den();
    int64_t g = std::gcd(a, b);
    a /= g;
    b /= g;
    int64_t j = 0;
    while (b % p == 0) {
      b /= p;
      ++j;
    }
    if (b != 1) throw std::invalid_argument("weil_inverse: exponent outside xi_exponent (1/2) Z[1/p]");
    Elt coef = k->frob(k->pow(*rho, a), -j);
    coef = k->mul(coef, ctx.qfrob(t.c, n_sigma));
    HahnSeries unit = binomial_power(v, r, x.cap().is_infinite() ? Cap() : x.cap() + Cap(-t.e));
    out += (ctx.monomial(coef, t.e) * unit).truncate(x.cap());
  }
  return out.truncate(x.cap());
}

namespace {

// sum_l c_l Y^{q^{scale l + shift}} over the digits c_l (coefficient-field
// codes), with the truncation error of the digit string folded into the cap
HahnSeries frobenius_series(const LTContext& ctx, const std::vector<Elt>& c, int64_t scale, int64_t shift,
                            const HahnSeries& Y, const Cap& target) {
  const uint64_t q = ctx.q();
  Cap vy = Y.val_or_cap();
  if (!(Cap(Rational(0)) < vy)) throw std::invalid_argument("analytic_action: coordinates need positive valuation");
  if (target.is_infinite()) throw PrecisionError("analytic_action: needs a finite cap");
  // least E with v(Y) q^E >= target; terms with exponent >= E vanish below it
  int64_t E = 0;
  for (Cap v = vy; v < target; v = v * Rational(int64_t(q))) ++E;
  const int64_t top = scale * int64_t(c.size()) + shift;
  Cap cap = top >= E ? target : min(target, vy * rpow(q, top));
  HahnSeries out(ctx.field(), cap);
  for (size_t l = 0; l < c.size(); ++l) {
    int64_t e = scale * int64_t(l) + shift;
    if (!c[l] || e >= E) continue;
    HahnSeries y = Y.truncate(cap * rpow(q, -e));
    out += ctx.qfrob(y, e).scale(c[l]);
  }
  return out.truncate(cap);
}

}  // namespace

Point analytic_action(const LTContext& ctx, const Actor& actor, const Point& X) {
  const int n = ctx.n();
  if (int(X.size()) != n) throw std::invalid_argument("analytic_action: wrong arity");
  Cap target;
  for (const auto& x : X) target = min(target, x.cap());
  Point out;
  switch (actor.kind) {
    case ActorKind::kMatrix: {
      const TruncatedMatrix& g = *actor.g;
      if (g.n() != n) throw std::invalid_argument("analytic_action: matrix size");
      for (int i = 0; i < n; ++i) {
        HahnSeries s(ctx.field(), target);
        for (int j = 0; j < n; ++j) {
          std::vector<Elt> digits;
          for (Elt c : g.at(j, i).digits()) digits.push_back(ctx.embed(c));
          s += frobenius_series(ctx, digits, n, 0, X[size_t(j)], target);
        }
        out.push_back(s);
      }
      break;
    }
    case ActorKind::kDivision: {
      DivisionAlgElement e = actor.d->inverse();
      if (e.field().get() != ctx.field().get()) throw FieldError("analytic_action: division algebra field");
      std::vector<Elt> digits(size_t(e.depth()));
      for (int i = 0; i < e.depth(); ++i) digits[size_t(i)] = e[i];
      for (int i = 0; i < n; ++i) out.push_back(frobenius_series(ctx, digits, 1, 0, X[size_t(i)], target));
      break;
    }
    case ActorKind::kWeil: {
      const PSeries& u = *actor.u;
      std::vector<Elt> digits;
      for (Elt c : u.digits()) digits.push_back(ctx.embed(c));
      for (int i = 0; i < n; ++i) {
        HahnSeries y = weil_inverse(ctx, u, actor.n_sigma, X[size_t(i)]);
        out.push_back(frobenius_series(ctx, digits, 1, 0, y, target));
      }
      break;
    }
  }
  return out;
}

nlohmann::json ActionSample::to_json() const {
  nlohmann::json ym = nlohmann::json::array();
  for (const auto& c : y_margins) ym.push_back(cap_json(c));
  return {{"actor", actor.to_json()}, {"ybar", ybar},      {"zbar", zbar},
          {"predicted_shift", predicted_shift}, {"z_margin", cap_json(z_margin)}, {"y_margins", ym},
          {"affinoid", affinoid}, {"pass", pass}, {"inconclusive", inconclusive}};
}

nlohmann::json ActionReport::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& x : samples) s.push_back(x.to_json());
  return {{"kind", actor_kind_name(kind)}, {"passed", passed}, {"failed", failed},
          {"inconclusive", inconclusive}, {"samples", s}};
}

ActionReport action_congruence_check(const LTContext& ctx, ActorKind kind, int samples, uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  const uint64_t q = ctx.q();
  const FieldPtr& k = ctx.field();
  const int depth = 3 * n;
  ActionReport rep;
  rep.kind = kind;
  std::vector<SolveResult> pts;
  for (int i = 0; i < std::max(1, points); ++i) {
    auto [ybar, zbar] = sample_residue_point(ctx, rng);
    pts.push_back(solve_affinoid_point(ctx, sample_lift(ctx, ybar, 2, rng), zbar));
  }
  std::uniform_int_distribution<Elt> unit(1, Elt(q - 1));
  for (int sIdx = 0; sIdx < samples; ++sIdx) {
    const SolveResult& P = pts[size_t(sIdx) % pts.size()];
    ActionSample smp;
    smp.ybar = P.ybar;
    smp.zbar = P.zbar;
    smp.actor.kind = kind;
    HahnSeries zpred = P.z;
    std::vector<HahnSeries> ypred = P.y;
    switch (kind) {
      case ActorKind::kMatrix:
        smp.actor.g = random_UI1(ctx.residue_field(), n, depth, rng, true);
        smp.predicted_shift = r_L_matrix(*smp.actor.g);
        zpred = zpred + ctx.constant(ctx.embed(smp.predicted_shift));
        break;
      case ActorKind::kDivision:
        smp.actor.d = random_UD1(k, ctx.f(), n, depth, rng, true);
        smp.predicted_shift = r_L_div(*smp.actor.d);
        zpred = zpred + ctx.constant(ctx.embed(smp.predicted_shift));
        break;
      case ActorKind::kWeil: {
        PSeries u(ctx.residue_field(), depth);
        std::uniform_int_distribution<Elt> any(0, Elt(q - 1));
        u[0] = unit(rng);
        for (int i = 1; i < depth; ++i) u[i] = any(rng);
        smp.actor.u = u;
        smp.actor.n_sigma = 1;
        // ubar^{(q-1)/2}, which is 1 in characteristic 2
        Elt sign = (q % 2) ? ctx.residue_field()->pow(u[0], int64_t(q - 1) / 2) : 1;
        zpred = ctx.qfrob(P.z, 1);
        for (auto& y : ypred) y = ctx.qfrob(y, 1).scale(ctx.embed(sign));
        break;
      }
    }
    try {
      Point Xp = analytic_action(ctx, smp.actor, P.X);
      Coords c = coords(ctx, Xp);
      auto margin = [&](const HahnSeries& a, const HahnSeries& b) {
        HahnSeries d = a - b;
        if (d.empty() && !(Cap(Rational(0)) < d.cap())) smp.inconclusive = true;
        return d.val_or_cap();
      };
      smp.z_margin = margin(c.z, zpred);
      for (int i = 0; i + 1 < n; ++i) smp.y_margins.push_back(margin(c.y[size_t(i)], ypred[size_t(i)]));
      try {
        smp.affinoid = affinoid_membership(ctx, Xp).member;
      } catch (const PrecisionError&) {
        smp.inconclusive = true;
      }
      bool ok = Cap(Rational(0)) < smp.z_margin;
      for (const auto& m : smp.y_margins) ok = ok && Cap(Rational(0)) < m;
      smp.pass = ok && smp.affinoid && !smp.inconclusive;
    } catch (const PrecisionError&) {
      smp.inconclusive = true;
    }
    if (smp.inconclusive)
      ++rep.inconclusive;
    else if (smp.pass)
      ++rep.passed;
    else
      ++rep.failed;
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

}  // namespace epi
