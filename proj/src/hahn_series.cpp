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

#include "epi/hahn_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace epi {
namespace {

void same_field(const HahnSeries& a, const HahnSeries& b) {
  if (a.field().get() != b.field().get())
    throw FieldError("series over different coefficient fields");
}

int log_p(uint64_t q, uint32_t p) {
  int j = 0;
  while (q > 1) {
    if (q % p) throw std::invalid_argument("q is not a power of the characteristic");
    q /= p;
    ++j;
  }
  return j;
}

Rational p_power(uint32_t p, int64_t j) {
  Rational r(1);
  for (int64_t i = 0; i < (j < 0 ? -j : j); ++i) r *= Rational(p);
  return j < 0 ? Rational(1) / r : r;
}

using u128 = unsigned __int128;

// inverse of a mod m for gcd(a, m) = 1, via extended Euclid on signed 128-bit
__int128 mod_inverse(__int128 a, __int128 m) {
  __int128 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    __int128 qt = g / a1;
    __int128 t = g - qt * a1;
    g = a1;
    a1 = t;
    t = x - qt * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

}  // namespace

Rational Cap::grid_below(double x) {
  return Rational(int64_t(std::floor(x * double(kGrid))) - 2, kGrid);
}

Cap Cap::coarsened() const {
  if (inf_ || v_.den() <= kMaxCapDen) return *this;
  __int128 n = __int128(v_.num()) * kGrid;
  __int128 fl = n / v_.den();
  if (n % v_.den() != 0 && n < 0) --fl;
  return Cap(Rational(int64_t(fl), kGrid));
}

HahnSeries::HahnSeries(FieldPtr k, Cap cap) : k_(std::move(k)), cap_(cap.coarsened()) {}

HahnSeries HahnSeries::monomial(FieldPtr k, Elt c, const Rational& e, Cap cap) {
  HahnSeries s(std::move(k), cap);
  if (c != 0 && cap.above(e)) s.terms_.push_back({e, c});
  return s;
}

HahnSeries HahnSeries::from_terms(FieldPtr k, std::vector<Term> terms, Cap cap) {
  HahnSeries s(std::move(k), cap);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  const FiniteField& f = *s.k_;
  for (size_t i = 0; i < terms.size();) {
    size_t j = i;
    Elt c = 0;
    while (j < terms.size() && terms[j].e == terms[i].e) c = f.add(c, terms[j++].c);
    if (!s.cap_.above(terms[i].e)) break;
    if (c != 0) {
      // a surviving term with an oversized denominator ends the known part
      if (terms[i].e.den() > Cap::kMaxTermDen) {
        s.cap_ = Cap(Cap::grid_below(terms[i].e.to_double()));
        break;
      }
      s.terms_.push_back({terms[i].e, c});
    }
    i = j;
  }
  while (!s.terms_.empty() && !s.cap_.above(s.terms_.back().e)) s.terms_.pop_back();
  return s;
}

std::optional<Rational> HahnSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().e;
}

Cap HahnSeries::val_or_cap() const { return terms_.empty() ? cap_ : Cap(terms_.front().e); }

Elt HahnSeries::coeff(const Rational& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Rational& v) { return t.e < v; });
  return (it != terms_.end() && it->e == e) ? it->c : 0;
}

const Term& HahnSeries::leading() const {
  if (terms_.empty()) throw PrecisionError("leading term of a series with valuation >= cap");
  return terms_.front();
}

HahnSeries HahnSeries::truncate(const Cap& c) const {
  if (cap_ <= c) return *this;
  HahnSeries s(k_, c);
  for (const auto& t : terms_) {
    if (!c.above(t.e)) break;
    s.terms_.push_back(t);
  }
  return s;
}

HahnSeries HahnSeries::operator-() const {
  HahnSeries s(k_, cap_);
  s.terms_.reserve(terms_.size());
  for (const auto& t : terms_) s.terms_.push_back({t.e, k_->neg(t.c)});
  return s;
}

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
  same_field(a, b);
  Cap cap = min(a.cap_, b.cap_);
  HahnSeries s(a.k_, cap);
  const FiniteField& f = *a.k_;
  size_t i = 0, j = 0;
  s.terms_.reserve(a.terms_.size() + b.terms_.size());
  while (i < a.terms_.size() || j < b.terms_.size()) {
    const Term* t;
    Term merged;
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].e < b.terms_[j].e)) {
      t = &a.terms_[i++];
    } else if (i == a.terms_.size() || b.terms_[j].e < a.terms_[i].e) {
      t = &b.terms_[j++];
    } else {
      merged = {a.terms_[i].e, f.add(a.terms_[i].c, b.terms_[j].c)};
      ++i;
      ++j;
      t = &merged;
    }
    if (!cap.above(t->e)) break;
    if (t->c != 0) s.terms_.push_back(*t);
  }
  return s;
}

HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return a + (-b); }

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
  same_field(a, b);
  // an unknown tail of a below its cap meets b's leading term, and vice versa
  Cap cap = min(a.cap_ + b.val_or_cap(), b.cap_ + a.val_or_cap());
  const FiniteField& f = *a.k_;
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * std::min<size_t>(b.terms_.size(), 64));
  // Exponent sums far above the cap are discarded in floating point first;
  // their exact sums may have denominators beyond 64 bits.
  const double capd = cap.is_infinite() ? HUGE_VAL : cap.value().to_double();
  constexpr double kSlack = 1e-6;
  std::vector<double> bd(b.terms_.size());
  for (size_t j = 0; j < bd.size(); ++j) bd[j] = b.terms_[j].e.to_double();
  for (const auto& ta : a.terms_) {
    const double da = ta.e.to_double();
    if (b.terms_.empty() || da + bd[0] > capd + kSlack) break;
    for (size_t j = 0; j < b.terms_.size(); ++j) {
      if (da + bd[j] > capd + kSlack) break;
      Rational e;
      try {
        e = ta.e + b.terms_[j].e;
      } catch (const std::overflow_error&) {
        cap = min(cap, Cap(Cap::grid_below(da + bd[j])));
        break;
      }
      if (!cap.above(e)) break;
      prod.push_back({e, f.mul(ta.c, b.terms_[j].c)});
    }
  }
  return HahnSeries::from_terms(a.k_, std::move(prod), cap);
}

HahnSeries HahnSeries::scale(Elt c) const {
  if (c == 0) return HahnSeries(k_, cap_);
  HahnSeries s(k_, cap_);
  s.terms_.reserve(terms_.size());
  for (const auto& t : terms_) s.terms_.push_back({t.e, k_->mul(t.c, c)});
  return s;
}

HahnSeries HahnSeries::shift(const Rational& e) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  Cap cap = cap_ + Cap(e);
  for (const auto& t : terms_) {
    try {
      out.push_back({t.e + e, t.c});
    } catch (const std::overflow_error&) {
      cap = min(cap, Cap(Cap::grid_below(t.e.to_double() + e.to_double())));
      break;
    }
  }
  return from_terms(k_, std::move(out), cap);
}

HahnSeries HahnSeries::pfrob(int64_t j) const {
  if (j == 0) return *this;
  Rational scale = p_power(k_->p(), j);
  std::vector<Term> out;
  out.reserve(terms_.size());
  Cap cap = cap_ * scale;
  for (const auto& t : terms_) {
    try {
      out.push_back({t.e * scale, k_->frob(t.c, j)});
    } catch (const std::overflow_error&) {
      cap = min(cap, Cap(Cap::grid_below(t.e.to_double() * scale.to_double())));
      break;
    }
  }
  return from_terms(k_, std::move(out), cap);
}

bool HahnSeries::identical(const HahnSeries& o) const {
  if (k_.get() != o.k_.get() || !(cap_ == o.cap_) || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

nlohmann::json HahnSeries::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) terms.push_back({t.e.num(), t.e.den(), t.c});
  nlohmann::json cap = cap_.is_infinite() ? nlohmann::json("inf")
                                          : nlohmann::json({cap_.value().num(), cap_.value().den()});
  return {{"field", k_->name()}, {"terms", terms}, {"cap", cap}};
}

HahnSeries HahnSeries::from_json(FieldPtr k, const nlohmann::json& j) {
  Cap cap;
  if (!j.at("cap").is_string()) cap = Cap(Rational(j.at("cap")[0].get<int64_t>(), j.at("cap")[1].get<int64_t>()));
  std::vector<Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({Rational(t[0].get<int64_t>(), t[1].get<int64_t>()), t[2].get<Elt>()});
  return from_terms(std::move(k), std::move(terms), cap);
}

std::string HahnSeries::str(size_t max_terms) const {
  std::ostringstream os;
  for (size_t i = 0; i < terms_.size() && i < max_terms; ++i) {
    if (i) os << " + ";
    os << "[" << terms_[i].c << "]T^" << terms_[i].e;
  }
  if (terms_.size() > max_terms) os << " + ... (" << terms_.size() << " terms)";
  if (terms_.empty()) os << "0";
  os << " + O(T^" << cap_.str() << ")";
  return os.str();
}

HahnSeries qth_power(const HahnSeries& a, uint64_t q, int64_t times) {
  return a.pfrob(int64_t(log_p(q, a.field()->p())) * times);
}

HahnSeries qth_root(const HahnSeries& a, uint64_t q, int64_t times) {
  return a.pfrob(-int64_t(log_p(q, a.field()->p())) * times);
}

HahnSeries binomial_power(const HahnSeries& u, const Rational& r, const Cap& target) {
  const FieldPtr& k = u.field();
  const uint32_t p = k->p();
  if (!u.empty() && u.leading().e <= Rational(0))
    throw PrecisionError("binomial_power: needs v(u) > 0");
  HahnSeries one = HahnSeries::constant(k, 1);
  if (r.num() == 0) return one;
  // r = p^j rr with numerator and denominator of rr prime to p, j of either sign;
  // (1 + u)^r = ((1 + u)^rr)^{p^j}, so precision scales by p^j
  int64_t j = 0;
  int64_t num0 = r.num(), den0 = r.den();
  while (den0 % p == 0) {
    den0 /= p;
    --j;
  }
  while (num0 % p == 0) {
    num0 /= p;
    ++j;
  }
  Rational rr(num0, den0);
  Cap work = min(u.cap(), target * p_power(p, -j));
  if (u.empty()) return u.cap().is_infinite() ? one : one.truncate(work).pfrob(j);
  if (work.is_infinite()) {
    // exact only for nonnegative integer exponents
    if (j < 0 || !rr.is_integer() || rr.num() < 0)
      throw PrecisionError("binomial_power: infinite precision needs a finite target");
    HahnSeries res = one, base = one + u;
    for (int64_t e = rr.num(); e; e >>= 1) {
      if (e & 1) res = res * base;
      if (e > 1) base = base * base;
    }
    return res.pfrob(j);
  }
  HahnSeries res = one.truncate(work);
  // digits needed: p^N v(u) >= work
  Rational vu = u.leading().e;
  int N = 0;
  Rational reach = vu;
  while (reach < work.value()) {
    reach *= Rational(p);
    ++N;
  }
  u128 M = 1;
  for (int i = 0; i < N; ++i) M *= p;
  // rr mod p^N as an integer in [0, M)
  __int128 num = rr.num(), dn = rr.den();
  __int128 numm = ((num % __int128(M)) + __int128(M)) % __int128(M);
  u128 R = u128(numm) * u128(mod_inverse(dn, __int128(M))) % M;
  HahnSeries ui = u.truncate(work);
  for (int i = 0; i < N; ++i) {
    uint32_t d = uint32_t(R % p);
    R /= p;
    if (d) {
      HahnSeries base = (one + ui).truncate(work);
      for (uint32_t t = 0; t < d; ++t) res = (res * base).truncate(work);
    }
    ui = ui.pfrob(1).truncate(work);
  }
  return res.pfrob(j);
}

HahnSeries rational_power(const HahnSeries& a, const Rational& r, const Cap& target) {
  if (a.empty()) throw PrecisionError("rational_power: valuation >= cap");
  const FieldPtr& k = a.field();
  const uint32_t p = k->p();
  const Term lead = a.leading();
  // unit part u = a / (c T^e) - 1
  std::vector<Term> ut;
  Elt cinv = k->inv(lead.c);
  for (size_t i = 1; i < a.terms().size(); ++i)
    ut.push_back({a.terms()[i].e - lead.e, k->mul(a.terms()[i].c, cinv)});
  Cap ucap = a.cap().is_infinite() ? Cap() : Cap(a.cap().value() - lead.e);
  HahnSeries u = HahnSeries::from_terms(k, std::move(ut), ucap);

  // coefficient root
  int64_t den = r.den(), j = 0;
  while (den % p == 0) {
    den /= p;
    ++j;
  }
  const uint64_t Qm1 = k->q() - 1;
  Elt lc = 1;
  if (Qm1 > 0) {
    uint64_t L = k->log(lead.c);
    uint64_t g = std::gcd(uint64_t(den), Qm1);
    if (L % g) throw FieldError("rational_power: leading coefficient has no root of that order");
    uint64_t mod = Qm1 / g;
    uint64_t x = mod == 1 ? 0
                          : uint64_t((__int128(L / g) % mod) * mod_inverse(__int128((den / g) % mod), mod) % mod);
    lc = k->exp(x);
    lc = k->pow(lc, r.num());
    lc = k->frob(lc, -j);  // unique p^j-th root
  }
  Rational er = lead.e * r;
  Cap utarget = target.is_infinite() ? Cap() : Cap(target.value() - er);
  HahnSeries unit = binomial_power(u, r, utarget);
  return unit.shift(er).scale(lc);
}

HahnSeries inv(const HahnSeries& a, const Cap& target) { return rational_power(a, Rational(-1), target); }

HahnSeries div(const HahnSeries& a, const HahnSeries& b, const Cap& target) {
  Cap t = target;
  if (!target.is_infinite() && !a.empty()) t = Cap(target.value() - a.leading().e);
  return (a * inv(b, t)).truncate(target);
}

bool congruence_check(const HahnSeries& f, const HahnSeries& g, const Rational& a, bool strict) {
  HahnSeries d = f - g;
  if (!d.cap().above(a))
    throw PrecisionError("congruence_check: level " + a.str() + " not below cap " + d.cap().str());
  if (d.empty()) return true;  // v >= cap > a
  const Rational& v = d.leading().e;
  return strict ? a < v : a <= v;
}

HahnSeries series_arith(const HahnSeries& a, const HahnSeries& b, SeriesOp op, uint64_t q, const Rational& r) {
  switch (op) {
    case SeriesOp::kAdd: return a + b;
    case SeriesOp::kMul: return a * b;
    case SeriesOp::kNeg: return -a;
    case SeriesOp::kInv: return inv(a);
    case SeriesOp::kQthRoot: return qth_root(a, q);
    case SeriesOp::kQthPower: return qth_power(a, q);
    case SeriesOp::kRationalPower: return rational_power(a, r);
  }
  throw std::invalid_argument("series_arith: unknown op");
}

}  // namespace epi
