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

#include "epi/finite_field.hpp"

#include <algorithm>

namespace epi {
namespace {

using Poly = std::vector<int64_t>;  // low degree first, entries in [0, p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t inv_mod(int64_t a, int64_t p) {
  int64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, int64_t p) {
  trim(a);
  int64_t lead_inv = inv_mod(m.back(), p);
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int64_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i)
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly b, uint64_t e, const Poly& m, int64_t p) {
  Poly r = {1};
  b = poly_mod(b, m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, b, m, p);
    e >>= 1;
    if (e) b = poly_mulmod(b, b, m, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin: g of degree f is irreducible iff x^{p^f} = x mod g and
// gcd(x^{p^{f/l}} - x, g) = 1 for every prime l | f.
bool rabin_irreducible(const Poly& g, int64_t p) {
  size_t f = g.size() - 1;
  if (f == 1) return true;
  std::vector<Poly> xpk(f + 1);  // x^{p^k} mod g
  xpk[0] = poly_mod({0, 1}, g, p);
  for (size_t k = 1; k <= f; ++k) xpk[k] = poly_powmod(xpk[k - 1], uint64_t(p), g, p);
  Poly x = poly_mod({0, 1}, g, p);
  if (xpk[f] != x) return false;
  for (uint64_t l : prime_factors(f)) {
    Poly h = xpk[f / l];
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = (h[1] - 1 + p) % p;
    trim(h);
    if (poly_gcd(g, h, p).size() != 1) return false;
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<uint32_t, uint32_t>, FieldPtr> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldPtr build_field(uint32_t p, uint32_t f, uint64_t cap) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (f == 0) throw FieldError("degree must be positive");
  Registry& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.fields.find({p, f});
    if (it != reg.fields.end()) return it->second;
  }
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > cap) throw FieldError("field size exceeds cap");
  }
  FieldPtr k(new FiniteField(p, f));
  std::lock_guard<std::mutex> lock(reg.mu);
  return reg.fields.emplace(std::make_pair(p, f), k).first->second;
}

FiniteField::FiniteField(uint32_t p, uint32_t f) : p_(p), f_(f) {
  q_ = 1;
  for (uint32_t i = 0; i < f; ++i) q_ *= p;
  half_ = (q_ - 1) / 2;

  // least monic irreducible modulus
  bool found = false;
  for (uint32_t code = 0; code < q_ && !found; ++code) {
    Poly g(f + 1, 0);
    uint32_t c = code;
    for (uint32_t i = 0; i < f; ++i, c /= p) g[i] = c % p;
    g[f] = 1;
    if (rabin_irreducible(g, p)) {
      modulus_.assign(g.begin(), g.end());
      found = true;
    }
  }
  if (!found) throw FieldError("no irreducible polynomial found");
  Poly mod(modulus_.begin(), modulus_.end());

  // least generator: order exactly q - 1
  auto factors = prime_factors(q_ - 1);
  auto to_poly = [&](uint32_t code) {
    Poly a(f, 0);
    for (uint32_t i = 0; i < f; ++i, code /= p) a[i] = code % p;
    trim(a);
    return a;
  };
  const Poly one = {1};
  gen_ = 0;
  for (uint32_t code = 1; code < q_; ++code) {
    Poly a = to_poly(code);
    if (q_ == 2) { gen_ = 1; break; }
    bool ok = true;
    for (uint64_t l : factors) {
      if (poly_powmod(a, (q_ - 1) / l, mod, p) == one) { ok = false; break; }
    }
    if (ok) { gen_ = code; break; }
  }
  if (gen_ == 0) throw FieldError("no generator found");

  // tables by repeated multiplication with the generator
  log_.assign(q_, 0);
  exp_.assign(2 * size_t(q_ - 1), 0);
  std::vector<uint32_t> gd = digits(gen_);
  std::vector<uint32_t> cur(f, 0), acc(f), tmp(f);
  cur[0] = 1;
  auto encode = [&](const std::vector<uint32_t>& d) {
    uint32_t code = 0;
    for (uint32_t i = f; i-- > 0;) code = code * p + d[i];
    return code;
  };
  std::vector<uint8_t> seen(q_, 0);
  for (uint32_t i = 0; i + 1 < q_; ++i) {
    uint32_t code = encode(cur);
    if (seen[code]) throw FieldError("generator verification failed");
    seen[code] = 1;
    exp_[i] = code;
    exp_[i + q_ - 1] = code;
    log_[code] = i;
    // cur *= g, via shifts by x
    std::fill(acc.begin(), acc.end(), 0);
    tmp = cur;
    for (uint32_t d = 0; d < f; ++d) {
      if (gd[d]) {
        for (uint32_t j = 0; j < f; ++j) acc[j] = (acc[j] + gd[d] * tmp[j]) % p;
      }
      if (d + 1 < f) {
        bool rest = false;
        for (uint32_t e = d + 1; e < f; ++e) rest |= gd[e] != 0;
        if (!rest) break;
        uint32_t top = tmp[f - 1];
        for (uint32_t j = f - 1; j > 0; --j)
          tmp[j] = (tmp[j - 1] + (p - top) * modulus_[j]) % p;
        tmp[0] = ((p - top) * modulus_[0]) % p;
      }
    }
    cur = acc;
  }

  zech_.assign(q_ - 1, -1);
  for (uint32_t i = 0; i + 1 < q_; ++i) {
    Elt e = exp_[i];
    Elt s = (e % p == p - 1) ? e - (p - 1) : e + 1;  // 1 + e on digit 0
    zech_[i] = s == 0 ? -1 : int32_t(log_[s]);
  }

  ppow_mod_.assign(f, 0);
  uint64_t pk = 1 % (q_ - 1 == 0 ? 1 : q_ - 1);
  for (uint32_t k = 0; k < f; ++k) {
    ppow_mod_[k] = q_ == 2 ? 0 : pk;
    pk = pk * p % (q_ - 1);
  }

  // absolute trace of the power basis; trace of x^i has only digit 0
  trace_basis_.assign(f, 0);
  Elt xi = 1;
  for (uint32_t i = 0; i < f; ++i) {
    Elt t = trace(xi, 1);
    trace_basis_[i] = t;
    if (i + 1 < f) {
      std::vector<uint32_t> d(f, 0);
      d[i + 1] = 1;
      xi = from_digits(d);
    }
  }
}

std::string FiniteField::name() const {
  return "F" + std::to_string(p_) + (f_ == 1 ? "" : "^" + std::to_string(f_));
}

Elt FiniteField::pow(Elt a, int64_t e) const {
  if (a == 0) {
    if (e < 0) throw FieldError("negative power of zero");
    return e == 0 ? 1 : 0;
  }
  int64_t m = q_ - 1;
  int64_t ee = ((e % m) + m) % m;
  return exp_[uint64_t(log_[a]) * uint64_t(ee) % uint64_t(m)];
}

std::vector<uint32_t> FiniteField::digits(Elt a) const {
  std::vector<uint32_t> d(f_, 0);
  for (uint32_t i = 0; i < f_; ++i, a /= p_) d[i] = a % p_;
  return d;
}

Elt FiniteField::from_digits(const std::vector<uint32_t>& d) const {
  Elt code = 0;
  for (uint32_t i = f_; i-- > 0;) code = code * p_ + (i < d.size() ? d[i] % p_ : 0);
  return code;
}

Elt FiniteField::trace(Elt a, uint32_t e) const {
  if (e == 0 || f_ % e != 0) throw FieldError("trace: subfield degree must divide f");
  Elt s = 0;
  for (uint32_t i = 0; i < f_ / e; ++i) s = add(s, frob(a, int64_t(e) * i));
  return s;
}

Elt FiniteField::norm(Elt a, uint32_t e) const {
  if (e == 0 || f_ % e != 0) throw FieldError("norm: subfield degree must divide f");
  Elt s = 1;
  for (uint32_t i = 0; i < f_ / e; ++i) s = mul(s, frob(a, int64_t(e) * i));
  return s;
}

Elt FiniteField::relative_trace(Elt a, uint32_t d, uint32_t e) const {
  if (e == 0 || d % e != 0 || f_ % d != 0) throw FieldError("relative_trace: need e | d | f");
  if (!in_subfield(a, d)) throw FieldError("relative_trace: element not in subfield");
  Elt s = 0;
  for (uint32_t i = 0; i < d / e; ++i) s = add(s, frob(a, int64_t(e) * i));
  return s;
}

Elt FiniteField::relative_norm(Elt a, uint32_t d, uint32_t e) const {
  if (e == 0 || d % e != 0 || f_ % d != 0) throw FieldError("relative_norm: need e | d | f");
  if (!in_subfield(a, d)) throw FieldError("relative_norm: element not in subfield");
  Elt s = 1;
  for (uint32_t i = 0; i < d / e; ++i) s = mul(s, frob(a, int64_t(e) * i));
  return s;
}

uint32_t FiniteField::tr_prime_(Elt a) const {
  uint64_t s = 0;
  for (uint32_t i = 0; i < f_; ++i, a /= p_) s += uint64_t(a % p_) * trace_basis_[i];
  return uint32_t(s % p_);
}

bool FiniteField::in_subfield(Elt a, uint32_t e) const {
  if (e == 0 || f_ % e != 0) return false;
  return frob(a, e) == a;
}

int FiniteField::residue_symbol(Elt a) const {
  if (p_ == 2) throw FieldError("residue symbol needs odd characteristic");
  if (a == 0) throw FieldError("residue symbol of zero");
  return (log_[a] % 2 == 0) ? 1 : -1;
}

const std::vector<Elt>& FiniteField::embedding_from(const FiniteField& sub) const {
  if (sub.p_ != p_ || f_ % sub.f_ != 0)
    throw FieldError("embedding: " + sub.name() + " is not a subfield of " + name());
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto key = std::make_pair(sub.p_, sub.f_);
  auto it = embed_cache_.find(key);
  if (it != embed_cache_.end()) return it->second;

  if (sub.f_ == f_) {
    std::vector<Elt> id(q_);
    for (Elt c = 0; c < q_; ++c) id[c] = c;
    return embed_cache_.emplace(key, std::move(id)).first->second;
  }
  // least root of sub's modulus among the Frobenius-fixed elements
  auto eval_mod = [&](Elt x) {
    Elt v = 0;
    for (size_t i = sub.modulus_.size(); i-- > 0;) v = add(mul(v, x), Elt(sub.modulus_[i]));
    return v;
  };
  Elt beta = q_;
  for (Elt x = 0; x < q_; ++x) {
    if (frob(x, sub.f_) == x && eval_mod(x) == 0) { beta = x; break; }
  }
  if (beta == q_) throw FieldError("embedding: no root of the subfield modulus");
  std::vector<Elt> table(sub.q_);
  for (Elt c = 0; c < sub.q_; ++c) {
    auto d = sub.digits(c);
    Elt v = 0;
    for (size_t i = d.size(); i-- > 0;) v = add(mul(v, beta), Elt(d[i]));
    table[c] = v;
  }
  return embed_cache_.emplace(key, std::move(table)).first->second;
}

const std::vector<Elt>& FiniteField::restriction_from_(const FiniteField& sub) const {
  const auto& emb = embedding_from(sub);
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto key = std::make_pair(sub.p_, sub.f_);
  auto it = restrict_cache_.find(key);
  if (it != restrict_cache_.end()) return it->second;
  // small codes sorted by their image
  std::vector<Elt> order(sub.q_);
  for (Elt c = 0; c < sub.q_; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](Elt a, Elt b) { return emb[a] < emb[b]; });
  return restrict_cache_.emplace(key, std::move(order)).first->second;
}

Elt FiniteField::restrict_to(const FiniteField& sub, Elt a) const {
  const auto& emb = embedding_from(sub);
  const auto& order = restriction_from_(sub);
  auto it = std::lower_bound(order.begin(), order.end(), a,
                             [&](Elt c, Elt v) { return emb[c] < v; });
  if (it == order.end() || emb[*it] != a)
    throw FieldError("restrict: element is not in " + sub.name());
  return *it;
}

const std::vector<Elt>& FiniteField::trace_table(uint32_t e) const {
  if (e == 0 || f_ % e != 0) throw FieldError("trace_table: e must divide f");
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = trace_cache_.find(e);
    if (it != trace_cache_.end()) return it->second;
  }
  FieldPtr sub = build_field(p_, e);
  std::vector<Elt> t(q_);
  if (e == 1) {
    for (Elt a = 0; a < q_; ++a) t[a] = tr_prime_(a);
  } else if (e == f_) {
    // the canonical F_{p^f} is this field
    for (Elt a = 0; a < q_; ++a) t[a] = a;
  } else {
    // additive: trace of a basis then linear combination
    std::vector<Elt> basis(f_);
    for (uint32_t i = 0; i < f_; ++i) {
      std::vector<uint32_t> d(f_, 0);
      d[i] = 1;
      basis[i] = restrict_to(*sub, trace(from_digits(d), e));
    }
    for (Elt a = 0; a < q_; ++a) {
      Elt s = 0;
      Elt c = a;
      for (uint32_t i = 0; i < f_; ++i, c /= p_) {
        uint32_t di = c % p_;
        for (uint32_t j = 0; j < di; ++j) s = sub->add(s, basis[i]);
      }
      t[a] = s;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mu_);
  return trace_cache_.emplace(e, std::move(t)).first->second;
}

std::pair<FFElement, FFElement> trace_norm(const FFElement& x, uint32_t e) {
  const FiniteField& k = *x.field();
  if (e == 0 || k.f() % e != 0) throw FieldError("trace_norm: e does not divide f");
  FieldPtr sub = build_field(k.p(), e);
  Elt t = k.trace(x.code(), e), n = k.norm(x.code(), e);
  if (!k.in_subfield(t, e) || !k.in_subfield(n, e))
    throw FieldError("trace_norm: result not Frobenius-fixed");
  return {FFElement(sub, k.restrict_to(*sub, t)), FFElement(sub, k.restrict_to(*sub, n))};
}

int residue_symbol(const FFElement& x) { return x.field()->residue_symbol(x.code()); }

int jacobi(int64_t m1, int64_t m2) {
  if (m2 <= 0 || m2 % 2 == 0) throw std::invalid_argument("jacobi: m2 must be odd and positive");
  int64_t a = m1 % m2;
  if (a < 0) a += m2;
  int64_t n = m2;
  int s = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t r = n % 8;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

}  // namespace epi
