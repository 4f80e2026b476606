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

#ifndef EPI_FINITE_FIELD_HPP_
#define EPI_FINITE_FIELD_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epi {

// An element of F_{p^f} is stored as its code sum_i c_i p^i, where
// c_0 + c_1 x + ... + c_{f-1} x^{f-1} is the residue modulo the field's
// modulus. Codes 0..p-1 are the prime field.
using Elt = uint32_t;

constexpr uint64_t kDefaultFieldCap = uint64_t(1) << 24;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// Returns the (cached) field F_{p^f}. The modulus is the least monic
// irreducible polynomial of degree f, ordered by the code of its lower
// coefficients, and the generator is the least code of order p^f - 1.
FieldPtr build_field(uint32_t p, uint32_t f, uint64_t cap = kDefaultFieldCap);

bool is_prime(uint64_t n);

class FiniteField {
 public:
  uint32_t p() const { return p_; }
  uint32_t f() const { return f_; }
  uint32_t q() const { return q_; }
  // monic, coefficients from degree 0 up to degree f
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  Elt generator() const { return gen_; }
  std::string name() const;

  Elt add(Elt a, Elt b) const {
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    uint32_t la = log_[a], lb = log_[b];
    uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + uint32_t(z)];
  }
  Elt neg(Elt a) const {
    if (p_ == 2 || a == 0) return a;
    return exp_[log_[a] + half_];
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elt inv(Elt a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, int64_t e) const;
  // x^{p^k}; k may be negative (inverse Frobenius)
  Elt frob(Elt a, int64_t k) const {
    if (a == 0) return 0;
    int64_t kk = ((k % f_) + f_) % f_;
    return exp_[uint64_t(log_[a]) * ppow_mod_[kk] % (q_ - 1)];
  }
  // discrete log base the generator; a != 0
  uint32_t log(Elt a) const {
    if (a == 0) throw FieldError("log of zero");
    return log_[a];
  }
  Elt exp(uint64_t i) const { return exp_[i % (q_ - 1)]; }
  Elt from_int(int64_t n) const {
    int64_t r = n % int64_t(p_);
    return Elt(r < 0 ? r + p_ : r);
  }
  std::vector<uint32_t> digits(Elt a) const;
  Elt from_digits(const std::vector<uint32_t>& d) const;

  // e | f; results lie in the subfield F_{p^e}, still in this field's codes
  Elt trace(Elt a, uint32_t e) const;
  Elt norm(Elt a, uint32_t e) const;
  // Tr and N from F_{p^d} to F_{p^e} for a in the subfield F_{p^d}; e | d | f
  Elt relative_trace(Elt a, uint32_t d, uint32_t e) const;
  Elt relative_norm(Elt a, uint32_t d, uint32_t e) const;
  // absolute trace as an integer in [0, p)
  uint32_t abs_trace(Elt a) const { return tr_prime_(a); }
  bool in_subfield(Elt a, uint32_t e) const;

  // +1 or -1; q odd, a != 0
  int residue_symbol(Elt a) const;

  // Table T with T[code in sub] = image in this field. Built from the least
  // Frobenius-fixed root of sub's modulus, cached.
  const std::vector<Elt>& embedding_from(const FiniteField& sub) const;
  Elt embed(const FiniteField& sub, Elt a) const { return embedding_from(sub)[a]; }
  // inverse of embed; throws if a is not in the subfield
  Elt restrict_to(const FiniteField& sub, Elt a) const;
  // table of Tr_{this/F_{p^e}} expressed in sub = build_field(p, e) codes
  const std::vector<Elt>& trace_table(uint32_t e) const;

 private:
  friend FieldPtr build_field(uint32_t, uint32_t, uint64_t);
  FiniteField(uint32_t p, uint32_t f);
  uint32_t tr_prime_(Elt a) const;
  const std::vector<Elt>& restriction_from_(const FiniteField& sub) const;

  uint32_t p_, f_, q_, half_;
  std::vector<uint32_t> modulus_;
  Elt gen_ = 0;
  std::vector<uint32_t> log_;
  std::vector<Elt> exp_;  // length 2(q-1), exp_[i] = g^i
  std::vector<int32_t> zech_;  // log(1 + g^i), -1 when 1 + g^i = 0
  std::vector<uint64_t> ppow_mod_;  // p^k mod (q-1)
  std::vector<uint32_t> trace_basis_;  // absolute trace of x^i

  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<uint32_t, uint32_t>, std::vector<Elt>> embed_cache_;
  mutable std::map<std::pair<uint32_t, uint32_t>, std::vector<Elt>> restrict_cache_;
  mutable std::map<uint32_t, std::vector<Elt>> trace_cache_;
};

// Value type with an owner; mixing owners is an error.
class FFElement {
 public:
  FFElement(FieldPtr k, Elt v) : k_(std::move(k)), v_(v) {}
  const FieldPtr& field() const { return k_; }
  Elt code() const { return v_; }

  friend FFElement operator+(const FFElement& a, const FFElement& b) {
    check(a, b);
    return {a.k_, a.k_->add(a.v_, b.v_)};
  }
  friend FFElement operator-(const FFElement& a, const FFElement& b) {
    check(a, b);
    return {a.k_, a.k_->sub(a.v_, b.v_)};
  }
  friend FFElement operator-(const FFElement& a) { return {a.k_, a.k_->neg(a.v_)}; }
  friend FFElement operator*(const FFElement& a, const FFElement& b) {
    check(a, b);
    return {a.k_, a.k_->mul(a.v_, b.v_)};
  }
  friend FFElement operator/(const FFElement& a, const FFElement& b) {
    check(a, b);
    return {a.k_, a.k_->div(a.v_, b.v_)};
  }
  friend bool operator==(const FFElement& a, const FFElement& b) {
    check(a, b);
    return a.v_ == b.v_;
  }
  FFElement pow(int64_t e) const { return {k_, k_->pow(v_, e)}; }
  FFElement frob(int64_t k) const { return {k_, k_->frob(v_, k)}; }

 private:
  static void check(const FFElement& a, const FFElement& b) {
    if (a.k_.get() != b.k_.get())
      throw FieldError("arithmetic between elements of different fields");
  }
  FieldPtr k_;
  Elt v_;
};

// Trace and norm down to F_{p^e}, expressed in build_field(p, e).
std::pair<FFElement, FFElement> trace_norm(const FFElement& x, uint32_t e);

int residue_symbol(const FFElement& x);

// Jacobi symbol (m1/m2) for odd m2 > 0; 0 if gcd(m1, m2) != 1.
int jacobi(int64_t m1, int64_t m2);

}  // namespace epi

#endif  // EPI_FINITE_FIELD_HPP_
