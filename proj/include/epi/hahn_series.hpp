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

#ifndef EPI_HAHN_SERIES_HPP_
#define EPI_HAHN_SERIES_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epi/finite_field.hpp"
#include "epi/rational.hpp"
#include "json.hpp"

namespace epi {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precision bound: a rational, or infinite for exact values.
class Cap {
 public:
  Cap() : inf_(true) {}
  Cap(const Rational& r) : inf_(false), v_(r) {}  // NOLINT
  Cap(int64_t n) : inf_(false), v_(n) {}          // NOLINT
  static Cap infinite() { return Cap(); }

  bool is_infinite() const { return inf_; }
  const Rational& value() const {
    if (inf_) throw PrecisionError("infinite cap has no value");
    return v_;
  }
  friend bool operator<(const Cap& a, const Cap& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator==(const Cap& a, const Cap& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<=(const Cap& a, const Cap& b) { return !(b < a); }
  // On 64-bit overflow the exact value is replaced by a grid point below
  // it; a lower cap only claims less, so this stays sound.
  friend Cap operator+(const Cap& a, const Cap& b) {
    if (a.inf_ || b.inf_) return Cap();
    try {
      return Cap(a.v_ + b.v_);
    } catch (const std::overflow_error&) {
      return Cap(grid_below(a.v_.to_double() + b.v_.to_double()));
    }
  }
  // scaling by a positive rational
  friend Cap operator*(const Cap& a, const Rational& s) {
    if (a.inf_) return Cap();
    try {
      return Cap(a.v_ * s);
    } catch (const std::overflow_error&) {
      return Cap(grid_below(a.v_.to_double() * s.to_double()));
    }
  }
  // Caps and exponents are kept on bounded denominators. kGrid is the
  // grid used when a cap is rounded down; kMaxCapDen and kMaxTermDen bound
  // the denominators a series may carry in its cap and its terms.
  static constexpr int64_t kGrid = int64_t(1) << 20;
  static constexpr int64_t kMaxCapDen = int64_t(1) << 24;
  static constexpr int64_t kMaxTermDen = int64_t(1) << 36;
  // a grid point strictly below x, with room for the rounding error of x
  static Rational grid_below(double x);
  // the largest grid point <= the cap when its denominator is too large
  Cap coarsened() const;
  // e < cap
  bool above(const Rational& e) const { return inf_ || e < v_; }
  std::string str() const { return inf_ ? "inf" : v_.str(); }

 private:
  bool inf_;
  Rational v_;
};

inline Cap min(const Cap& a, const Cap& b) { return b < a ? b : a; }

struct Term {
  Rational e;
  Elt c;
};

// Sum of c_e T^e over a finite set of rational exponents below the cap, with
// coefficients in a finite field. The value is known modulo T^cap. Terms are
// sorted by exponent and never carry a zero coefficient.
class HahnSeries {
 public:
  // placeholder without a field; only assignment is meaningful
  HahnSeries() = default;
  explicit HahnSeries(FieldPtr k, Cap cap = Cap::infinite());
  static HahnSeries monomial(FieldPtr k, Elt c, const Rational& e, Cap cap = Cap::infinite());
  static HahnSeries constant(FieldPtr k, Elt c) { return monomial(std::move(k), c, 0); }
  // accepts unsorted terms with repeats; merges, drops zeros and terms >= cap
  static HahnSeries from_terms(FieldPtr k, std::vector<Term> terms, Cap cap);

  const FieldPtr& field() const { return k_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Cap& cap() const { return cap_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // least exponent; nullopt is the marker "at least the cap"
  std::optional<Rational> valuation() const;
  // least exponent, or the cap when no term survives
  Cap val_or_cap() const;
  Elt coeff(const Rational& e) const;
  const Term& leading() const;

  HahnSeries truncate(const Cap& c) const;
  HahnSeries operator-() const;
  friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
  HahnSeries& operator+=(const HahnSeries& b) { return *this = *this + b; }
  HahnSeries& operator-=(const HahnSeries& b) { return *this = *this - b; }
  HahnSeries& operator*=(const HahnSeries& b) { return *this = *this * b; }
  // exact scalar and monomial multiplication
  HahnSeries scale(Elt c) const;
  HahnSeries shift(const Rational& e) const;
  // x -> x^{p^j} on the series (exponents times p^j, coefficients c^{p^j});
  // j < 0 takes the unique p^{-j}-th root
  HahnSeries pfrob(int64_t j) const;

  // same terms and same cap
  bool identical(const HahnSeries& o) const;
  nlohmann::json to_json() const;
  static HahnSeries from_json(FieldPtr k, const nlohmann::json& j);
  std::string str(size_t max_terms = 8) const;

 private:
  FieldPtr k_;
  std::vector<Term> terms_;
  Cap cap_;
};

// q must be a power of the characteristic
HahnSeries qth_power(const HahnSeries& a, uint64_t q, int64_t times = 1);
HahnSeries qth_root(const HahnSeries& a, uint64_t q, int64_t times = 1);

// (1 + u)^r for v(u) > 0 and rational r. With r = p^j r' and r' a p-adic
// unit, digits of r' give prod (1 + u^{p^i})^{d_i}; the factor p^j is a final
// Frobenius or root, which scales the precision by p^j.
HahnSeries binomial_power(const HahnSeries& u, const Rational& r, const Cap& target = Cap());

// a^r for a = c T^e (1 + u). The coefficient root is the least discrete-log
// solution x of den' x = log c mod (Q - 1), den' the prime-to-p part of the
// denominator; throws if c has no such root.
HahnSeries rational_power(const HahnSeries& a, const Rational& r, const Cap& target = Cap());
HahnSeries inv(const HahnSeries& a, const Cap& target = Cap());
HahnSeries div(const HahnSeries& a, const HahnSeries& b, const Cap& target = Cap());

// v(f - g) >= a, or > a if strict; a must lie below both caps
bool congruence_check(const HahnSeries& f, const HahnSeries& g, const Rational& a, bool strict);

enum class SeriesOp { kAdd, kMul, kNeg, kInv, kQthRoot, kQthPower, kRationalPower };
// Dispatcher over the arithmetic operations. b is ignored by unary ops, q is
// used by the q-th power maps, r by rational_power.
HahnSeries series_arith(const HahnSeries& a, const HahnSeries& b, SeriesOp op, uint64_t q = 0,
                        const Rational& r = Rational(1));

}  // namespace epi

#endif  // EPI_HAHN_SERIES_HPP_
