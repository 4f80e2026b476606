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

#ifndef EPI_RATIONAL_HPP_
#define EPI_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace epi {

// Exact rational with 64-bit parts. Every operation goes through 128-bit
// intermediates and throws std::overflow_error instead of wrapping, which
// boost::rational does not do.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(int64_t n, int64_t d) { set(n, d); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from128(__int128(a.num_) + b.num_, a.den_);
    int64_t g = std::gcd(a.den_, b.den_);
    __int128 n = __int128(a.num_) * (b.den_ / g) + __int128(b.num_) * (a.den_ / g);
    __int128 d = __int128(a.den_ / g) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, 0); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    int64_t g1 = std::gcd(a.num_, b.den_);
    int64_t g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return from128(__int128(a.num_ / g1) * (b.num_ / g2),
                   __int128(a.den_ / g2) * (b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // floor and ceiling as integers
  int64_t floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  int64_t ceil() const { return -(-*this).floor(); }

  double to_double() const { return double(num_) / double(den_); }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  Rational(int64_t n, int64_t d, int) : num_(n), den_(d) {}

  void set(int64_t n, int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    *this = from128(n, d);
  }
  static Rational from128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax)
      throw std::overflow_error("Rational: 64-bit overflow");
    return Rational(int64_t(n), int64_t(d), 0);
  }

  int64_t num_;
  int64_t den_;  // > 0, gcd(num_, den_) = 1
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// integer power with overflow checking
inline Rational rpow_int(const Rational& base, int64_t e) {
  Rational r(1), b = e < 0 ? Rational(1) / base : base;
  uint64_t k = e < 0 ? uint64_t(-e) : uint64_t(e);
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

}  // namespace epi

#endif  // EPI_RATIONAL_HPP_
