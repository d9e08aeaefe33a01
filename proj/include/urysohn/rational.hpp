// Copyright 2026 The Urysohn Authors
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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "urysohn/error.hpp"

namespace ury {

/// Exact rational number backed by GMP. Always kept in lowest terms with a
/// positive denominator. Text form is "p/q", or "p" for integers.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::kOutOfRange, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p", "-p", "p/q" with decimal digits only. No decimals, no
  /// whitespace.
  static Rational parse(std::string_view text) {
    auto fail = [&](const char* why) {
      return Error(ErrorKind::kParseError,
                   "bad rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) throw fail("empty");
    std::size_t i = 0;
    if (text[0] == '-') ++i;
    std::size_t digits = 0, slash = std::string_view::npos;
    for (std::size_t j = i; j < text.size(); ++j) {
      char c = text[j];
      if (c >= '0' && c <= '9') {
        ++digits;
      } else if (c == '/' && slash == std::string_view::npos && digits > 0) {
        slash = j;
        digits = 0;
      } else {
        throw fail("unexpected character");
      }
    }
    if (digits == 0) throw fail("missing digits");
    std::string num(text.substr(0, slash == std::string_view::npos ? text.size() : slash));
    mpq_class q;
    if (slash == std::string_view::npos) {
      q = mpq_class(mpz_class(num, 10));
    } else {
      mpz_class den(std::string(text.substr(slash + 1)), 10);
      if (den == 0) throw fail("zero denominator");
      q = mpq_class(mpz_class(num, 10), den);
    }
    return Rational(std::move(q));
  }

  std::string str() const { return q_.get_str(); }

  const mpq_class& get() const { return q_; }
  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }
  /// Denominator as an integer; throws if it does not fit.
  std::uint64_t denominator_u64() const {
    if (!q_.get_den().fits_ulong_p())
      throw Error(ErrorKind::kOutOfRange, "denominator too large");
    return q_.get_den().get_ui();
  }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::kOutOfRange, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Smallest integer >= r.
inline long ceil_to_long(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get().get_num_mpz_t(), r.get().get_den_mpz_t());
  if (!q.fits_slong_p()) throw Error(ErrorKind::kOutOfRange, "ceil overflow");
  return q.get_si();
}

inline const Rational& one() {
  static const Rational k(1);
  return k;
}

}  // namespace ury
