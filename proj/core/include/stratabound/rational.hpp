#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace stratabound {

// Exact rational number on 64-bit numerator/denominator with 128-bit
// intermediates. Probabilities, statistics and bounds are carried in this
// form so that distribution identities can be checked as true equalities;
// conversion to double happens only at report boundaries.
//
// Invariants: denominator > 0, gcd(|num|, den) == 1.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT implicit
  Rational(int value) : num_(value), den_(1) {}        // NOLINT implicit

  Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    __int128 n = num;
    __int128 d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    assign_reduced(n, d);
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Parses a plain decimal like "-0.031" or "2" into the exact fraction it
  // denotes (base-10, not the nearest binary double).
  static Rational from_decimal(const std::string& text) {
    if (text.empty()) throw std::domain_error("Rational: empty decimal");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
    }
    __int128 num = 0;
    __int128 den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c == '.') {
        if (seen_dot) throw std::domain_error("Rational: bad decimal");
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9') throw std::domain_error("Rational: bad decimal");
      seen_digit = true;
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      if (den > kMax || num > kMax) {
        throw std::overflow_error("Rational: decimal too long");
      }
    }
    if (!seen_digit) throw std::domain_error("Rational: bad decimal");
    Rational r;
    r.assign_reduced(negative ? -num : num, den);
    return r;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign_reduced(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    r.assign_reduced(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign_reduced(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    __int128 n = i128(a.num_) * b.den_;
    __int128 d = i128(a.den_) * b.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    Rational r;
    r.assign_reduced(n, d);
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static constexpr __int128 kMax = INT64_MAX;

  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign_reduced(__int128 n, __int128 d) {
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > kMax || n < -kMax || d > kMax) {
      throw std::overflow_error("Rational: 64-bit overflow");
    }
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  long long num_;
  long long den_;
};

}  // namespace stratabound
