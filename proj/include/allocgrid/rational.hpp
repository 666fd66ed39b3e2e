#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "allocgrid/bigint.hpp"

namespace allocgrid {

// Exact rational number.
//
// Invariants: denominator > 0 and gcd(|numerator|, denominator) == 1 after
// every operation; zero is 0/1. Equality and ordering are exact, which is
// what makes tie detection between recovery probabilities trustworthy.
//
// Text format (accepted by parse/try_parse and used by str()):
//   "a/b"  integers with b > 0 after sign normalization, e.g. "-7/3"
//   "a.b"  decimal, parsed as an exact fraction, e.g. "0.6" == 3/5
//   "a"    plain integer
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : num_(v), den_(1) {}        // NOLINT
  Rational(BigInt v) : num_(std::move(v)), den_(1) {}  // NOLINT

  Rational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    normalize();
  }

  static Rational parse(std::string_view text) {
    auto r = try_parse(text);
    if (!r) {
      throw std::invalid_argument("Rational: malformed value: \"" +
                                  std::string(text) + "\"");
    }
    return *r;
  }

  static std::optional<Rational> try_parse(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
      text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
      text.remove_suffix(1);
    }
    if (text.empty()) return std::nullopt;

    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
      BigInt num, den;
      if (!BigInt::try_parse(text.substr(0, slash), num)) return std::nullopt;
      if (!BigInt::try_parse(text.substr(slash + 1), den)) return std::nullopt;
      if (den.is_zero()) return std::nullopt;
      return Rational(std::move(num), std::move(den));
    }

    std::size_t dot = text.find('.');
    if (dot == std::string_view::npos) {
      BigInt num;
      if (!BigInt::try_parse(text, num)) return std::nullopt;
      return Rational(std::move(num));
    }

    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) {
      negative = head.front() == '-';
      head.remove_prefix(1);
    }
    if (head.empty() && frac.empty()) return std::nullopt;
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    BigInt int_part(0);
    if (!head.empty() && !BigInt::try_parse(head, int_part)) {
      return std::nullopt;
    }
    if (int_part.is_negative()) return std::nullopt;  // sign handled above
    BigInt frac_part(0);
    if (!frac.empty() && !BigInt::try_parse(frac, frac_part)) {
      return std::nullopt;
    }
    BigInt scale = BigInt::pow(BigInt(10), frac.size());
    BigInt num = int_part * scale + frac_part;
    if (negative) num = -num;
    return Rational(std::move(num), std::move(scale));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_negative() const { return num_.is_negative(); }
  bool is_integer() const { return den_ == BigInt(1); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
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
    return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  // Largest integer <= value.
  BigInt floor() const {
    auto [q, r] = BigInt::divmod(num_, den_);
    if (!r.is_zero() && num_.is_negative()) q -= BigInt(1);
    return q;
  }

  // Smallest integer >= value.
  BigInt ceil() const {
    auto [q, r] = BigInt::divmod(num_, den_);
    if (!r.is_zero() && !num_.is_negative()) q += BigInt(1);
    return q;
  }

  Rational pow(unsigned long long exponent) const {
    return Rational(BigInt::pow(num_, exponent), BigInt::pow(den_, exponent));
  }

  // Closest double; exact values that exceed double range become +/-inf.
  double to_double() const {
    if (num_.is_zero()) return 0.0;
    BigInt n = num_.abs();
    const std::ptrdiff_t diff = static_cast<std::ptrdiff_t>(n.bit_length()) -
                                static_cast<std::ptrdiff_t>(den_.bit_length());
    // Scale so the integer quotient carries ~63 significant bits, then
    // place the binary point back with ldexp.
    const std::ptrdiff_t shift = 63 - diff;
    BigInt q;
    if (shift >= 0) {
      q = (n << static_cast<std::size_t>(shift)) / den_;
    } else {
      q = n / (den_ << static_cast<std::size_t>(-shift));
    }
    double v = std::ldexp(q.to_double(), static_cast<int>(-shift));
    return num_.is_negative() ? -v : v;
  }

  std::string str() const {
    if (den_ == BigInt(1)) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  BigInt num_;
  BigInt den_;

  void normalize() {
    if (den_.is_zero()) {
      throw std::invalid_argument("Rational: zero denominator");
    }
    if (den_.is_negative()) {
      den_ = -den_;
      num_ = -num_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ /= g;
      den_ /= g;
    }
  }
};

}  // namespace allocgrid
