#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace allocgrid {

// Arbitrary-precision signed integer.
//
// Sign-magnitude representation over base-2^32 limbs, little-endian, no
// leading zero limbs (zero is the empty magnitude). Division truncates
// toward zero, like built-in integers. Sizes in this project stay in the
// hundreds-of-bits range, so schoolbook multiplication and Knuth division
// are plenty.
class BigInt {
 public:
  BigInt() = default;

  BigInt(long long v) { assign_signed(v); }  // NOLINT(google-explicit-constructor)
  BigInt(int v) : BigInt(static_cast<long long>(v)) {}
  BigInt(unsigned long long v) { assign_unsigned(v); }  // NOLINT
  BigInt(unsigned int v) : BigInt(static_cast<unsigned long long>(v)) {}

  static BigInt from_string(std::string_view text) {
    BigInt out;
    if (!try_parse(text, out)) {
      throw std::invalid_argument("BigInt: malformed integer literal: \"" +
                                  std::string(text) + "\"");
    }
    return out;
  }

  static bool try_parse(std::string_view text, BigInt& out) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) return false;
    BigInt acc;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') return false;
      acc.mul_small_inplace(10);
      acc.add_small_inplace(static_cast<std::uint32_t>(c - '0'));
    }
    if (negative && !acc.is_zero()) acc.negative_ = true;
    out = std::move(acc);
    return true;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  // Number of bits in the magnitude; 0 for zero.
  std::size_t bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * limbs_.size() -
           static_cast<std::size_t>(std::countl_zero(limbs_.back()));
  }

  BigInt operator-() const {
    BigInt out = *this;
    if (!out.is_zero()) out.negative_ = !out.negative_;
    return out;
  }

  BigInt abs() const {
    BigInt out = *this;
    out.negative_ = false;
    return out;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
      BigInt out;
      out.limbs_ = add_mag(a.limbs_, b.limbs_);
      out.negative_ = a.negative_ && !out.limbs_.empty();
      return out;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    BigInt out;
    if (c > 0) {
      out.limbs_ = sub_mag(a.limbs_, b.limbs_);
      out.negative_ = a.negative_;
    } else {
      out.limbs_ = sub_mag(b.limbs_, a.limbs_);
      out.negative_ = b.negative_;
    }
    return out;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt out;
    out.limbs_ = mul_mag(a.limbs_, b.limbs_);
    out.negative_ = a.negative_ != b.negative_;
    return out;
  }

  // Truncating division; quotient rounds toward zero, remainder keeps the
  // dividend's sign. Throws on division by zero.
  static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    auto [qm, rm] = divmod_mag(a.limbs_, b.limbs_);
    BigInt q, r;
    q.limbs_ = std::move(qm);
    r.limbs_ = std::move(rm);
    q.negative_ = (a.negative_ != b.negative_) && !q.limbs_.empty();
    r.negative_ = a.negative_ && !r.limbs_.empty();
    return {std::move(q), std::move(r)};
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    return divmod(a, b).first;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    return divmod(a, b).second;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }
  BigInt& operator/=(const BigInt& o) { return *this = *this / o; }
  BigInt& operator%=(const BigInt& o) { return *this = *this % o; }

  BigInt operator<<(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    BigInt out;
    out.negative_ = negative_;
    std::size_t limb_shift = bits / 32;
    unsigned bit_shift = static_cast<unsigned>(bits % 32);
    out.limbs_.assign(limb_shift, 0);
    if (bit_shift == 0) {
      out.limbs_.insert(out.limbs_.end(), limbs_.begin(), limbs_.end());
    } else {
      std::uint32_t carry = 0;
      for (std::uint32_t limb : limbs_) {
        out.limbs_.push_back((limb << bit_shift) | carry);
        carry = limb >> (32 - bit_shift);
      }
      if (carry != 0) out.limbs_.push_back(carry);
    }
    return out;
  }

  BigInt operator>>(std::size_t bits) const {
    // Magnitude shift (floor for non-negative values; used on magnitudes).
    std::size_t limb_shift = bits / 32;
    if (limb_shift >= limbs_.size()) return BigInt();
    unsigned bit_shift = static_cast<unsigned>(bits % 32);
    BigInt out;
    out.limbs_.assign(limbs_.begin() + static_cast<std::ptrdiff_t>(limb_shift),
                      limbs_.end());
    if (bit_shift != 0) {
      std::uint32_t carry = 0;
      for (std::size_t i = out.limbs_.size(); i-- > 0;) {
        std::uint32_t limb = out.limbs_[i];
        out.limbs_[i] = (limb >> bit_shift) | carry;
        carry = limb << (32 - bit_shift);
      }
      trim(out.limbs_);
    }
    out.negative_ = negative_ && !out.limbs_.empty();
    return out;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    return compare(a, b) < 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) {
    return compare(a, b) > 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) {
    return compare(a, b) <= 0;
  }
  friend bool operator>=(const BigInt& a, const BigInt& b) {
    return compare(a, b) >= 0;
  }

  static int compare(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.negative_ ? -c : c;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    // Fast path: both fit in 64 bits.
    if (a.limbs_.size() <= 2 && b.limbs_.size() <= 2) {
      std::uint64_t x = a.to_uint64_mag();
      std::uint64_t y = b.to_uint64_mag();
      while (y != 0) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return BigInt(static_cast<unsigned long long>(x));
    }
    while (!b.is_zero()) {
      BigInt r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  static BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt g = gcd(a, b);
    return (a.abs() / g) * b.abs();
  }

  static BigInt pow(BigInt base, unsigned long long exponent) {
    BigInt result(1);
    while (exponent != 0) {
      if (exponent & 1u) result *= base;
      exponent >>= 1u;
      if (exponent != 0) base *= base;
    }
    return result;
  }

  bool fits_int64() const {
    if (limbs_.size() < 2) return true;
    if (limbs_.size() > 2) return false;
    std::uint64_t mag = to_uint64_mag();
    if (negative_) return mag <= 0x8000000000000000ull;
    return mag <= 0x7FFFFFFFFFFFFFFFull;
  }

  bool fits_uint64() const { return !negative_ && limbs_.size() <= 2; }

  std::uint64_t to_uint64() const {
    if (!fits_uint64()) {
      throw std::overflow_error(
          "BigInt: value does not fit in an unsigned 64-bit integer");
    }
    return to_uint64_mag();
  }

  long long to_int64() const {
    if (!fits_int64()) {
      throw std::overflow_error("BigInt: value does not fit in 64 bits");
    }
    std::uint64_t mag = to_uint64_mag();
    if (negative_) return -static_cast<long long>(mag - 1) - 1;
    return static_cast<long long>(mag);
  }

  // Closest double to the exact value; overflows to +/-inf.
  double to_double() const {
    if (is_zero()) return 0.0;
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      v = v * 4294967296.0 + static_cast<double>(limbs_[i]);
    }
    return negative_ ? -v : v;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
        rem = cur % 1000000000ull;
      }
      trim(work);
      char chunk[10];
      for (int d = 0; d < 9; ++d) {
        chunk[d] = static_cast<char>('0' + rem % 10);
        rem /= 10;
      }
      int take = 9;
      // Most-significant chunk drops leading zeros.
      if (work.empty()) {
        while (take > 1 && chunk[take - 1] == '0') --take;
      }
      digits.append(chunk, chunk + take);
    }
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& v);

 private:
  std::vector<std::uint32_t> limbs_;
  bool negative_ = false;

  void assign_signed(long long v) {
    if (v < 0) {
      negative_ = true;
      assign_mag(static_cast<std::uint64_t>(-(v + 1)) + 1);
    } else {
      assign_mag(static_cast<std::uint64_t>(v));
    }
  }

  void assign_unsigned(unsigned long long v) { assign_mag(v); }

  void assign_mag(std::uint64_t v) {
    limbs_.clear();
    if (v != 0) limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32 != 0) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }

  std::uint64_t to_uint64_mag() const {
    std::uint64_t v = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return v;
  }

  void mul_small_inplace(std::uint32_t f) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    if (f == 0) limbs_.clear();
  }

  void add_small_inplace(std::uint32_t v) {
    std::uint64_t carry = v;
    for (std::size_t i = 0; carry != 0 && i < limbs_.size(); ++i) {
      std::uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  static void trim(std::vector<std::uint32_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<std::uint32_t> out;
    out.reserve(hi.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
      std::uint64_t cur = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
      out.push_back(static_cast<std::uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry != 0) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
  }

  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      if (cur < 0) {
        cur += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      out.push_back(static_cast<std::uint32_t>(cur));
    }
    trim(out);
    return out;
  }

  static std::vector<std::uint32_t> mul_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t cur = out[i + j] +
                            static_cast<std::uint64_t>(a[i]) * b[j] + carry;
        out[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      std::size_t k = i + b.size();
      while (carry != 0) {
        std::uint64_t cur = out[k] + carry;
        out[k] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    trim(out);
    return out;
  }

  // Knuth algorithm D on magnitudes. Returns {quotient, remainder}.
  static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
  divmod_mag(const std::vector<std::uint32_t>& u,
             const std::vector<std::uint32_t>& v) {
    if (cmp_mag(u, v) < 0) return {{}, u};
    if (v.size() == 1) {
      std::vector<std::uint32_t> q(u.size());
      std::uint64_t rem = 0;
      for (std::size_t i = u.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | u[i];
        q[i] = static_cast<std::uint32_t>(cur / v[0]);
        rem = cur % v[0];
      }
      trim(q);
      std::vector<std::uint32_t> r;
      if (rem != 0) r.push_back(static_cast<std::uint32_t>(rem));
      return {std::move(q), std::move(r)};
    }

    const unsigned shift = static_cast<unsigned>(std::countl_zero(v.back()));
    std::vector<std::uint32_t> vn = shl_mag(v, shift);
    std::vector<std::uint32_t> un = shl_mag(u, shift);
    un.push_back(0);  // room for the top partial remainder

    const std::size_t n = vn.size();
    const std::size_t m = un.size() - n - 1;
    std::vector<std::uint32_t> q(m + 1, 0);
    const std::uint64_t base = 1ull << 32;

    for (std::size_t j = m + 1; j-- > 0;) {
      std::uint64_t top =
          (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
      std::uint64_t qhat = top / vn[n - 1];
      std::uint64_t rhat = top % vn[n - 1];
      while (qhat >= base ||
             qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
        --qhat;
        rhat += vn[n - 1];
        if (rhat >= base) break;
      }

      // Multiply-subtract qhat * vn from un[j .. j+n].
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t prod = qhat * vn[i] + carry;
        carry = prod >> 32;
        std::int64_t diff = static_cast<std::int64_t>(un[i + j]) -
                            static_cast<std::int64_t>(prod & 0xFFFFFFFFull) -
                            borrow;
        if (diff < 0) {
          diff += static_cast<std::int64_t>(base);
          borrow = 1;
        } else {
          borrow = 0;
        }
        un[i + j] = static_cast<std::uint32_t>(diff);
      }
      std::int64_t diff = static_cast<std::int64_t>(un[j + n]) -
                          static_cast<std::int64_t>(carry) - borrow;
      if (diff < 0) {
        // qhat was one too large; add vn back.
        diff += static_cast<std::int64_t>(base);
        --qhat;
        std::uint64_t carry2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t cur = static_cast<std::uint64_t>(un[i + j]) + vn[i] +
                              carry2;
          un[i + j] = static_cast<std::uint32_t>(cur);
          carry2 = cur >> 32;
        }
        diff += static_cast<std::int64_t>(carry2);
        diff &= static_cast<std::int64_t>(base - 1);
      }
      un[j + n] = static_cast<std::uint32_t>(diff);
      q[j] = static_cast<std::uint32_t>(qhat);
    }

    trim(q);
    un.resize(n);
    std::vector<std::uint32_t> r = shr_mag(un, shift);
    return {std::move(q), std::move(r)};
  }

  static std::vector<std::uint32_t> shl_mag(std::vector<std::uint32_t> v,
                                            unsigned bits) {
    if (bits == 0 || v.empty()) return v;
    std::uint32_t carry = 0;
    for (auto& limb : v) {
      std::uint32_t next = limb >> (32 - bits);
      limb = (limb << bits) | carry;
      carry = next;
    }
    if (carry != 0) v.push_back(carry);
    return v;
  }

  static std::vector<std::uint32_t> shr_mag(std::vector<std::uint32_t> v,
                                            unsigned bits) {
    if (bits == 0) {
      trim(v);
      return v;
    }
    std::uint32_t carry = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
      std::uint32_t limb = v[i];
      v[i] = (limb >> bits) | carry;
      carry = limb << (32 - bits);
    }
    trim(v);
    return v;
  }
};

inline std::ostream& operator<<(std::ostream& os, const BigInt& v) {
  return os << v.str();
}

}  // namespace allocgrid
