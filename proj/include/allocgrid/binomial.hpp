#pragma once

#include <stdexcept>

#include "allocgrid/bigint.hpp"
#include "allocgrid/rational.hpp"

namespace allocgrid {

// A binomial distribution with a fixed number of independent trials and an
// exact rational success probability in (0, 1).
struct BinomialSpec {
  long long trials;
  Rational success_prob;

  BinomialSpec(long long trials_, Rational success_prob_)
      : trials(trials_), success_prob(std::move(success_prob_)) {
    if (trials < 0) {
      throw std::invalid_argument("BinomialSpec: trials must be >= 0");
    }
    if (success_prob <= Rational(0) || success_prob >= Rational(1)) {
      throw std::invalid_argument(
          "BinomialSpec: success probability must lie strictly in (0, 1)");
    }
  }
};

// C(n, k), computed as a running product with exact division at each step
// (the partial product C(n-k+i, i) is always an integer). Avoids the huge
// factorial intermediates. Returns 0 when k < 0 or k > n.
inline BigInt binomial_coefficient(long long n, long long k) {
  if (n < 0) {
    throw std::invalid_argument("binomial_coefficient: n must be >= 0");
  }
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt result(1);
  for (long long i = 1; i <= k; ++i) {
    result *= BigInt(n - k + i);
    result /= BigInt(i);
  }
  return result;
}

// P[B(n, p) = k], exact. Zero outside [0, n].
inline Rational binomial_pmf(const BinomialSpec& spec, long long k) {
  if (k < 0 || k > spec.trials) return Rational(0);
  const BigInt& a = spec.success_prob.num();
  const BigInt& b = spec.success_prob.den();
  BigInt numerator = binomial_coefficient(spec.trials, k) *
                     BigInt::pow(a, static_cast<unsigned long long>(k)) *
                     BigInt::pow(b - a,
                                 static_cast<unsigned long long>(spec.trials - k));
  return Rational(std::move(numerator),
                  BigInt::pow(b, static_cast<unsigned long long>(spec.trials)));
}

// P[B(n, p) >= k], exact. 1 when k <= 0, 0 when k > n. Accumulates the
// integer numerator over the common denominator b^n so the fraction is
// reduced just once.
inline Rational binomial_tail_ge(const BinomialSpec& spec, long long k) {
  if (k <= 0) return Rational(1);
  if (k > spec.trials) return Rational(0);
  const BigInt& a = spec.success_prob.num();
  const BigInt& b = spec.success_prob.den();
  const BigInt miss = b - a;
  BigInt numerator(0);
  BigInt term = BigInt::pow(a, static_cast<unsigned long long>(k)) *
                BigInt::pow(miss,
                            static_cast<unsigned long long>(spec.trials - k));
  BigInt coeff = binomial_coefficient(spec.trials, k);
  for (long long j = k; j <= spec.trials; ++j) {
    numerator += coeff * term;
    if (j == spec.trials) break;
    // Advance C(n, j) -> C(n, j+1) and a^j m^(n-j) -> a^(j+1) m^(n-j-1).
    coeff *= BigInt(spec.trials - j);
    coeff /= BigInt(j + 1);
    term *= a;
    term /= miss;
  }
  return Rational(std::move(numerator),
                  BigInt::pow(b, static_cast<unsigned long long>(spec.trials)));
}

// P[B(n, p) <= k], exact; complement of the upper tail.
inline Rational binomial_tail_le(const BinomialSpec& spec, long long k) {
  return Rational(1) - binomial_tail_ge(spec, k + 1);
}

}  // namespace allocgrid
