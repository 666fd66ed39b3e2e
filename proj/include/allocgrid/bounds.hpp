#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "allocgrid/allocation.hpp"
#include "allocgrid/binomial.hpp"
#include "allocgrid/rational.hpp"

namespace allocgrid {

// Exact upper bound on the recovery probability of ANY feasible allocation
// (symmetric or not), from counting how many r-subsets can reach a total of
// 1 under the budget:
//
//   sum_{r=0}^{n} min(r T / n, 1) P[B(n, p) = r]
//
// Accumulated as one integer numerator over the common denominator
// n * den(T) * den(p)^n.
inline Rational recovery_upper_bound(const ProblemInstance& instance) {
  const long long n = instance.n;
  const BigInt& a = instance.p.num();
  const BigInt& b = instance.p.den();
  const BigInt miss = b - a;
  const BigInt& t_num = instance.T.num();
  const BigInt& t_den = instance.T.den();

  // min(rT/n, 1) = rT/n exactly when r < ceil(n/T), and 1 from there on.
  const long long cutoff =
      (Rational(n) / instance.T).ceil().to_int64();

  const BigInt whole = BigInt(n) * t_den;  // scale factor for the "1" terms
  BigInt numerator(0);
  for (long long r = 0; r <= n; ++r) {
    BigInt pmf_num = binomial_coefficient(n, r) *
                     BigInt::pow(a, static_cast<unsigned long long>(r)) *
                     BigInt::pow(miss, static_cast<unsigned long long>(n - r));
    if (r < cutoff) {
      numerator += BigInt(r) * t_num * pmf_num;
    } else {
      numerator += whole * pmf_num;
    }
  }
  BigInt denominator =
      whole * BigInt::pow(b, static_cast<unsigned long long>(n));
  return Rational(std::move(numerator), std::move(denominator));
}

// Certified upper bound on how far maximal spreading (all n nodes hold T/n)
// falls below the unknown optimum:
//
//   gap(n, p, T) = p T * P[B(n-1, p) <= ceil(n/T) - 2]
//
// Zero when ceil(n/T) <= 1, i.e. when a single accessed node already
// suffices.
inline Rational max_spread_gap(const ProblemInstance& instance) {
  const long long cutoff =
      (Rational(instance.n) / instance.T).ceil().to_int64();
  if (cutoff <= 1) return Rational(0);
  Rational tail =
      binomial_tail_le(BinomialSpec(instance.n - 1, instance.p), cutoff - 2);
  return instance.p * instance.T * tail;
}

// Floating-point envelope over the gap, valid only when pT > 1:
//
//   p T * exp( -((n-1) p / 2) * (1 - 1/(pT))^2 )
//
// May exceed 1 (vacuous but still an upper bound). This is the one
// float-valued quantity in the core; standard double evaluation, no
// exactness claim.
inline double chernoff_gap_envelope(const ProblemInstance& instance) {
  Rational pt = instance.p * instance.T;
  if (pt <= Rational(1)) {
    throw std::domain_error(
        "chernoff_gap_envelope: requires pT > 1; the envelope does not "
        "apply in this regime");
  }
  const double pt_d = pt.to_double();
  const double p_d = instance.p.to_double();
  const double slack = 1.0 - 1.0 / pt_d;
  return pt_d * std::exp(-0.5 * (instance.n - 1) * p_d * slack * slack);
}

// min(pT, 1): no allocation can recover with probability above pT
// (informative only when pT < 1).
inline Rational markov_cap(const Rational& p, const Rational& T) {
  Rational pt = p * T;
  return pt >= Rational(1) ? Rational(1) : pt;
}

// Aggregated bounds for one instance. Invariants:
//   upper_bound - max_spread_ps == gap   (exactly)
//   0 <= gap, upper_bound <= 1
//   chernoff_envelope engaged iff pT > 1, and then gap <= envelope
struct BoundsReport {
  Rational upper_bound;
  Rational max_spread_gap;
  std::optional<double> chernoff_envelope;
  Rational markov_cap;
  Rational max_spread_ps;  // recovery probability at node_count = n
};

inline BoundsReport bounds_report(const ProblemInstance& instance) {
  BoundsReport report;
  report.upper_bound = recovery_upper_bound(instance);
  report.max_spread_gap = allocgrid::max_spread_gap(instance);
  report.markov_cap = allocgrid::markov_cap(instance.p, instance.T);
  report.max_spread_ps =
      symmetric_recovery_probability(instance.p, instance.T, instance.n);
  if (instance.p * instance.T > Rational(1)) {
    report.chernoff_envelope = chernoff_gap_envelope(instance);
  }
  return report;
}

}  // namespace allocgrid
