#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "allocgrid/binomial.hpp"
#include "allocgrid/rational.hpp"

namespace allocgrid {

// One problem instance: n storage nodes, each accessed independently with
// probability p, and a total storage budget T (in units of the object size).
struct ProblemInstance {
  int n;
  Rational p;
  Rational T;

  ProblemInstance(int n_, Rational p_, Rational T_)
      : n(n_), p(std::move(p_)), T(std::move(T_)) {
    if (n < 2) {
      throw std::invalid_argument("ProblemInstance: n must be >= 2");
    }
    if (p <= Rational(0) || p >= Rational(1)) {
      throw std::invalid_argument(
          "ProblemInstance: p must lie strictly in (0, 1)");
    }
    if (T < Rational(1) || T > Rational(n)) {
      throw std::invalid_argument("ProblemInstance: T must lie in [1, n]");
    }
  }
};

// A storage allocation: nonnegative amounts per node, multiset semantics
// (two allocations that differ only by ordering are the same allocation).
// Trailing zero nodes may be omitted when the instance provides n.
class Allocation {
 public:
  Allocation() = default;

  explicit Allocation(std::vector<Rational> amounts)
      : amounts_(std::move(amounts)) {
    for (const Rational& x : amounts_) {
      if (x.is_negative()) {
        throw std::invalid_argument("Allocation: amounts must be >= 0");
      }
    }
  }

  // Comma-separated rationals, e.g. "2/3,2/3,1/3,1/3,1/3".
  static Allocation parse(std::string_view text) {
    std::vector<Rational> amounts;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      std::string_view piece = comma == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, comma - start);
      amounts.push_back(Rational::parse(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Allocation(std::move(amounts));
  }

  const std::vector<Rational>& amounts() const { return amounts_; }
  std::size_t size() const { return amounts_.size(); }

  Rational total() const {
    Rational sum(0);
    for (const Rational& x : amounts_) sum += x;
    return sum;
  }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    std::vector<Rational> lhs = a.amounts_;
    std::vector<Rational> rhs = b.amounts_;
    auto strip = [](std::vector<Rational>& v) {
      v.erase(std::remove_if(v.begin(), v.end(),
                             [](const Rational& x) { return x.is_zero(); }),
              v.end());
      std::sort(v.begin(), v.end());
    };
    strip(lhs);
    strip(rhs);
    return lhs == rhs;
  }
  friend bool operator!=(const Allocation& a, const Allocation& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < amounts_.size(); ++i) {
      if (i != 0) out += ",";
      out += amounts_[i].str();
    }
    return out;
  }

 private:
  std::vector<Rational> amounts_;
};

// The symmetric allocation for n nodes that splits budget T evenly over
// node_count nonempty nodes.
struct SymmetricSpec {
  int n;
  Rational T;
  int node_count;

  SymmetricSpec(int n_, Rational T_, int node_count_)
      : n(n_), T(std::move(T_)), node_count(node_count_) {
    if (node_count < 1 || node_count > n) {
      throw std::invalid_argument(
          "SymmetricSpec: node count must lie in [1, n]");
    }
  }
};

inline Allocation expand_symmetric(const SymmetricSpec& spec) {
  std::vector<Rational> amounts;
  amounts.reserve(static_cast<std::size_t>(spec.n));
  Rational share = spec.T / Rational(spec.node_count);
  for (int i = 0; i < spec.node_count; ++i) amounts.push_back(share);
  for (int i = spec.node_count; i < spec.n; ++i) amounts.push_back(Rational(0));
  return Allocation(std::move(amounts));
}

// Evaluation refuses common denominators beyond this many subset-sum states
// rather than silently degrading to floating point.
inline constexpr long long kMaxCommonDenominator = 10'000'000;

namespace detail {

struct ScaledAllocation {
  long long denom = 1;           // common denominator D; target sum is D
  std::vector<long long> units;  // nonzero amounts in units of 1/D, clamped
};

// Validates the allocation against the instance and rescales the amounts to
// a common denominator. Amounts above 1 are clamped to the target (a node
// holding >= 1 already suffices on its own), which keeps the state space
// independent of oversized entries.
inline ScaledAllocation scale_to_units(const ProblemInstance& instance,
                                       const Allocation& alloc) {
  if (alloc.size() > static_cast<std::size_t>(instance.n)) {
    throw std::invalid_argument(
        "Allocation lists more amounts than the instance has nodes");
  }
  if (alloc.total() > instance.T) {
    throw std::invalid_argument("Allocation exceeds the storage budget T");
  }
  BigInt denom_big(1);
  for (const Rational& x : alloc.amounts()) {
    denom_big = BigInt::lcm(denom_big, x.den());
  }
  if (denom_big > BigInt(kMaxCommonDenominator)) {
    throw std::length_error(
        "Allocation denominators need a common denominator above " +
        BigInt(kMaxCommonDenominator).str() +
        "; refusing to evaluate inexactly");
  }
  ScaledAllocation out;
  out.denom = denom_big.to_int64();
  for (const Rational& x : alloc.amounts()) {
    if (x.is_zero()) continue;
    BigInt scaled = x.num() * (denom_big / x.den());
    long long u = scaled.fits_int64() ? scaled.to_int64() : out.denom;
    out.units.push_back(std::min(u, out.denom));
  }
  return out;
}

}  // namespace detail

// Exact probability that the amounts in the accessed nodes sum to at least
// 1, where every node is accessed independently with probability p.
//
// Runs a saturating subset-sum dynamic program over states {0..D} with D
// the common denominator of the amounts: each nonzero node moves mass at
// state s to min(s + units, D) with weight p and keeps it at s with weight
// 1 - p. Masses are kept as integer numerators over the implicit
// denominator den(p)^processed, so the fraction is reduced exactly once.
inline Rational recovery_probability_dp(const ProblemInstance& instance,
                                        const Allocation& alloc) {
  detail::ScaledAllocation scaled = detail::scale_to_units(instance, alloc);
  const long long target = scaled.denom;
  const BigInt& hit = instance.p.num();
  const BigInt miss = instance.p.den() - instance.p.num();
  const BigInt& full = instance.p.den();

  std::vector<BigInt> mass(static_cast<std::size_t>(target) + 1);
  mass[0] = BigInt(1);
  for (long long units : scaled.units) {
    // In place, descending: mass[s - units] is still the previous round's
    // value when state s is updated.
    BigInt spill(0);
    for (long long s = std::max<long long>(target - units, 0); s < target;
         ++s) {
      spill += mass[static_cast<std::size_t>(s)];
    }
    mass[static_cast<std::size_t>(target)] =
        full * mass[static_cast<std::size_t>(target)] + hit * spill;
    for (long long s = target - 1; s >= 0; --s) {
      BigInt next = miss * mass[static_cast<std::size_t>(s)];
      if (s >= units) {
        next += hit * mass[static_cast<std::size_t>(s - units)];
      }
      mass[static_cast<std::size_t>(s)] = std::move(next);
    }
  }
  return Rational(std::move(mass[static_cast<std::size_t>(target)]),
                  BigInt::pow(full, scaled.units.size()));
}

// Same value as recovery_probability_dp, by direct power-set enumeration
// over all n nodes. Exists purely as an independent cross-check; refuses
// n > 25.
inline Rational recovery_probability_enum(const ProblemInstance& instance,
                                          const Allocation& alloc) {
  if (instance.n > 25) {
    throw std::length_error(
        "recovery_probability_enum: n > 25 would enumerate 2^n subsets");
  }
  detail::ScaledAllocation scaled = detail::scale_to_units(instance, alloc);
  std::vector<long long> units(static_cast<std::size_t>(instance.n), 0);
  std::copy(scaled.units.begin(), scaled.units.end(), units.begin());

  std::vector<std::uint64_t> winners_by_size(
      static_cast<std::size_t>(instance.n) + 1, 0);
  const std::uint32_t subsets = 1u << instance.n;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    long long sum = 0;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
      sum += units[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    if (sum >= scaled.denom) {
      ++winners_by_size[static_cast<std::size_t>(std::popcount(mask))];
    }
  }

  const BigInt& a = instance.p.num();
  const BigInt& b = instance.p.den();
  const BigInt miss = b - a;
  BigInt numerator(0);
  for (int size = 0; size <= instance.n; ++size) {
    if (winners_by_size[static_cast<std::size_t>(size)] == 0) continue;
    numerator +=
        BigInt(static_cast<unsigned long long>(
            winners_by_size[static_cast<std::size_t>(size)])) *
        BigInt::pow(a, static_cast<unsigned long long>(size)) *
        BigInt::pow(miss, static_cast<unsigned long long>(instance.n - size));
  }
  return Rational(std::move(numerator),
                  BigInt::pow(b, static_cast<unsigned long long>(instance.n)));
}

// Recovery probability of the symmetric allocation with node_count equal
// nonempty nodes: the tail P[B(node_count, p) >= ceil(node_count / T)],
// with the threshold computed in exact rational arithmetic.
inline Rational symmetric_recovery_probability(const Rational& p,
                                               const Rational& T,
                                               long long node_count) {
  if (node_count < 1) {
    throw std::invalid_argument(
        "symmetric_recovery_probability: node count must be >= 1");
  }
  if (T < Rational(1)) {
    throw std::invalid_argument(
        "symmetric_recovery_probability: T must be >= 1");
  }
  long long threshold = (Rational(node_count) / T).ceil().to_int64();
  return binomial_tail_ge(BinomialSpec(node_count, p), threshold);
}

}  // namespace allocgrid
