#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "allocgrid/allocation.hpp"
#include "allocgrid/rational.hpp"

namespace allocgrid {

inline constexpr long long kDefaultEnumerationCap = 10'000'000;

// Quantum that makes the instance's own rationals representable:
// lcm(den(T), den(p)).
inline long long default_quantum(const ProblemInstance& instance) {
  BigInt q = BigInt::lcm(instance.T.den(), instance.p.den());
  if (!q.fits_int64()) {
    throw std::length_error("default_quantum: denominators too large");
  }
  return q.to_int64();
}

// Quantum whose 1/q grid contains every symmetric allocation of the
// instance (all shares T/m for m = 1..n) as well as p and T themselves.
// With this q the brute-force family is a superset of the full-budget
// symmetric allocations, so its best provably dominates the symmetric
// best. Grows roughly like den(T) * lcm(1..n); expect the enumeration cap
// to bite beyond small n.
inline long long covering_quantum(const ProblemInstance& instance) {
  BigInt q = BigInt::lcm(instance.T.den(), instance.p.den());
  for (int m = 2; m <= instance.n; ++m) {
    q = BigInt::lcm(q, (instance.T / Rational(m)).den());
    if (!q.fits_int64()) {
      throw std::length_error("covering_quantum: denominators too large");
    }
  }
  return q.to_int64();
}

// Result of the quantized brute-force search. Amounts of best_allocation
// are integer multiples of 1/q, non-increasing, summing to floor(qT)/q.
struct QuantizedSearchResult {
  Allocation best_allocation;
  Rational best_probability;
  long long quantum_denominator = 1;
  long long allocations_evaluated = 0;
};

namespace detail {

// Number of partitions of total into at most max_parts parts, saturated at
// cap + 1 (counted via the conjugate form: parts each of size <= max_parts).
inline long long count_partitions_capped(long long total, int max_parts,
                                         long long cap) {
  std::vector<long long> ways(static_cast<std::size_t>(total) + 1, 0);
  ways[0] = 1;
  const long long limit = std::min(cap, 1ll << 61) + 1;
  for (long long part = 1; part <= max_parts; ++part) {
    for (long long u = part; u <= total; ++u) {
      long long sum = ways[static_cast<std::size_t>(u)] +
                      ways[static_cast<std::size_t>(u - part)];
      ways[static_cast<std::size_t>(u)] = std::min(sum, limit);
    }
  }
  return ways[static_cast<std::size_t>(total)];
}

struct SearchBest {
  bool valid = false;
  Rational probability;
  std::vector<long long> units;
  long long evaluated = 0;

  void offer(const Rational& p, const std::vector<long long>& tuple) {
    ++evaluated;
    if (!valid || p > probability ||
        (p == probability && tuple < units)) {
      valid = true;
      probability = p;
      units = tuple;
    }
  }

  void merge(const SearchBest& other) {
    evaluated += other.evaluated;
    if (!other.valid) return;
    if (!valid || other.probability > probability ||
        (other.probability == probability && other.units < units)) {
      valid = true;
      probability = other.probability;
      units = other.units;
    }
  }
};

template <typename Eval>
void enumerate_tail(std::vector<long long>& tuple, std::size_t index,
                    long long remaining, long long max_part, std::size_t slots,
                    Eval&& eval) {
  if (index + 1 == slots) {
    tuple[index] = remaining;
    eval(tuple);
    return;
  }
  const std::size_t left = slots - index;
  // v >= ceil(remaining / left) keeps the tail completable without
  // breaking the non-increasing order.
  long long lo = (remaining + static_cast<long long>(left) - 1) /
                 static_cast<long long>(left);
  for (long long v = std::min(max_part, remaining); v >= lo; --v) {
    tuple[index] = v;
    enumerate_tail(tuple, index + 1, remaining - v, v, slots, eval);
  }
}

}  // namespace detail

// Exhaustive search over the 1/q-quantized allocations: all non-increasing
// integer unit tuples a_1 >= ... >= a_n >= 0 with sum floor(qT) (spending
// the full quantized budget loses nothing, by monotonicity). Each tuple is
// evaluated with recovery_probability_dp; ties resolve to the
// lexicographically smallest tuple. The enumeration is partitioned by the
// first element and the partitions evaluated concurrently, with a
// deterministic merge.
inline QuantizedSearchResult brute_force_best(
    const ProblemInstance& instance, long long q,
    long long cap = kDefaultEnumerationCap) {
  if (q < 1) {
    throw std::invalid_argument("brute_force_best: q must be >= 1");
  }
  const long long total = (Rational(q) * instance.T).floor().to_int64();
  const long long count =
      detail::count_partitions_capped(total, instance.n, cap);
  if (count > cap) {
    throw std::length_error(
        "brute_force_best: enumeration needs more than " +
        std::to_string(cap) +
        " allocations; pick a smaller quantum denominator q");
  }

  const std::size_t slots = static_cast<std::size_t>(instance.n);
  auto evaluate_first_range = [&](long long first_begin, long long first_end) {
    detail::SearchBest best;
    std::vector<long long> tuple(slots, 0);
    auto eval = [&](const std::vector<long long>& t) {
      std::vector<Rational> amounts;
      amounts.reserve(slots);
      for (long long u : t) amounts.push_back(Rational(u) / Rational(q));
      Allocation alloc{std::move(amounts)};
      best.offer(recovery_probability_dp(instance, alloc), t);
    };
    for (long long first = first_begin; first < first_end; ++first) {
      tuple.assign(slots, 0);
      tuple[0] = first;
      detail::enumerate_tail(tuple, 1, total - first, first, slots, eval);
    }
    return best;
  };

  const long long first_lo =
      (total + instance.n - 1) / instance.n;  // ceil(total / n)
  const long long range = total - first_lo + 1;
  const long long workers = std::min<long long>(
      range, std::max(1u, 2 * std::thread::hardware_concurrency()));
  detail::SearchBest best;
  std::vector<std::future<detail::SearchBest>> tasks;
  tasks.reserve(static_cast<std::size_t>(workers));
  for (long long w = 0; w < workers; ++w) {
    long long begin = first_lo + range * w / workers;
    long long end = first_lo + range * (w + 1) / workers;
    tasks.push_back(
        std::async(std::launch::async, evaluate_first_range, begin, end));
  }
  for (auto& task : tasks) best.merge(task.get());

  QuantizedSearchResult result;
  result.quantum_denominator = q;
  result.allocations_evaluated = best.evaluated;
  if (best.valid) {
    std::vector<Rational> amounts;
    amounts.reserve(best.units.size());
    for (long long u : best.units) {
      amounts.push_back(Rational(u) / Rational(q));
    }
    result.best_allocation = Allocation{std::move(amounts)};
    result.best_probability = best.probability;
  }
  return result;
}

// A Monte Carlo estimate of a recovery probability. standard_error is the
// usual binomial plug-in sqrt(est (1-est) / trials).
struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Name and sampling scheme of the Monte Carlo generator, recorded in every
// estimate so runs can be audited for determinism. Trials are processed in
// fixed blocks of 65536; block i uses an mt19937_64 engine seeded with
// splitmix64(seed + i). A node is accessed when the next 64-bit draw is
// below floor(p * 2^64) (bias below 2^-64; the probability realized is
// floor(p * 2^64) / 2^64). One draw is consumed per node per trial.
inline constexpr const char* kMonteCarloGenerator =
    "mt19937_64+threshold64/blocks65536/v1";

inline MonteCarloEstimate monte_carlo_estimate(const ProblemInstance& instance,
                                               const Allocation& alloc,
                                               long long trials,
                                               std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("monte_carlo_estimate: trials must be >= 1");
  }
  detail::ScaledAllocation scaled = detail::scale_to_units(instance, alloc);
  // Canonical node order: simulation is invariant under permutations of the
  // allocation, like the probability itself.
  std::sort(scaled.units.begin(), scaled.units.end(),
            std::greater<long long>());

  const std::uint64_t threshold =
      ((instance.p.num() << 64) / instance.p.den()).to_uint64();

  const long long block_size = 65536;
  const long long blocks = (trials + block_size - 1) / block_size;
  auto run_block = [&](long long block) {
    const long long begin = block * block_size;
    const long long end = std::min(trials, begin + block_size);
    std::mt19937_64 engine(
        detail::splitmix64(seed + static_cast<std::uint64_t>(block)));
    long long successes = 0;
    for (long long t = begin; t < end; ++t) {
      long long sum = 0;
      for (long long units : scaled.units) {
        if (engine() < threshold) sum += units;
      }
      if (sum >= scaled.denom) ++successes;
    }
    return successes;
  };

  long long successes = 0;
  if (blocks == 1) {
    successes = run_block(0);
  } else {
    std::vector<std::future<long long>> tasks;
    tasks.reserve(static_cast<std::size_t>(blocks));
    for (long long block = 0; block < blocks; ++block) {
      tasks.push_back(std::async(std::launch::async, run_block, block));
    }
    for (auto& task : tasks) successes += task.get();
  }

  MonteCarloEstimate out;
  out.trials = trials;
  out.seed = seed;
  out.generator = kMonteCarloGenerator;
  out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  out.standard_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) /
                static_cast<double>(trials));
  return out;
}

}  // namespace allocgrid
