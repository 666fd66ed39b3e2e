#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "allocgrid/allocation.hpp"
#include "allocgrid/binomial.hpp"
#include "allocgrid/rational.hpp"

namespace allocgrid {

// One evaluated symmetric allocation: node_count nonempty nodes and the
// exact recovery probability of spreading the budget evenly over them.
struct CandidateValue {
  long long node_count;
  Rational p_s;
};

// Candidates in increasing node_count order plus the best entry. Ties keep
// every tied candidate in the list; best_node_count is the smallest node
// count attaining the maximum (fewer nonempty nodes, same probability).
struct CandidateReport {
  std::vector<CandidateValue> candidates;
  long long best_node_count = 0;
  Rational best_p_s;

  std::vector<long long> tied_best() const {
    std::vector<long long> out;
    for (const CandidateValue& c : candidates) {
      if (c.p_s == best_p_s) out.push_back(c.node_count);
    }
    return out;
  }
};

// The candidate numbers of nonempty nodes among which an optimal symmetric
// allocation always lies: the largest integer of each recovery-threshold
// interval ((k-1)T, kT] for k = 1..floor(n/T), which is floor(kT), plus n
// itself. Sorted, deduplicated; the list has ceil(n/T) entries.
inline std::vector<long long> candidate_node_counts(int n, const Rational& T) {
  if (n < 2) {
    throw std::invalid_argument("candidate_node_counts: n must be >= 2");
  }
  if (T < Rational(1) || T > Rational(n)) {
    throw std::invalid_argument("candidate_node_counts: T must lie in [1, n]");
  }
  long long k_max = (Rational(n) / T).floor().to_int64();
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (long long k = 1; k <= k_max; ++k) {
    out.push_back((Rational(k) * T).floor().to_int64());
  }
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

namespace detail {

inline CandidateReport evaluate_node_counts(const ProblemInstance& instance,
                                            const std::vector<long long>& ms) {
  CandidateReport report;
  report.candidates.reserve(ms.size());
  for (long long m : ms) {
    Rational p_s = symmetric_recovery_probability(instance.p, instance.T, m);
    if (report.candidates.empty() || p_s > report.best_p_s) {
      report.best_p_s = p_s;
      report.best_node_count = m;
    }
    report.candidates.push_back(CandidateValue{m, std::move(p_s)});
  }
  return report;
}

}  // namespace detail

// Optimal symmetric allocation via the reduced candidate set.
inline CandidateReport optimal_symmetric(const ProblemInstance& instance) {
  return detail::evaluate_node_counts(
      instance, candidate_node_counts(instance.n, instance.T));
}

// Brute-force scan over every node count 1..n; validation oracle for the
// candidate reduction.
inline CandidateReport exhaustive_symmetric(const ProblemInstance& instance) {
  std::vector<long long> all;
  all.reserve(static_cast<std::size_t>(instance.n));
  for (long long m = 1; m <= instance.n; ++m) all.push_back(m);
  return detail::evaluate_node_counts(instance, all);
}

// Difference between the recovery probabilities of the consecutive
// candidates floor((k+1)T) and floor(kT). added_trials is the number of
// extra Bernoulli trials between the two, always floor(T) or ceil(T).
struct DeltaValue {
  long long k;
  long long added_trials;
  Rational value;
};

namespace detail {

inline void require_delta_domain(const Rational& p, const Rational& T,
                                 long long k) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("candidate delta: p must lie in (0, 1)");
  }
  if (T <= Rational(1)) {
    throw std::invalid_argument("candidate delta: requires T > 1");
  }
  if (k < 1) {
    throw std::invalid_argument("candidate delta: requires k >= 1");
  }
}

}  // namespace detail

// Closed-form expansion of the candidate difference, obtained by comparing
// the branches of the probability tree for floor(kT) versus floor((k+1)T)
// trials:
//
//   p^k (1-p)^(floor((k+1)T) - k)
//     * ( sum_{i=1}^{min(alpha-1, k)} sum_{j=i+1}^{alpha}
//           C(floor(kT), k-i) C(alpha, j) (p/(1-p))^(j-i)
//         - C(floor(kT), k) )
//
// with alpha = floor((k+1)T) - floor(kT).
inline DeltaValue candidate_delta_closed_form(const Rational& p,
                                              const Rational& T, long long k) {
  detail::require_delta_domain(p, T, k);
  const long long lower = (Rational(k) * T).floor().to_int64();
  const long long upper = (Rational(k + 1) * T).floor().to_int64();
  const long long alpha = upper - lower;

  const Rational odds = p / (Rational(1) - p);
  Rational bracket(0);
  const long long i_max = std::min(alpha - 1, k);
  for (long long i = 1; i <= i_max; ++i) {
    for (long long j = i + 1; j <= alpha; ++j) {
      bracket += Rational(binomial_coefficient(lower, k - i)) *
                 Rational(binomial_coefficient(alpha, j)) *
                 odds.pow(static_cast<unsigned long long>(j - i));
    }
  }
  bracket -= Rational(binomial_coefficient(lower, k));

  Rational scale = p.pow(static_cast<unsigned long long>(k)) *
                   (Rational(1) - p).pow(
                       static_cast<unsigned long long>(upper - k));
  return DeltaValue{k, alpha, scale * bracket};
}

// The same difference computed directly from the two binomial tails;
// independent check of the closed form.
inline DeltaValue candidate_delta_direct(const Rational& p, const Rational& T,
                                         long long k) {
  detail::require_delta_domain(p, T, k);
  const long long lower = (Rational(k) * T).floor().to_int64();
  const long long upper = (Rational(k + 1) * T).floor().to_int64();
  Rational value = binomial_tail_ge(BinomialSpec(upper, p), k + 1) -
                   binomial_tail_ge(BinomialSpec(lower, p), k);
  return DeltaValue{k, upper - lower, std::move(value)};
}

// --- Sufficient conditions for the optimal amount of spreading ---------
//
// "Max spread" below means the candidate pair {floor(floor(n/T) T), n};
// "min spread" means floor(T) nonempty nodes, i.e. full-copy replication.

// Budget test T >= ceil(4 / (3p)). Implies the delta condition below.
inline bool max_spread_budget_condition(const Rational& p, const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("condition: p must lie in (0, 1)");
  }
  BigInt threshold = (Rational(4) / (Rational(3) * p)).ceil();
  return T >= Rational(std::move(threshold));
}

// Exact test that forces every candidate difference to be >= 0, so the
// best candidate is one of the two largest:
//   T >= 2 and (1-p)^floor(T) + 2 floor(T) p (1-p)^(floor(T)-1) <= 1.
inline bool max_spread_delta_condition(const Rational& p, const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("condition: p must lie in (0, 1)");
  }
  if (T < Rational(2)) return false;
  const unsigned long long b =
      static_cast<unsigned long long>(T.floor().to_int64());
  const Rational q = Rational(1) - p;
  Rational lhs = q.pow(b) +
                 Rational(2) * Rational(static_cast<long long>(b)) * p *
                     q.pow(b - 1);
  return lhs <= Rational(1);
}

// Budget test T <= floor(1/p) for min-spread optimality.
inline bool min_spread_budget_condition(const Rational& p, const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("condition: p must lie in (0, 1)");
  }
  return T <= Rational((Rational(1) / p).floor());
}

// Exact tests that force every candidate difference to be <= 0, keeping
// only the smallest candidate. Either branch suffices:
//   reciprocal_integer:  T = 1/p and T is a positive integer
//   pmf_dominated:       T < 1/p and
//                        p (1-p)^(ceil(T)-1) <= (1/T) (1 - 1/T)^(ceil(T)-1)
struct MinSpreadExact {
  bool reciprocal_integer = false;
  bool pmf_dominated = false;

  bool any() const { return reciprocal_integer || pmf_dominated; }
};

inline MinSpreadExact min_spread_delta_condition(const Rational& p,
                                                 const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("condition: p must lie in (0, 1)");
  }
  if (T <= Rational(1)) {
    throw std::invalid_argument("min_spread_delta_condition: requires T > 1");
  }
  MinSpreadExact out;
  out.reciprocal_integer = T.is_integer() && p * T == Rational(1);
  if (T < Rational(1) / p) {
    const unsigned long long c =
        static_cast<unsigned long long>(T.ceil().to_int64());
    const Rational inv = Rational(1) / T;
    Rational lhs = p * (Rational(1) - p).pow(c - 1);
    Rational rhs = inv * (Rational(1) - inv).pow(c - 1);
    out.pmf_dominated = lhs <= rhs;
  }
  return out;
}

// Weaker but simpler margin test implying one of the exact branches:
//   p <= 2/ceil(T) - 1/T.
inline bool min_spread_margin_condition(const Rational& p, const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("condition: p must lie in (0, 1)");
  }
  if (T <= Rational(1)) {
    throw std::invalid_argument("min_spread_margin_condition: requires T > 1");
  }
  Rational margin =
      Rational(2) / Rational(T.ceil()) - Rational(1) / T;
  return p <= margin;
}

// --- Region classification ----------------------------------------------

enum class SpreadVerdict { Unresolved, MaxSpread, MinSpread, Both };

inline const char* to_string(SpreadVerdict v) {
  switch (v) {
    case SpreadVerdict::MaxSpread: return "max-spread";
    case SpreadVerdict::MinSpread: return "min-spread";
    case SpreadVerdict::Both: return "both";
    case SpreadVerdict::Unresolved: return "unresolved";
  }
  return "unresolved";
}

struct RegionFlags {
  bool max_budget = false;      // T >= ceil(4/(3p))
  bool max_delta = false;       // exact max-spread inequality
  bool min_budget = false;      // T <= floor(1/p)
  bool min_reciprocal = false;  // T = 1/p, integer
  bool min_pmf = false;         // T < 1/p with pmf domination
  bool min_margin = false;      // p <= 2/ceil(T) - 1/T
};

struct RegionClass {
  RegionFlags flags;
  SpreadVerdict verdict = SpreadVerdict::Unresolved;
};

// Evaluates every sufficient condition at (p, T) and derives the verdict.
// Defined for all T >= 1; the conditions that require T > 1 are recorded as
// false at T = 1, where the trivial budget makes a single full copy optimal
// (and the min-spread budget test holds automatically).
inline RegionClass classify_region(const Rational& p, const Rational& T) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("classify_region: p must lie in (0, 1)");
  }
  if (T < Rational(1)) {
    throw std::invalid_argument("classify_region: T must be >= 1");
  }
  RegionClass out;
  out.flags.max_budget = max_spread_budget_condition(p, T);
  out.flags.max_delta = max_spread_delta_condition(p, T);
  out.flags.min_budget = min_spread_budget_condition(p, T);
  if (T > Rational(1)) {
    MinSpreadExact exact = min_spread_delta_condition(p, T);
    out.flags.min_reciprocal = exact.reciprocal_integer;
    out.flags.min_pmf = exact.pmf_dominated;
    out.flags.min_margin = min_spread_margin_condition(p, T);
  }
  const bool max_spread = out.flags.max_budget || out.flags.max_delta;
  const bool min_spread = out.flags.min_budget || out.flags.min_reciprocal ||
                          out.flags.min_pmf || out.flags.min_margin;
  if (max_spread && min_spread) {
    out.verdict = SpreadVerdict::Both;
  } else if (max_spread) {
    out.verdict = SpreadVerdict::MaxSpread;
  } else if (min_spread) {
    out.verdict = SpreadVerdict::MinSpread;
  } else {
    out.verdict = SpreadVerdict::Unresolved;
  }
  return out;
}

}  // namespace allocgrid
