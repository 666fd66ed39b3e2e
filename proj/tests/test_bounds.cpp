#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "allocgrid/bounds.hpp"
#include "allocgrid/symmetric.hpp"
#include "testutil.hpp"

using namespace allocgrid;

namespace {

Rational rat(const char* text) { return Rational::parse(text); }

const ProblemInstance kCounterexample(5, rat("2/3"), rat("7/3"));

}  // namespace

TEST_CASE("upper bound on known instances") {
  CHECK(recovery_upper_bound(kCounterexample) == rat("26/27"));
  // T = n: min(rT/n, 1) is 1 for every accessed set, so the bound is the
  // probability of accessing anything at all.
  ProblemInstance full(6, rat("2/7"), Rational(6));
  CHECK(recovery_upper_bound(full) == Rational(1) - rat("5/7").pow(6));
  // T = 1: the bound collapses to the mean E[B(n,p)] / n = p.
  ProblemInstance unit(8, rat("3/11"), Rational(1));
  CHECK(recovery_upper_bound(unit) == rat("3/11"));
}

TEST_CASE("max-spread gap on known instances") {
  CHECK(max_spread_gap(kCounterexample) == rat("14/81"));
  ProblemInstance full(9, rat("1/2"), Rational(9));
  CHECK(max_spread_gap(full) == Rational(0));
  ProblemInstance sparse(200, rat("3/5"), Rational(2));
  CHECK(max_spread_gap(sparse) < rat("1/100"));
}

TEST_CASE("chernoff envelope") {
  CHECK(chernoff_gap_envelope(kCounterexample) ==
        doctest::Approx(1.312278).epsilon(1e-5));
  CHECK(chernoff_gap_envelope(ProblemInstance(200, rat("3/5"), Rational(2))) ==
        doctest::Approx(0.228547).epsilon(1e-5));
  CHECK_THROWS_AS(
      chernoff_gap_envelope(ProblemInstance(10, rat("1/2"), Rational(2))),
      std::domain_error);  // pT = 1 sits outside the regime
  CHECK_THROWS_AS(
      chernoff_gap_envelope(ProblemInstance(10, rat("1/4"), Rational(2))),
      std::domain_error);
}

TEST_CASE("markov cap") {
  CHECK(markov_cap(rat("1/4"), Rational(2)) == rat("1/2"));
  CHECK(markov_cap(rat("2/3"), rat("7/3")) == Rational(1));
  CHECK(markov_cap(rat("1/10"), Rational(1)) == rat("1/10"));
}

TEST_CASE("bounds report ties the pieces together") {
  BoundsReport report = bounds_report(kCounterexample);
  CHECK(report.upper_bound == rat("26/27"));
  CHECK(report.max_spread_ps == rat("64/81"));
  CHECK(report.max_spread_gap == rat("14/81"));
  CHECK(report.markov_cap == Rational(1));
  REQUIRE(report.chernoff_envelope.has_value());
  CHECK(*report.chernoff_envelope == doctest::Approx(1.312278).epsilon(1e-5));
  CHECK(report.upper_bound - report.max_spread_ps == report.max_spread_gap);

  BoundsReport low = bounds_report(ProblemInstance(10, rat("1/4"), Rational(2)));
  CHECK_FALSE(low.chernoff_envelope.has_value());
  CHECK(low.markov_cap == rat("1/2"));
}

TEST_CASE("gap identity holds exactly on random instances") {
  std::mt19937_64 rng(0xB0B);
  for (int round = 0; round < 120; ++round) {
    int n = 2 + static_cast<int>(rng() % 59);
    ProblemInstance instance(n, testutil::random_probability(rng),
                             testutil::random_budget(rng, n));
    CAPTURE(instance.n);
    CAPTURE(instance.p.str());
    CAPTURE(instance.T.str());
    Rational upper = recovery_upper_bound(instance);
    Rational spread =
        symmetric_recovery_probability(instance.p, instance.T, instance.n);
    Rational gap = max_spread_gap(instance);
    CHECK(upper - spread == gap);
    CHECK(gap >= Rational(0));
    CHECK(upper <= Rational(1));
  }
}

TEST_CASE("upper bound dominates the exhaustive symmetric best") {
  std::mt19937_64 rng(0x1B0);
  for (int round = 0; round < 60; ++round) {
    int n = 2 + static_cast<int>(rng() % 19);
    ProblemInstance instance(n, testutil::random_probability(rng),
                             testutil::random_budget(rng, n));
    CHECK(exhaustive_symmetric(instance).best_p_s <=
          recovery_upper_bound(instance));
  }
}

TEST_CASE("gap stays under the chernoff envelope when pT > 1") {
  std::mt19937_64 rng(0xE27);
  int tested = 0;
  while (tested < 60) {
    int n = 2 + static_cast<int>(rng() % 59);
    ProblemInstance instance(n, testutil::random_probability(rng),
                             testutil::random_budget(rng, n));
    if (instance.p * instance.T <= Rational(1)) continue;
    ++tested;
    double gap = max_spread_gap(instance).to_double();
    double envelope = chernoff_gap_envelope(instance);
    CAPTURE(instance.n);
    CAPTURE(instance.p.str());
    CAPTURE(instance.T.str());
    CHECK(gap <= envelope * (1.0 + 1e-12));
  }
}

TEST_CASE("the gap shrinks between n = 50 and n = 200 for p = 3/5, T = 2") {
  Rational gap50 = max_spread_gap(ProblemInstance(50, rat("3/5"), Rational(2)));
  Rational gap200 =
      max_spread_gap(ProblemInstance(200, rat("3/5"), Rational(2)));
  CHECK(gap200 < gap50);
}
