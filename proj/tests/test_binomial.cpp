#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "allocgrid/binomial.hpp"
#include "testutil.hpp"

using allocgrid::BigInt;
using allocgrid::binomial_coefficient;
using allocgrid::binomial_pmf;
using allocgrid::binomial_tail_ge;
using allocgrid::binomial_tail_le;
using allocgrid::BinomialSpec;
using allocgrid::Rational;

TEST_CASE("binomial coefficient basics") {
  CHECK(binomial_coefficient(5, 3).to_int64() == 10);
  CHECK(binomial_coefficient(7, 0).to_int64() == 1);
  CHECK(binomial_coefficient(10, 11).to_int64() == 0);
  CHECK(binomial_coefficient(10, -1).to_int64() == 0);
  CHECK(binomial_coefficient(0, 0).to_int64() == 1);
  CHECK(binomial_coefficient(52, 26).str() == "495918532948104");
  CHECK_THROWS_AS(binomial_coefficient(-1, 0), std::invalid_argument);
}

TEST_CASE("binomial coefficient symmetry and pascal identity") {
  for (long long n = 0; n <= 40; ++n) {
    for (long long k = 0; k <= n; ++k) {
      CHECK(binomial_coefficient(n, k) == binomial_coefficient(n, n - k));
    }
  }
  std::mt19937_64 rng(0x9A5C);
  for (int round = 0; round < 300; ++round) {
    long long n = 1 + static_cast<long long>(rng() % 200);
    long long k = static_cast<long long>(rng() % (n + 1));
    CHECK(binomial_coefficient(n, k) ==
          binomial_coefficient(n - 1, k - 1) + binomial_coefficient(n - 1, k));
  }
}

TEST_CASE("pmf matches hand values") {
  BinomialSpec five_thirds(5, Rational(2) / Rational(3));
  CHECK(binomial_pmf(five_thirds, 3) == Rational(80) / Rational(243));
  CHECK(binomial_pmf(BinomialSpec(4, Rational(1) / Rational(2)), 0) ==
        Rational(1) / Rational(16));
  CHECK(binomial_pmf(BinomialSpec(3, Rational(2) / Rational(3)), 5) ==
        Rational(0));
  CHECK(binomial_pmf(five_thirds, -2) == Rational(0));
}

TEST_CASE("pmf sums to one exactly") {
  std::mt19937_64 rng(0x50F);
  for (int round = 0; round < 40; ++round) {
    long long n = static_cast<long long>(rng() % 80);
    BinomialSpec spec(n, testutil::random_probability(rng));
    Rational sum(0);
    for (long long k = 0; k <= n; ++k) sum += binomial_pmf(spec, k);
    CHECK(sum == Rational(1));
  }
}

TEST_CASE("upper tail matches hand values") {
  CHECK(binomial_tail_ge(BinomialSpec(2, Rational(2) / Rational(3)), 1) ==
        Rational(8) / Rational(9));
  CHECK(binomial_tail_ge(BinomialSpec(5, Rational(2) / Rational(3)), 3) ==
        Rational(64) / Rational(81));
  CHECK(binomial_tail_ge(BinomialSpec(7, Rational(1) / Rational(3)), 0) ==
        Rational(1));
  CHECK(binomial_tail_ge(BinomialSpec(7, Rational(1) / Rational(3)), -3) ==
        Rational(1));
  CHECK(binomial_tail_ge(BinomialSpec(7, Rational(1) / Rational(3)), 8) ==
        Rational(0));
}

TEST_CASE("tail recurrence holds exactly") {
  std::mt19937_64 rng(0x7A11);
  for (int round = 0; round < 30; ++round) {
    long long n = static_cast<long long>(rng() % 60);
    BinomialSpec spec(n, testutil::random_probability(rng));
    for (long long k = -1; k <= n + 1; ++k) {
      CHECK(binomial_tail_ge(spec, k) ==
            binomial_tail_ge(spec, k + 1) + binomial_pmf(spec, k));
    }
    for (long long k = -1; k <= n + 1; ++k) {
      CHECK(binomial_tail_le(spec, k) + binomial_tail_ge(spec, k + 1) ==
            Rational(1));
    }
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(BinomialSpec(-1, Rational(1) / Rational(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(BinomialSpec(3, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(BinomialSpec(3, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(BinomialSpec(3, Rational(5) / Rational(4)),
                  std::invalid_argument);
}
