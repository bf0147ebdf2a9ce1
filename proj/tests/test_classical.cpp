#include <gtest/gtest.h>

#include <numeric>

#include "mocklab/classical.hpp"
#include "mocklab/rational.hpp"
#include "oracles.hpp"
#include "printers.hpp"

namespace {

using mocklab::make_rational;
using mocklab::Rational;
using namespace mocklab::qseries;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(mocklab::parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(mocklab::parse_rational("-7"), -7);
  EXPECT_EQ(mocklab::to_string(make_rational(4, 2)), "2/1");
  EXPECT_THROW(mocklab::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(mocklab::parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
}

TEST(Rational, ValuationAndResidue) {
  EXPECT_EQ(mocklab::padic_valuation(Rational(8), 2), 3);
  EXPECT_EQ(mocklab::padic_valuation(make_rational(1, 3), 3), -1);
  EXPECT_EQ(mocklab::padic_valuation(make_rational(10, 9), 5), 1);
  EXPECT_THROW(mocklab::padic_valuation(Rational(0), 2), std::invalid_argument);
  EXPECT_EQ(mocklab::residue(Rational(-3), 4), 1);
  EXPECT_THROW(mocklab::residue(make_rational(1, 2), 4), std::invalid_argument);
  EXPECT_THROW(mocklab::to_int64(mocklab::parse_rational("100000000000000000000")), std::overflow_error);
}

TEST(Sigma, SmallValues) {
  EXPECT_EQ(sigma1(1), 1);
  EXPECT_EQ(sigma1(6), 12);
  for (const std::int64_t p : {2, 3, 5, 7, 97, 7919}) {
    EXPECT_EQ(sigma1(p), p + 1);
  }
  EXPECT_THROW(sigma1(std::int64_t{0}), std::invalid_argument);
  EXPECT_EQ(sigma1(make_rational(7, 2)), 0);
  EXPECT_EQ(sigma1(Rational(4)), 7);
}

TEST(Sigma, CacheMatchesBruteForce) {
  const SigmaCache cache(500);
  EXPECT_EQ(cache.max(), 500);
  for (std::int64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(cache(n), oracle::sigma_bruteforce(n)) << n;
    ASSERT_EQ(sigma1(n), cache(n)) << n;
  }
  EXPECT_THROW(cache(0), std::out_of_range);
  EXPECT_THROW(cache(501), std::out_of_range);
}

TEST(Sigma, Multiplicative) {
  for (std::int64_t a = 1; a < 40; ++a) {
    for (std::int64_t b = 1; b < 40; ++b) {
      if (std::gcd(a, b) == 1) {
        EXPECT_EQ(sigma1(a * b), sigma1(a) * sigma1(b));
      }
    }
  }
}

TEST(Eta, Examples) {
  const auto eta6 = eta_euler(6);
  EXPECT_EQ(eta6, TruncatedSeries::from_terms(1, 6, {{0, 1}, {1, -1}, {2, -1}, {5, 1}}));
  EXPECT_EQ(eta_euler(1), TruncatedSeries::constant(1, 1, 1));
  EXPECT_EQ(eta_euler(10).coeff(7), 1);
}

TEST(Eta, ProductMatchesPentagonal) {
  EXPECT_EQ(eta_euler(500, EtaMethod::product), eta_euler(500, EtaMethod::pentagonal));
}

TEST(Partitions, Examples) {
  const auto p = partition_series(20);
  EXPECT_EQ(p.coeff(0), 1);
  EXPECT_EQ(p.coeff(4), 5);
  EXPECT_EQ(p.coeff(9), 30);
}

TEST(Partitions, MatchEnumerationThrough60) {
  const auto p = partition_series(61);
  for (int n = 0; n <= 60; ++n) {
    ASSERT_EQ(p.coeff(n), oracle::partitions_enumerated(n)) << n;
  }
}

TEST(Partitions, MatchRecurrenceThrough500) {
  const auto p = partition_series(500);
  const auto ref = oracle::partitions_recurrence(499);
  for (int n = 0; n < 500; ++n) {
    ASSERT_EQ(p.coeff(n), Rational(ref[static_cast<std::size_t>(n)])) << n;
  }
  EXPECT_EQ(p.coeff(100), 190569292);
  EXPECT_EQ(p.coeff(499), Rational(mpz_class("2176192515439287461625")));
}

TEST(RamanujanF, LeadingCoefficients) {
  const auto f = ramanujan_f_series(16);
  for (int n = 0; n < 16; ++n) {
    EXPECT_EQ(f.coeff(n), oracle::kRamanujanF[static_cast<std::size_t>(n)]) << n;
  }
}

TEST(RamanujanF, MatchesDirectExpansion) {
  const auto f = ramanujan_f_series(300);
  const auto ref = oracle::ramanujan_f_direct(300);
  for (int n = 0; n < 300; ++n) {
    ASSERT_EQ(f.coeff(n), Rational(ref[static_cast<std::size_t>(n)])) << n;
  }
}

TEST(E2, Coefficients) {
  const auto e2 = eisenstein_E2(60);
  EXPECT_EQ(e2.coeff(0), 1);
  EXPECT_EQ(e2.coeff(1), -24);
  EXPECT_EQ(e2.coeff(4), -168);
  for (int n = 1; n < 60; ++n) {
    EXPECT_EQ(mocklab::residue(e2.coeff(n), 24), 0);
  }
}

TEST(Classical, NegativeOrderRejected) {
  EXPECT_THROW(eta_euler(-1), std::invalid_argument);
  EXPECT_THROW(partition_series(-1), std::invalid_argument);
  EXPECT_THROW(ramanujan_f_series(-1), std::invalid_argument);
  EXPECT_THROW(eisenstein_E2(-1), std::invalid_argument);
}

}  // namespace
