#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mocklab/classical.hpp"
#include "mocklab/congruence.hpp"
#include "mocklab/mock_family.hpp"
#include "oracles.hpp"
#include "printers.hpp"

namespace {

using mocklab::make_rational;
using mocklab::Rational;
using mocklab::qseries::TruncatedSeries;
using namespace mocklab::congruence;
namespace mock = mocklab::mock;

TruncatedSeries random_series(std::mt19937_64& rng, std::int64_t order, std::uint64_t p) {
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> power(-1, 3);
  TruncatedSeries s(1, Rational(order));
  for (std::int64_t k = 0; k < order; ++k) {
    Rational c = coeff(rng);
    const int e = power(rng);
    for (int i = 0; i < std::abs(e); ++i) {
      c = e > 0 ? Rational(c * p) : Rational(c / p);
    }
    s.add_at_index(k, c);
  }
  return s;
}

TEST(Valuation, Examples) {
  const auto a = TruncatedSeries::from_terms(1, 5, {{0, 4}, {1, 8}});
  EXPECT_EQ(padic_valuation(a, 2).value, 2);
  EXPECT_TRUE(padic_valuation(a, 2).range_limited);
  EXPECT_EQ(padic_valuation(a, 2).order, 5);
  const auto b = TruncatedSeries::from_terms(1, 5, {{1, make_rational(1, 3)}});
  EXPECT_EQ(padic_valuation(b, 3).value, -1);
  EXPECT_TRUE(padic_valuation(TruncatedSeries(1, 5), 3).infinite());
  EXPECT_THROW(padic_valuation(a, 4), std::invalid_argument);
  EXPECT_THROW(padic_valuation(a, 1), std::invalid_argument);
}

TEST(Valuation, UltrametricProperty) {
  std::mt19937_64 rng(5);
  for (const std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto g = random_series(rng, 6, p);
      const auto h = random_series(rng, 6, p);
      const auto vg = padic_valuation(g, p);
      const auto vh = padic_valuation(h, p);
      const auto vs = padic_valuation(g + h, p);
      if (vg.infinite() || vh.infinite() || vs.infinite()) {
        continue;
      }
      EXPECT_GE(*vs.value, std::min(*vg.value, *vh.value));
      if (*vg.value != *vh.value) {
        EXPECT_EQ(*vs.value, std::min(*vg.value, *vh.value));
      }
    }
  }
}

TEST(Congruent, IdenticalSeries) {
  const auto f = mocklab::qseries::ramanujan_f_series(50);
  for (const std::uint64_t p : {2u, 3u, 7u}) {
    for (int m = 1; m <= 5; ++m) {
      const auto r = congruent_mod(f, f, p, m);
      EXPECT_TRUE(r.holds);
      EXPECT_TRUE(r.valuation_diff.infinite());
      EXPECT_FALSE(r.witness_exponent.has_value());
    }
  }
}

TEST(Congruent, RamanujanFAgainstPartitionsModFour) {
  const auto f = mocklab::qseries::ramanujan_f_series(500);
  const auto P = mocklab::qseries::partition_series(500);
  const auto r = congruent_mod(f, P, 2, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 500);
  EXPECT_GE(*r.valuation_diff.value, 2);

  const auto r8 = congruent_mod(f, P, 2, 3);
  EXPECT_FALSE(r8.holds);
  ASSERT_TRUE(r8.witness_exponent.has_value());
  // first index where f and P differ by something not divisible by 8, from the tables
  const auto ref = oracle::ramanujan_f_direct(500);
  const auto parts = oracle::partitions_recurrence(499);
  int first = -1;
  for (int n = 0; n < 500 && first < 0; ++n) {
    const mpz_class d = ref[static_cast<std::size_t>(n)] - parts[static_cast<std::size_t>(n)];
    if (d % 8 != 0) {
      first = n;
    }
  }
  EXPECT_EQ(*r8.witness_exponent, first);
}

TEST(Congruent, Errors) {
  const auto a = TruncatedSeries::from_terms(1, 5, {{0, 1}});
  const auto b = TruncatedSeries::from_terms(2, 5, {{0, 1}});
  EXPECT_THROW(congruent_mod(a, b, 2, 1), mocklab::qseries::LatticeMismatch);
  EXPECT_THROW(congruent_mod(a, a, 2, 0), std::invalid_argument);
  EXPECT_THROW(congruent_mod(a, a, 9, 1), std::invalid_argument);
}

TEST(Congruent, UsesTheSmallerOrder) {
  const auto a = TruncatedSeries::from_terms(1, 5, {{0, 1}, {4, 1}});
  const auto b = TruncatedSeries::from_terms(1, 3, {{0, 1}});
  const auto r = congruent_mod(a, b, 3, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 3);
}

TEST(Congruent, TransitivityProperty) {
  std::mt19937_64 rng(17);
  int exercised = 0;
  for (const std::uint64_t p : {2u, 3u}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto g = random_series(rng, 5, p);
      // nudge h and k towards g so that the hypotheses hold reasonably often
      const auto h = g + random_series(rng, 5, p).scaled(Rational(p * p));
      const auto k = h + random_series(rng, 5, p).scaled(Rational(p * p));
      for (int m = 1; m <= 2; ++m) {
        if (congruent_mod(g, h, p, m).holds && congruent_mod(h, k, p, m).holds) {
          ++exercised;
          EXPECT_TRUE(congruent_mod(g, k, p, m).holds);
        }
      }
    }
  }
  EXPECT_GT(exercised, 50);
}

TEST(PartitionCongruences, HoldThroughOneHundred) {
  const auto report = verify_partition_congruences(100);
  EXPECT_TRUE(report.pass);
  ASSERT_EQ(report.cases.size(), 3u);
  for (const auto& c : report.cases) {
    EXPECT_EQ(c.checked, 101);
    EXPECT_FALSE(c.first_failure.has_value());
  }
  EXPECT_EQ(oracle::partitions_enumerated(4) % 5, 0);
  EXPECT_EQ(oracle::partitions_enumerated(5) % 7, 0);
  EXPECT_EQ(oracle::partitions_enumerated(6) % 11, 0);
}

TEST(WitnessOdd, FoundAndValidated) {
  const auto p = mock::validate_params(1, 6, 0, 1);
  const auto r = find_witness_odd(p, 5, 0);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(r.validation.valid);
  EXPECT_GE(r.c_mod, 1);
  EXPECT_LE(r.c_mod, 4);
  EXPECT_EQ(r.n, r.Q * r.k);
  EXPECT_EQ(r.Q % 5, 4);
  EXPECT_TRUE(mocklab::primes::is_prime(static_cast<std::uint64_t>(r.Q)));
  EXPECT_EQ(mock::coefficient_closed_form(p, r.n).c, r.c);
  EXPECT_EQ(mocklab::primes::factorize(static_cast<std::uint64_t>(r.n)).empty(), false);

  const auto r3 = find_witness_odd(p, 3, 1);
  ASSERT_TRUE(r3.found);
  EXPECT_EQ(r3.n, 3 * r3.Q * r3.k);
  EXPECT_NE(r3.c % 3, 0);
  EXPECT_EQ(std::gcd(r3.k, 3 * r3.Q), 1);
}

TEST(WitnessOdd, ParallelScanIsDeterministic) {
  const auto p = mock::validate_params(2, 5, 1, 0);
  SearchBounds serial;
  SearchBounds parallel;
  parallel.jobs = 4;
  for (const std::uint64_t pr : {3u, 7u}) {
    const auto a = find_witness_odd(p, pr, 1, serial);
    const auto b = find_witness_odd(p, pr, 1, parallel);
    ASSERT_TRUE(a.found);
    EXPECT_EQ(a.Q, b.Q);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.c, b.c);
  }
}

TEST(WitnessOdd, Errors) {
  const auto p = mock::validate_params(1, 6, 0, 1);
  EXPECT_THROW(find_witness_odd(p, 2, 0), std::invalid_argument);
  EXPECT_THROW(find_witness_odd(p, 9, 0), std::invalid_argument);
  SearchBounds empty;
  empty.q_min = 2000;
  empty.q_max = 1500;
  const auto r = find_witness_odd(p, 5, 0, empty);
  EXPECT_FALSE(r.found);
}

TEST(WitnessMod4, FoundAndValidated) {
  const auto p = mock::validate_params(1, 6, 0, 1);
  const auto r = find_witness_mod4(p);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(r.validation.valid);
  EXPECT_EQ(r.c_mod, 2);
  EXPECT_GE(r.m, 2);
  EXPECT_LE(r.m, 8);
  EXPECT_EQ(r.n, r.Q * (std::int64_t{1} << r.m) * r.k);
  EXPECT_EQ(r.k % 2, 1);
  EXPECT_EQ(r.m_tried.back(), r.m);
  const auto qb = r.Q % 6;
  EXPECT_TRUE(qb == 1 || qb == 5);
}

TEST(WitnessMod4, EmptyRangeIsNotFound) {
  const auto p = mock::validate_params(1, 6, 0, 1);
  SearchBounds empty = default_mod4_bounds();
  empty.q_max = empty.q_min - 1;
  EXPECT_FALSE(find_witness_mod4(p, 2, 8, empty).found);
  EXPECT_THROW(find_witness_mod4(p, 1, 8), std::invalid_argument);
}

TEST(WitnessValidation, DetectsTampering) {
  const auto p = mock::validate_params(1, 6, 0, 1);
  auto r = find_witness_odd(p, 7, 0);
  ASSERT_TRUE(r.validation.valid);
  r.c += 7;
  validate_witness(r);
  EXPECT_FALSE(r.validation.valid);
}

TEST(PsiLemma, Examples) {
  const auto r = check_psi_lemma(6, 1, 7);
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].x, 1);
  EXPECT_EQ(r.rows[0].psi_4q_2x, 1);
  EXPECT_EQ(r.rows[0].psi_4q_4x, 1);
  const auto p = mock::validate_params(1, 6, 0, 0);
  EXPECT_EQ(mock::psi(p, 28, 2), 1);
  EXPECT_EQ(mock::psi(p, 28, 4), 1);
}

TEST(PsiLemma, AllSmallPrimes) {
  for (std::int64_t Q = 7; Q < 100; ++Q) {
    if (!mocklab::primes::is_prime(static_cast<std::uint64_t>(Q))) {
      continue;
    }
    for (const std::int64_t A : {1, 5}) {
      EXPECT_TRUE(check_psi_lemma(6, A, Q).holds) << "B=6 A=" << A << " Q=" << Q;
    }
    for (const std::int64_t A : {1, 3, 7, 9}) {
      EXPECT_TRUE(check_psi_lemma(10, A, Q).holds) << "B=10 A=" << A << " Q=" << Q;
    }
  }
}

TEST(PsiLemma, GeneralModulus) {
  for (const std::int64_t B : {14, 18, 22}) {
    for (std::int64_t A = 1; A < B; ++A) {
      if (std::gcd(A, B) != 1) {
        continue;
      }
      for (const std::int64_t Q : {13, 17, 19, 23, 29, 31, 37}) {
        if (B % Q == 0) {
          continue;
        }
        EXPECT_TRUE(check_psi_lemma_general(B, A, Q).holds) << B << " " << A << " " << Q;
      }
    }
  }
}

TEST(PsiLemma, Errors) {
  EXPECT_THROW(check_psi_lemma(8, 1, 7), std::invalid_argument);
  EXPECT_THROW(check_psi_lemma(6, 2, 7), std::invalid_argument);
  EXPECT_THROW(check_psi_lemma(6, 1, 5), std::invalid_argument);
  EXPECT_THROW(check_psi_lemma(6, 1, 9), std::invalid_argument);
  EXPECT_THROW(check_psi_lemma_general(12, 1, 7), std::invalid_argument);
}

TEST(Corollary1, IdenticalInput) {
  const auto f = TruncatedSeries::from_terms(1, 6, {{0, 3}, {2, 9}});
  const auto r = corollary1_decompose(f, f, 3);
  EXPECT_TRUE(r.m.is_zero());
  EXPECT_EQ(r.j.value, 1);
  EXPECT_FALSE(r.case_i_applies);
  EXPECT_FALSE(r.g.has_value());
}

TEST(Corollary1, ConstructedNegativeValuation) {
  const auto f = mocklab::qseries::ramanujan_f_series(20);
  for (const std::uint64_t p : {2u, 3u, 5u}) {
    const auto H = f + TruncatedSeries::from_terms(1, 20, {{1, make_rational(1, static_cast<std::int64_t>(p))}});
    const auto r = corollary1_decompose(H, f, p);
    EXPECT_EQ(r.j.value, -1);
    EXPECT_TRUE(r.case_i_applies);
    EXPECT_TRUE(r.verified);
    ASSERT_TRUE(r.g.has_value());
    EXPECT_EQ(*r.g, r.m.scaled(Rational(p)));
  }
}

TEST(Corollary1, RandomValuationMinusTwo) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coeff(-20, 20);
  const auto f = mocklab::qseries::partition_series(15);
  for (int trial = 0; trial < 30; ++trial) {
    TruncatedSeries m(1, 15);
    for (std::int64_t k = 0; k < 15; ++k) {
      m.add_at_index(k, make_rational(coeff(rng), 9));
    }
    m.add_at_index(trial % 15, make_rational(1, 9) - m.coeff(trial % 15) + make_rational(1, 9));
    const auto H = f + m;
    const auto r = corollary1_decompose(H, f, 3);
    ASSERT_EQ(r.j.value, -2);
    EXPECT_TRUE(r.verified);
  }
}

TEST(Corollary1, NonIntegralPartRejected) {
  const auto f = TruncatedSeries::from_terms(1, 4, {{0, make_rational(1, 3)}});
  const auto H = TruncatedSeries::from_terms(1, 4, {{0, make_rational(1, 9)}});
  EXPECT_THROW(corollary1_decompose(H, f, 3), std::domain_error);
}

}  // namespace
