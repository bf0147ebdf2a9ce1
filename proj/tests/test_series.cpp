#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mocklab/classical.hpp"
#include "mocklab/series.hpp"
#include "mocklab/series_io.hpp"
#include "printers.hpp"

namespace {

using mocklab::make_rational;
using mocklab::Rational;
using namespace mocklab::qseries;

TruncatedSeries poly(std::int64_t order, const std::vector<std::pair<int, int>>& terms, std::int64_t lattice = 1) {
  TruncatedSeries s(lattice, Rational(order));
  for (const auto& [e, c] : terms) {
    s.add_term(make_rational(e, lattice), c);
  }
  return s;
}

TruncatedSeries random_series(std::mt19937_64& rng, std::int64_t order, bool unit_lead = false) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  TruncatedSeries s(1, Rational(order));
  for (std::int64_t k = 0; k < order; ++k) {
    s.add_at_index(k, make_rational(coeff(rng), den(rng)));
  }
  if (unit_lead) {
    s.add_at_index(0, 1 - s.coeff(0));
  }
  return s;
}

TEST(Series, AddIdentityAndCancellation) {
  const auto a = poly(5, {{0, 1}, {1, 1}});
  EXPECT_EQ(series_add(a, TruncatedSeries(1, 5)), a);

  const auto b = poly(3, {{0, -1}, {1, -1}, {2, 1}});
  const auto sum = series_add(a, b);
  EXPECT_EQ(sum, poly(3, {{2, 1}}));
  EXPECT_EQ(sum.order(), 3);
}

TEST(Series, E2PlusNegationIsZero) {
  const auto e2 = eisenstein_E2(3);
  const auto zero = series_add(e2, series_neg(e2));
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.order(), 3);
}

TEST(Series, ZeroCoefficientsAreNotStored) {
  TruncatedSeries s(1, 4);
  s.add_term(1, 3);
  s.add_term(1, -3);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.min_exp(), 0);
  s.add_term(10, 1);  // beyond the order: dropped
  EXPECT_TRUE(s.is_zero());
}

TEST(Series, CoefficientAccessErrors) {
  const auto s = poly(4, {{0, 1}});
  EXPECT_THROW(s.coeff(4), std::out_of_range);
  EXPECT_THROW(s.coeff(make_rational(1, 2)), LatticeMismatch);
  EXPECT_EQ(s.coeff(3), 0);
}

TEST(Series, MultiplyExamples) {
  EXPECT_EQ(poly(10, {{0, 1}, {1, 1}}) * poly(10, {{0, 1}, {1, -1}}), poly(10, {{0, 1}, {2, -1}}));
  const auto s = poly(6, {{0, 2}, {3, -7}});
  EXPECT_EQ(s * TruncatedSeries::constant(1, 1, 6), s);
  const auto one = eta_euler(40) * partition_series(40);
  EXPECT_EQ(one, TruncatedSeries::constant(1, 1, 40));
}

TEST(Series, MultiplyOrderRule) {
  // orders 5 and 7, min exponents 2 and 1: min(5 + 1, 7 + 2) = 6
  const auto a = poly(5, {{2, 1}});
  const auto b = poly(7, {{1, 1}, {3, 1}});
  const auto prod = a * b;
  EXPECT_EQ(prod.order(), 6);
  EXPECT_EQ(prod, poly(6, {{3, 1}, {5, 1}}));
}

TEST(Series, LatticeMismatchIsAnError) {
  const auto a = poly(3, {{0, 1}}, 1);
  const auto b = poly(3, {{1, 1}}, 2);
  EXPECT_THROW(series_add(a, b), LatticeMismatch);
  EXPECT_THROW(series_mul(a, b), LatticeMismatch);
  EXPECT_EQ(series_add(a.relattice(2), b), poly(3, {{0, 1}, {1, 1}}, 2));
  EXPECT_THROW(b.relattice(3), LatticeMismatch);
}

TEST(Series, InvertExamples) {
  const auto geo = series_invert(poly(6, {{0, 1}, {1, -1}}), 6);
  EXPECT_EQ(geo, poly(6, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}}));
  EXPECT_EQ(series_invert(TruncatedSeries::constant(1, 1, 8), 8), TruncatedSeries::constant(1, 1, 8));
  EXPECT_THROW(series_invert(TruncatedSeries(1, 5), 5), std::domain_error);

  const auto p = series_invert(eta_euler(60), 60);
  EXPECT_EQ(p.coeff(9), 30);
}

TEST(Series, InvertWithLeadingPower) {
  // q^2 (1 - q) inverts to q^-2 (1 + q + ...), valid below 8 - 2*2 = 4
  const auto a = poly(8, {{2, 1}, {3, -1}});
  const auto inv = series_invert(a, 100);
  EXPECT_EQ(inv.order(), 4);
  EXPECT_EQ(inv.min_exp(), -2);
  const auto one = a * inv;
  EXPECT_EQ(one.truncated(2), TruncatedSeries::constant(1, 1, 2));
}

TEST(Series, InvertRoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_series(rng, 20, true);
    const auto one = a * series_invert(a, 20);
    EXPECT_EQ(one, TruncatedSeries::constant(1, 1, 20)) << "trial " << trial;
  }
}

TEST(Series, RingLawsProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_series(rng, 12);
    const auto b = random_series(rng, 9);
    const auto c = random_series(rng, 15);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    // both sides share the same truncation rule only when compared on a common order
    const auto lhs = a * (b + c);
    const auto rhs = a * b + a * c;
    const Rational order = std::min(lhs.order(), rhs.order());
    EXPECT_EQ(lhs.truncated(order), rhs.truncated(order));
  }
}

TEST(Series, GeometricExpandExamples) {
  EXPECT_EQ(geometric_expand(1, 0, 1, 4), poly(4, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
  // q / (1 - q^-1) = -q^2 / (1 - q)
  const auto neg = geometric_expand(1, 1, -1, 4);
  EXPECT_EQ(neg, poly(4, {{2, -1}, {3, -1}}));
  // multiplying back by (1 - q^-1) q recovers q^2 * (q / (1 - q^-1)) (1 - q^-1) / q = q up to truncation
  const auto back = neg * poly(4, {{0, 1}, {1, -1}});
  EXPECT_EQ(back.truncated(4), poly(4, {{2, -1}}));

  const auto halves = geometric_expand(2, make_rational(1, 2), 3, 7);
  EXPECT_EQ(halves.lattice(), 2);
  EXPECT_EQ(halves, poly(7, {{1, 2}, {7, 2}, {13, 2}}, 2));
  EXPECT_THROW(geometric_expand(1, 0, 0, 4), std::domain_error);
}

TEST(Series, ShiftTruncateScale) {
  const auto s = poly(5, {{0, 1}, {2, 3}});
  const auto t = s.shifted(2);
  EXPECT_EQ(t.order(), 7);
  EXPECT_EQ(t.coeff(4), 3);
  EXPECT_EQ(s.truncated(2), poly(2, {{0, 1}}));
  EXPECT_EQ(s.scaled(make_rational(1, 3)).coeff(2), 1);
  EXPECT_TRUE(s.scaled(0).is_zero());
}

TEST(SeriesEval, Basics) {
  const std::complex<double> tau(0.1, 0.7);
  EXPECT_EQ(series_eval_num(TruncatedSeries(1, 5), tau).value, std::complex<double>(0));
  EXPECT_NEAR(std::abs(series_eval_num(TruncatedSeries::constant(1, 1, 5), tau).value - 1.0), 0, 1e-15);
  EXPECT_THROW(series_eval_num(TruncatedSeries(1, 5), {0.1, 0.0}), std::domain_error);
}

TEST(SeriesEval, EtaAgainstFiniteProduct) {
  const auto eta = eta_euler(200);
  const auto v = series_eval_num(eta, {0.0, 1.0});
  double prod = 1;
  for (int n = 1; n <= 200; ++n) {
    prod *= 1 - std::exp(-2 * std::numbers::pi * n);
  }
  EXPECT_NEAR(v.value.real(), prod, 1e-12);
  EXPECT_NEAR(v.value.imag(), 0, 1e-12);
  EXPECT_LT(v.tail_bound, 1e-100);
}

TEST(SeriesIO, TextAndJsonRoundTrip) {
  auto s = poly(9, {{0, 1}, {3, -2}}, 2);
  s.add_term(make_rational(5, 2), make_rational(-7, 3));
  EXPECT_EQ(from_text(to_text(s)), s);
  EXPECT_EQ(from_json(to_json(s)), s);

  // coefficients beyond 64 bits survive the JSON path
  const auto p = partition_series(500);
  EXPECT_EQ(from_json(to_json(p)), p);
}

TEST(SeriesIO, TextFormat) {
  const auto s = poly(3, {{1, -2}}, 2);
  EXPECT_EQ(to_text(s), "ORDER 3/1 LATTICE 2\n-2/1 1/2\n");
  EXPECT_THROW(from_text("garbage"), std::invalid_argument);
}

}  // namespace
