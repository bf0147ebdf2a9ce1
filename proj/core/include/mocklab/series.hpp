#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mocklab/rational.hpp"

namespace mocklab::qseries {

/// Raised when two series on different exponent lattices are combined.
class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formal Laurent series in q with rational exponents, known exactly below
/// its truncation order.
///
/// Exponents live on the lattice (1/D)Z for a fixed denominator D and are
/// stored by their integer index k = e*D. Every exponent strictly below the
/// order has its coefficient recorded (zero coefficients are implicit), and
/// nothing is known at or above the order. Values are immutable once built;
/// the mutating members exist for construction only.
class TruncatedSeries {
 public:
  using Index = std::int64_t;
  using TermMap = std::map<Index, Rational>;

  /// The zero series on lattice (1/lattice)Z, known below `order`.
  TruncatedSeries(std::int64_t lattice, Rational order);

  static TruncatedSeries constant(const Rational& c, std::int64_t lattice, Rational order);

  /// Builds a series from (exponent, coefficient) pairs; terms at or above
  /// `order` are dropped.
  static TruncatedSeries from_terms(std::int64_t lattice, Rational order,
                                    const std::vector<std::pair<Rational, Rational>>& terms);

  std::int64_t lattice() const noexcept { return lattice_; }
  const Rational& order() const noexcept { return order_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Smallest exponent with a recorded term, 0 for the zero series.
  Rational min_exp() const;

  /// Coefficient of q^e. Throws if e is off-lattice or not below the order.
  Rational coeff(const Rational& e) const;

  /// Adds c*q^e; silently ignored when e is at or above the order.
  void add_term(const Rational& e, const Rational& c);
  void add_at_index(Index k, const Rational& c);

  const TermMap& indexed() const noexcept { return terms_; }
  std::vector<std::pair<Rational, Rational>> terms() const;

  Rational exponent_of(Index k) const;
  /// Index of e on this lattice; throws if e is off-lattice.
  Index index_of(const Rational& e) const;
  /// One past the largest index known below the order.
  Index end_index() const;

  /// Same series viewed on the finer lattice (1/new_lattice)Z; new_lattice
  /// must be a multiple of the current one.
  TruncatedSeries relattice(std::int64_t new_lattice) const;
  /// Lowers the order to min(order(), new_order).
  TruncatedSeries truncated(const Rational& new_order) const;
  TruncatedSeries scaled(const Rational& c) const;
  /// Multiplication by q^e (order shifts with it).
  TruncatedSeries shifted(const Rational& e) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::int64_t lattice_;
  Rational order_;
  TermMap terms_;
};

/// Termwise sum; order = min of the operand orders.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_neg(const TruncatedSeries& a);

/// Cauchy product; order = min(order(a) + min_exp(b), order(b) + min_exp(a)).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Multiplicative inverse known below min(order, order(a) - 2*min_exp(a)).
/// Throws std::domain_error for the zero series.
TruncatedSeries series_invert(const TruncatedSeries& a, const Rational& order);

/// Expansion of c*q^h/(1 - q^k) as a series bounded below. Negative k is
/// first rewritten as -q^(h-k)/(1 - q^(-k)). A lattice of 0 means the
/// smallest lattice containing h and k. Throws std::domain_error for k = 0.
TruncatedSeries geometric_expand(const Rational& c, const Rational& h, const Rational& k,
                                 const Rational& order, std::int64_t lattice = 0);

struct NumericValue {
  std::complex<double> value;
  /// Crude bound |q|^order / (1 - |q|) on the unknown tail, per unit coefficient.
  double tail_bound = 0.0;
};

/// Evaluates the series at q = exp(2 pi i tau). Throws if Im(tau) <= 0.
NumericValue series_eval_num(const TruncatedSeries& s, std::complex<double> tau);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return series_add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return series_sub(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a) { return series_neg(a); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

}  // namespace mocklab::qseries
