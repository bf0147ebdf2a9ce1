#pragma once

#include <cstdint>
#include <vector>

#include "mocklab/series.hpp"

namespace mocklab::qseries {

/// Table of sigma(n) = sum of the divisors of n, for 1 <= n <= max().
class SigmaCache {
 public:
  explicit SigmaCache(std::int64_t max_n);

  std::int64_t max() const noexcept { return static_cast<std::int64_t>(table_.size()) - 1; }
  /// Throws std::out_of_range outside [1, max()].
  std::int64_t operator()(std::int64_t n) const;

 private:
  std::vector<std::int64_t> table_;
};

/// Sum of divisors by trial division. Throws for n <= 0.
std::int64_t sigma1(std::int64_t n);

/// sigma extended to rationals: 0 unless x is a positive integer.
std::int64_t sigma1(const Rational& x);

enum class EtaMethod { pentagonal, product };

/// prod_{n>=1} (1 - q^n) below `order`, without the q^(1/24) prefactor.
TruncatedSeries eta_euler(const Rational& order, EtaMethod method = EtaMethod::pentagonal);

/// P(q) = 1/prod(1 - q^n) = sum p(n) q^n.
TruncatedSeries partition_series(const Rational& order);

/// Ramanujan's third-order f(q) = 1 + sum_{n>=1} q^(n^2) / (-q;q)_n^2.
TruncatedSeries ramanujan_f_series(const Rational& order);

/// E2 = 1 - 24 sum sigma(n) q^n.
TruncatedSeries eisenstein_E2(const Rational& order);

}  // namespace mocklab::qseries
