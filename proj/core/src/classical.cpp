#include "mocklab/classical.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mocklab::qseries {

namespace {

void require_nonnegative(const Rational& order, const char* what) {
  if (order < 0) {
    throw std::invalid_argument(std::string(what) + ": order must be nonnegative");
  }
}

}  // namespace

SigmaCache::SigmaCache(std::int64_t max_n) : table_(static_cast<std::size_t>(std::max<std::int64_t>(max_n, 0) + 1), 0) {
  for (std::int64_t d = 1; d <= max_n; ++d) {
    for (std::int64_t m = d; m <= max_n; m += d) {
      table_[static_cast<std::size_t>(m)] += d;
    }
  }
}

std::int64_t SigmaCache::operator()(std::int64_t n) const {
  if (n < 1 || n > max()) {
    throw std::out_of_range("SigmaCache: n=" + std::to_string(n) + " outside [1, " + std::to_string(max()) + "]");
  }
  return table_[static_cast<std::size_t>(n)];
}

std::int64_t sigma1(std::int64_t n) {
  if (n <= 0) {
    throw std::invalid_argument("sigma1 requires a positive integer");
  }
  std::int64_t total = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) {
      continue;
    }
    std::int64_t term = 1;
    std::int64_t power = 1;
    while (n % p == 0) {
      n /= p;
      power *= p;
      term += power;
    }
    total *= term;
  }
  if (n > 1) {
    total *= n + 1;
  }
  return total;
}

std::int64_t sigma1(const Rational& x) {
  if (!is_integer(x) || x <= 0) {
    return 0;
  }
  return sigma1(to_int64(x));
}

TruncatedSeries eta_euler(const Rational& order, EtaMethod method) {
  require_nonnegative(order, "eta_euler");
  TruncatedSeries out(1, order);
  const auto end = out.end_index();
  if (method == EtaMethod::pentagonal) {
    // sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
    out.add_at_index(0, 1);
    for (std::int64_t k = 1;; ++k) {
      const std::int64_t g1 = k * (3 * k - 1) / 2;
      const std::int64_t g2 = k * (3 * k + 1) / 2;
      if (g1 >= end) {
        break;
      }
      const int sign = (k % 2 == 0) ? 1 : -1;
      out.add_at_index(g1, sign);
      out.add_at_index(g2, sign);
    }
    return out;
  }
  // Direct product, one sparse factor at a time.
  std::vector<Integer> coeffs(static_cast<std::size_t>(std::max<std::int64_t>(end, 0)));
  if (end > 0) {
    coeffs[0] = 1;
  }
  for (std::int64_t n = 1; n < end; ++n) {
    for (std::int64_t j = end - 1; j >= n; --j) {
      coeffs[static_cast<std::size_t>(j)] -= coeffs[static_cast<std::size_t>(j - n)];
    }
  }
  for (std::int64_t j = 0; j < end; ++j) {
    out.add_at_index(j, Rational{coeffs[static_cast<std::size_t>(j)]});
  }
  return out;
}

TruncatedSeries partition_series(const Rational& order) {
  require_nonnegative(order, "partition_series");
  return series_invert(eta_euler(order), order);
}

TruncatedSeries ramanujan_f_series(const Rational& order) {
  require_nonnegative(order, "ramanujan_f_series");
  TruncatedSeries out = TruncatedSeries::constant(1, 1, order);
  // (-q;q)_n^2 grows one squared factor (1 + q^n)^2 per step.
  TruncatedSeries pochhammer_sq = TruncatedSeries::constant(1, 1, order);
  for (std::int64_t n = 1; Rational(n * n) < order; ++n) {
    const TruncatedSeries factor =
        TruncatedSeries::from_terms(1, order, {{0, 1}, {n, 2}, {2 * n, 1}});
    pochhammer_sq = series_mul(pochhammer_sq, factor);
    const Rational shift(n * n);
    out += series_invert(pochhammer_sq, order - shift).shifted(shift);
  }
  return out;
}

TruncatedSeries eisenstein_E2(const Rational& order) {
  require_nonnegative(order, "eisenstein_E2");
  TruncatedSeries out(1, order);
  const auto end = out.end_index();
  out.add_at_index(0, 1);
  if (end > 1) {
    const SigmaCache sigma(end - 1);
    for (std::int64_t n = 1; n < end; ++n) {
      out.add_at_index(n, -24 * sigma(n));
    }
  }
  return out;
}

}  // namespace mocklab::qseries
