#include "mocklab/mock_family.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "mocklab/classical.hpp"

namespace mocklab::mock {

namespace {

using qseries::TruncatedSeries;
__extension__ typedef __int128 i128;

std::atomic<std::uint64_t> g_degeneracies{0};

std::int64_t floor_mod(i128 x, std::int64_t m) {
  i128 r = x % m;
  if (r < 0) {
    r += m;
  }
  return static_cast<std::int64_t>(r);
}

bool in_vn(const ShadowParams& p, std::int64_t a, std::int64_t b) {
  const i128 lhs = static_cast<i128>(b) + static_cast<i128>(p.B()) * a - 2 * static_cast<i128>(p.A());
  return floor_mod(lhs, 2 * p.B()) == 0;
}

int eps_sign(const ShadowParams& p, std::int64_t n) {
  return (p.eps() == 1 && (n % 2 != 0)) ? -1 : 1;
}

void require_index(std::int64_t n) {
  if (n <= 0) {
    throw std::invalid_argument("coefficient index must be positive, got " + std::to_string(n));
  }
  if (n > kMaxCoefficientIndex) {
    throw primes::FactorizationError("index " + std::to_string(n) + " exceeds the supported bound");
  }
}

// A Lambert term coeff * q^(head/2) / (1 - q^(step/2)), already normalized
// so that step > 0 (indices are in half-units).
struct LambertTerm {
  Rational coeff;
  std::int64_t head;
  std::int64_t step;
};

LambertTerm normalized(Rational coeff, std::int64_t head, std::int64_t step) {
  if (step < 0) {
    return {-coeff, head - step, -step};
  }
  return {std::move(coeff), head, step};
}

// Every term with |n| >= 3 has normalized head index >= B|n|(|n| - 2) (uses
// 0 < A < B), so once that exceeds the largest wanted index the rest vanish.
std::int64_t lambert_range(const ShadowParams& p, std::int64_t max_index) {
  std::int64_t n = 3;
  while (static_cast<i128>(p.B()) * n * (n - 2) <= max_index) {
    ++n;
  }
  return n;
}

// Visits the Lambert terms of Sigma_1 + (-1)^kappa Sigma_2 for |n| <= range.
template <typename Visit>
void for_each_lambert_term(const ShadowParams& p, std::int64_t range, Visit&& visit) {
  const std::int64_t A = p.A();
  const std::int64_t B = p.B();
  const Rational two_a_over_b = make_rational(2 * A, B);
  const int kappa_sign = p.kappa() == 1 ? -1 : 1;
  for (std::int64_t n = -range; n <= range; ++n) {
    const int sign = eps_sign(p, n);
    if (n != 0) {
      // (-1)^(eps n) n q^((Bn^2 + 2An)/2) / (1 - q^(Bn))
      visit(normalized(Rational(sign * n), B * n * n + 2 * A * n, 2 * B * n));
    }
    // (-1)^kappa (-1)^(eps n) (n - 2A/B) q^((Bn^2 - 2An)/2) / (1 - q^(Bn - 2A))
    visit(normalized(kappa_sign * sign * (Rational(n) - two_a_over_b), B * n * n - 2 * A * n,
                     2 * (B * n - 2 * A)));
  }
}

// Divisor part and pair list from a known factorization.
std::int64_t divisor_part_from(const ShadowParams& p, const std::vector<DivisorPair>& pairs) {
  i128 total = 0;
  for (const auto& [a, b] : pairs) {
    const i128 abs_b = b < 0 ? -static_cast<i128>(b) : b;
    const i128 abs_ba = static_cast<i128>(p.B()) * (a < 0 ? -a : a);
    const i128 smaller = std::min(abs_b, abs_ba);
    int sign = 1;
    if (p.kappa() == 1 && abs_b < abs_ba) {
      sign = -1;
    }
    total += sign * eps_sign(p, a) * smaller;
  }
  return static_cast<std::int64_t>(total);
}

std::int64_t sigma_from(const primes::Factorization& fact) {
  std::int64_t total = 1;
  for (const auto& [prime, e] : fact) {
    std::int64_t term = 1;
    std::int64_t power = 1;
    for (int i = 0; i < e; ++i) {
      power *= static_cast<std::int64_t>(prime);
      term += power;
    }
    total *= term;
  }
  return total;
}

}  // namespace

ShadowParams validate_params(std::int64_t A, std::int64_t B, int eps, int kappa) {
  if (A <= 0 || B <= 0) {
    throw InvalidParams("A and B must be positive (got A=" + std::to_string(A) + ", B=" + std::to_string(B) + ")");
  }
  if ((eps != 0 && eps != 1) || (kappa != 0 && kappa != 1)) {
    throw InvalidParams("eps and kappa must be 0 or 1");
  }
  if (std::gcd(A, B) != 1) {
    throw InvalidParams("A and B must be coprime (gcd=" + std::to_string(std::gcd(A, B)) + ")");
  }
  if ((2 * A) % B == 0) {
    throw InvalidParams("B divides 2A (degenerate pole in the Lambert series)");
  }
  if (B > 1'000'000) {
    throw InvalidParams("B too large (limit 10^6)");
  }
  ShadowParams p;
  p.input_a_ = A;
  p.a_ = A % B;
  p.b_ = B;
  p.eps_ = eps;
  p.kappa_ = kappa;
  p.b_star_ = (B % 2 == 0) ? make_rational(B, 2) : make_rational(B);
  p.s_ = make_rational(B, 2) - p.a_;
  return p;
}

const std::vector<std::pair<std::int64_t, std::int64_t>>& reference_pairs() {
  static const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {
      {1, 6}, {1, 4}, {1, 3}, {2, 5}, {3, 8}, {5, 12}, {1, 12}};
  return pairs;
}

std::vector<ShadowParams> reference_grid() {
  std::vector<ShadowParams> out;
  for (const auto& [A, B] : reference_pairs()) {
    for (int eps = 0; eps <= 1; ++eps) {
      for (int kappa = 0; kappa <= 1; ++kappa) {
        out.push_back(validate_params(A, B, eps, kappa));
      }
    }
  }
  return out;
}

std::uint64_t sign_degeneracy_count() noexcept { return g_degeneracies.load(); }

TruncatedSeries theta_unary_Btau(const ShadowParams& p, const Rational& order) {
  const std::int64_t A = p.A();
  const std::int64_t B = p.B();
  TruncatedSeries out(B, order);
  // exponent (Bm + A)^2 / B, i.e. index (Bm + A)^2 on lattice B
  const std::int64_t end = out.end_index();
  const std::int64_t reach = static_cast<std::int64_t>(std::sqrt(static_cast<double>(std::max<std::int64_t>(end, 0)))) / B + 2;
  for (std::int64_t m = -reach; m <= reach; ++m) {
    const std::int64_t root = B * m + A;
    const std::int64_t idx = root * root;
    if (idx >= end) {
      continue;
    }
    Rational c = eps_sign(p, m);
    if (p.kappa() == 1) {
      c *= p.b_star() * make_rational(root, B);
    }
    out.add_at_index(idx, c);
  }
  return out;
}

TruncatedSeries product_series_thm1(const ShadowParams& p, const Rational& order, int overscan) {
  TruncatedSeries out(2, order);
  const std::int64_t end = out.end_index();
  const std::int64_t range = lambert_range(p, std::max<std::int64_t>(end, 0)) + std::max(overscan, 0);
  for_each_lambert_term(p, range, [&](const LambertTerm& t) {
    if (t.head >= end) {
      return;
    }
    out += qseries::geometric_expand(p.b_star() * t.coeff, make_rational(t.head, 2), make_rational(t.step, 2),
                                     order, 2);
  });
  const Rational e2_scale = p.b_star() / (12 * p.B());
  out += qseries::eisenstein_E2(order).relattice(2).scaled(e2_scale);
  return out;
}

std::vector<DivisorPair> enumerate_Vn(const ShadowParams& p, std::int64_t n, const primes::Factorization& fact) {
  require_index(n);
  std::vector<DivisorPair> out;
  for (const auto d64 : primes::divisors(fact)) {
    const auto d = static_cast<std::int64_t>(d64);
    for (const std::int64_t a : {-d, d}) {
      const std::int64_t b = n / a;
      if (!in_vn(p, a, b)) {
        continue;
      }
      if (static_cast<i128>(b < 0 ? -b : b) == static_cast<i128>(p.B()) * d) {
        g_degeneracies.fetch_add(1);
        throw std::logic_error("sign degeneracy |b| = B|a| in V_" + std::to_string(n));
      }
      out.push_back({a, b});
    }
  }
  return out;
}

std::vector<DivisorPair> enumerate_Vn(const ShadowParams& p, std::int64_t n, const primes::FactorBudget& budget) {
  require_index(n);
  return enumerate_Vn(p, n, primes::factorize(static_cast<std::uint64_t>(n), budget));
}

CoefficientRecord coefficient_closed_form(const ShadowParams& p, std::int64_t n, const primes::FactorBudget& budget) {
  require_index(n);
  primes::Factorization fact = primes::factorize(static_cast<std::uint64_t>(n), budget);
  CoefficientRecord rec;
  rec.n = n;
  rec.pairs = enumerate_Vn(p, n, fact);
  rec.divisor_part = divisor_part_from(p, rec.pairs);
  if (n % 2 == 0) {
    // factorization of n/2: drop one factor of 2
    fact.front().exponent -= 1;
    if (fact.front().exponent == 0) {
      fact.erase(fact.begin());
    }
    rec.sigma_part = kSigmaSign * 2 * sigma_from(fact);
  }
  rec.c = rec.divisor_part + rec.sigma_part;
  return rec;
}

Rational coefficient_lambert(const ShadowParams& p, std::int64_t n) {
  require_index(n);
  Rational total;
  const std::int64_t range = lambert_range(p, n + 1);
  for_each_lambert_term(p, range, [&](const LambertTerm& t) {
    if (t.head <= n && (n - t.head) % t.step == 0) {
      total += t.coeff;
    }
  });
  // E2/(12B) contributes -24 sigma(n/2)/(12B) at q^(n/2)
  Rational c = total * p.B();
  if (n % 2 == 0) {
    c -= 2 * qseries::sigma1(n / 2);
  }
  return c;
}

TruncatedSeries product_series_closed(const ShadowParams& p, const Rational& order) {
  TruncatedSeries out(2, order);
  out.add_at_index(0, p.b_star() / (12 * p.B()));
  const Rational scale = p.b_star() / p.B();
  const std::int64_t end = out.end_index();
  for (std::int64_t n = 1; n < end; ++n) {
    const auto rec = coefficient_closed_form(p, n);
    out.add_at_index(n, scale * rec.c);
  }
  return out;
}

TruncatedSeries mock_part_series(const ShadowParams& p, const Rational& order) {
  const std::int64_t lattice = 2 * p.B();
  const TruncatedSeries theta = theta_unary_Btau(p, order).relattice(lattice);
  if (theta.is_zero()) {
    throw std::domain_error("Theta(B tau) has no terms below order " + to_string(order));
  }
  const TruncatedSeries product = product_series_thm1(p, order).relattice(lattice);
  return qseries::series_mul(product, qseries::series_invert(theta, order));
}

int psi(std::int64_t A, std::int64_t B, std::int64_t n, std::int64_t b) {
  if (b == 0 || n % b != 0) {
    throw std::invalid_argument("psi requires b | n (b=" + std::to_string(b) + ", n=" + std::to_string(n) + ")");
  }
  const i128 t = static_cast<i128>(b) + static_cast<i128>(B) * (n / b);
  const std::int64_t mod = 2 * B;
  return (floor_mod(t - 2 * A, mod) == 0 || floor_mod(-t - 2 * A, mod) == 0) ? 1 : 0;
}

int psi(const ShadowParams& p, std::int64_t n, std::int64_t b) { return psi(p.A(), p.B(), n, b); }

std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_Un(const ShadowParams& p, std::int64_t n) {
  require_index(n);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t diff = -n; diff <= n; ++diff) {
    if (diff == 0 || n % diff != 0) {
      continue;
    }
    // 2A + B(s + m) = n / diff
    const std::int64_t rest = n / diff - 2 * p.A();
    if (rest % p.B() != 0) {
      continue;
    }
    const std::int64_t sum = rest / p.B();
    if ((sum + diff) % 2 != 0) {
      continue;
    }
    out.emplace_back((sum + diff) / 2, (sum - diff) / 2);
  }
  return out;
}

DivisorPair un_to_vn(const ShadowParams& p, std::int64_t s, std::int64_t m) {
  return {s - m, 2 * p.A() + p.B() * (s + m)};
}

}  // namespace mocklab::mock
