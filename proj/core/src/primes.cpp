#include "mocklab/primes.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <string>

namespace mocklab::primes {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) {
      result = mul_mod(result, base, m);
    }
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr std::array<u64, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Brent's variant; returns a nontrivial factor of odd composite n, or 0 when
// the budget is exhausted.
u64 rho_factor(u64 n, u64& iterations_left) {
  for (u64 c = 1; c < n; ++c) {
    u64 y = 2;
    u64 x = 2;
    u64 g = 1;
    u64 q = 1;
    u64 ys = 2;
    const u64 block = 128;
    auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) {
        y = step(y);
      }
      for (u64 k = 0; k < r && g == 1; k += block) {
        ys = y;
        const u64 lim = std::min(block, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        if (iterations_left <= lim) {
          return 0;
        }
        iterations_left -= lim;
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) {
      return g;
    }
  }
  return 0;
}

void factor_into(u64 n, std::vector<u64>& out, u64& iterations_left, u64 original) {
  if (n == 1) {
    return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = rho_factor(n, iterations_left);
  if (d == 0) {
    throw FactorizationError("factorization of " + std::to_string(original) + " exceeded the rho budget");
  }
  factor_into(d, out, iterations_left, original);
  factor_into(n / d, out, iterations_left, original);
}

}  // namespace

FactorBudget factor_budget_from_env() {
  FactorBudget budget;
  if (const char* env = std::getenv("MOCKLAB_FACTOR_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      budget.rho_iterations = v;
    }
  }
  return budget;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (u64 p : kWitnesses) {
    if (n % p == 0) {
      return n == p;
    }
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) {
      continue;
    }
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) {
      return false;
    }
  }
  return true;
}

Factorization factorize(std::uint64_t n, const FactorBudget& budget) {
  if (n == 0) {
    throw std::invalid_argument("cannot factor 0");
  }
  const u64 original = n;
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  u64 iterations_left = budget.rho_iterations;
  factor_into(n, primes, iterations_left, original);
  std::sort(primes.begin(), primes.end());

  Factorization out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    u64 power = 1;
    for (int i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < base; ++j) {
        out.push_back(out[j] * power);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t multiply_out(const Factorization& f) {
  u64 n = 1;
  for (const auto& [p, e] : f) {
    for (int i = 0; i < e; ++i) {
      n *= p;
    }
  }
  return n;
}

}  // namespace mocklab::primes
