#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mocklab::primes {

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Caps the work spent in Pollard's rho per factorization.
struct FactorBudget {
  std::uint64_t rho_iterations = 2'000'000;
};

/// Reads MOCKLAB_FACTOR_BUDGET (rho iterations) if set, otherwise the default.
FactorBudget factor_budget_from_env();

/// Deterministic for every 64-bit input (Miller-Rabin, first 12 prime bases).
bool is_prime(std::uint64_t n);

/// Prime factorization with ascending primes. factorize(1) is empty.
/// Throws std::invalid_argument for 0 and FactorizationError when the rho
/// budget runs out.
Factorization factorize(std::uint64_t n, const FactorBudget& budget = {});

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(const Factorization& f);

std::uint64_t multiply_out(const Factorization& f);

}  // namespace mocklab::primes
