#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mocklab/primes.hpp"
#include "mocklab/rational.hpp"
#include "mocklab/series.hpp"

namespace mocklab::mock {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shadow data (A, B, eps, kappa) of the family member f_{A/B,eps,kappa}.
///
/// Only obtainable through validate_params, so every instance satisfies
/// gcd(A, B) = 1, 0 < A < B and B does not divide 2A.
class ShadowParams {
 public:
  std::int64_t A() const noexcept { return a_; }
  std::int64_t B() const noexcept { return b_; }
  int eps() const noexcept { return eps_; }
  int kappa() const noexcept { return kappa_; }

  /// A as supplied by the caller, before reduction modulo B.
  std::int64_t input_A() const noexcept { return input_a_; }
  bool canonicalized() const noexcept { return input_a_ != a_; }

  /// B* = B/2 for even B, B for odd B.
  const Rational& b_star() const noexcept { return b_star_; }
  /// s = B/2 - A.
  const Rational& s() const noexcept { return s_; }

  friend bool operator==(const ShadowParams&, const ShadowParams&) = default;

 private:
  friend ShadowParams validate_params(std::int64_t, std::int64_t, int, int);
  ShadowParams() = default;

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  int eps_ = 0;
  int kappa_ = 0;
  std::int64_t input_a_ = 0;
  Rational b_star_;
  Rational s_;
};

/// Checks and canonicalizes the parameters; A >= B is reduced modulo B and
/// the original value kept in input_A(). Throws InvalidParams.
ShadowParams validate_params(std::int64_t A, std::int64_t B, int eps, int kappa);

/// Reference (A, B) pairs {(1,6),(1,4),(1,3),(2,5),(3,8),(5,12),(1,12)}.
const std::vector<std::pair<std::int64_t, std::int64_t>>& reference_pairs();
/// reference_pairs() crossed with eps, kappa in {0, 1} (28 members).
std::vector<ShadowParams> reference_grid();

struct DivisorPair {
  std::int64_t a;
  std::int64_t b;

  friend bool operator==(const DivisorPair&, const DivisorPair&) = default;
  friend auto operator<=>(const DivisorPair&, const DivisorPair&) = default;
};

/// Coefficient c(n) in f*Theta(B tau) = (B*/B) sum_{n>=0} c(n) q^(n/2).
struct CoefficientRecord {
  std::int64_t n = 0;
  std::int64_t divisor_part = 0;
  std::int64_t sigma_part = 0;
  std::int64_t c = 0;
  std::vector<DivisorPair> pairs;
};

/// Sign of the sigma(n/2) term: c(n) = divisor_part + kSigmaSign * 2 sigma(n/2).
/// Fixed by agreement with the Lambert-series construction.
inline constexpr int kSigmaSign = -1;

/// Largest index accepted by the single-coefficient routines.
inline constexpr std::int64_t kMaxCoefficientIndex = 1'000'000'000'000'000;

/// Number of pairs with |b| = B|a| met by enumerate_Vn since process start.
/// Valid parameters make this impossible; enumeration throws std::logic_error
/// if it ever happens.
std::uint64_t sign_degeneracy_count() noexcept;

/// (B*)^kappa sum_{m in Z} (-1)^(eps m) (m + A/B)^kappa q^(B (m + A/B)^2), lattice B.
qseries::TruncatedSeries theta_unary_Btau(const ShadowParams& p, const Rational& order);

/// f*Theta(B tau) from the Lambert series, lattice 2. `overscan` extends the
/// summation range past the analytic bound (testing aid).
qseries::TruncatedSeries product_series_thm1(const ShadowParams& p, const Rational& order, int overscan = 0);

/// Signed divisor pairs (a, b), ab = n, b + Ba = 2A (mod 2B), sorted by (|a|, sign a).
std::vector<DivisorPair> enumerate_Vn(const ShadowParams& p, std::int64_t n,
                                      const primes::FactorBudget& budget = {});
std::vector<DivisorPair> enumerate_Vn(const ShadowParams& p, std::int64_t n, const primes::Factorization& fact);

/// c(n) from the divisor-sum closed form. Needs only the factorization of n.
CoefficientRecord coefficient_closed_form(const ShadowParams& p, std::int64_t n,
                                          const primes::FactorBudget& budget = {});

/// c(n) read off the Lambert series one coefficient at a time, in
/// O(sqrt(n/B)) steps and without factoring. Independent of the V_n route.
Rational coefficient_lambert(const ShadowParams& p, std::int64_t n);

/// f*Theta(B tau) assembled from coefficient_closed_form, lattice 2.
qseries::TruncatedSeries product_series_closed(const ShadowParams& p, const Rational& order);

/// f = (f*Theta)/Theta on lattice 2B. Throws std::domain_error when Theta
/// has no term below the order.
qseries::TruncatedSeries mock_part_series(const ShadowParams& p, const Rational& order);

/// 1 iff b or -b satisfies x + B(n/x) = 2A (mod 2B). Requires b | n.
int psi(const ShadowParams& p, std::int64_t n, std::int64_t b);
/// Same indicator from raw (A, B); used where only B's residue matters.
int psi(std::int64_t A, std::int64_t B, std::int64_t n, std::int64_t b);

/// U_n = {(s, m) : n = (s - m)(2A + B(s + m))} by direct search over s - m.
std::vector<std::pair<std::int64_t, std::int64_t>> enumerate_Un(const ShadowParams& p, std::int64_t n);

/// (s, m) -> (s - m, 2A + B(s + m)).
DivisorPair un_to_vn(const ShadowParams& p, std::int64_t s, std::int64_t m);

}  // namespace mocklab::mock
