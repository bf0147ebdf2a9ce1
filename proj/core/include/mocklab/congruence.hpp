#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mocklab/mock_family.hpp"
#include "mocklab/primes.hpp"
#include "mocklab/rational.hpp"
#include "mocklab/series.hpp"

namespace mocklab::congruence {

/// p-adic valuation of a truncated series. An empty value means +infinity
/// (the series vanishes below its order). Always a certificate for exponents
/// below `order` only.
struct Valuation {
  std::optional<long> value;
  Rational order;
  bool range_limited = true;

  bool infinite() const noexcept { return !value.has_value(); }
};

/// Throws std::invalid_argument if p is not prime.
Valuation padic_valuation(const qseries::TruncatedSeries& s, std::uint64_t p);

struct CongruenceResult {
  bool holds = false;
  /// Smallest exponent where nu_p(g - h) >= nu_p(g) + m fails.
  std::optional<Rational> witness_exponent;
  Valuation valuation_g;
  Valuation valuation_diff;
  /// The comparison covers exponents below this order.
  Rational order;

  explicit operator bool() const noexcept { return holds; }
};

/// g = h (mod p^m) in the sense nu_p(g - h) >= nu_p(g) + m, over exponents
/// below min(order g, order h). Throws LatticeMismatch on differing lattices.
CongruenceResult congruent_mod(const qseries::TruncatedSeries& g, const qseries::TruncatedSeries& h, std::uint64_t p,
                               int m);

struct PartitionCongruenceCase {
  std::int64_t modulus;
  std::int64_t offset;
  std::int64_t checked = 0;
  std::optional<std::int64_t> first_failure = {};
};

struct PartitionCongruenceReport {
  bool pass = false;
  std::int64_t bound = 0;
  std::vector<PartitionCongruenceCase> cases;
};

/// p(5n+4) = 0 (5), p(7n+5) = 0 (7), p(11n+6) = 0 (11) for 0 <= n <= bound.
PartitionCongruenceReport verify_partition_congruences(std::int64_t bound);

struct SearchBounds {
  std::int64_t q_min = 1000;
  std::int64_t q_max = 100'000;
  std::int64_t k_max = 10'000;
  /// Stop after this many candidate primes Q (per m for the mod 4 search); 0 = no limit.
  std::int64_t q_count_max = 0;
  unsigned jobs = 1;
};

/// Default bounds for find_witness_mod4: 32 candidate primes per m.
SearchBounds default_mod4_bounds();

struct SearchStats {
  std::int64_t primes_tried = 0;
  std::int64_t coefficients_evaluated = 0;
  std::int64_t factor_skips = 0;
};

struct WitnessValidation {
  bool valid = false;
  std::int64_t c_trial_division = 0;
  std::optional<Rational> c_lambert;
};

struct WitnessReport {
  mock::ShadowParams params;
  std::uint64_t p = 0;
  bool found = false;
  int m = 0;
  std::int64_t Q = 0;
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::int64_t c_mod = 0;
  SearchStats stats = {};
  WitnessValidation validation = {};
  /// Exponents m tried (mod 4 search); every entry but the last failed.
  std::vector<int> m_tried = {};
};

/// Indices at or below this are also rechecked through the Lambert route.
inline constexpr std::int64_t kLambertRecheckMax = 100'000'000'000;

/// First (Q, k) with Q = -1 (mod pr) prime, gcd(k, Q pr) = 1 and
/// c(Q pr^m k) != 0 (mod pr). Throws std::invalid_argument unless pr is an odd prime.
WitnessReport find_witness_odd(const mock::ShadowParams& params, std::uint64_t pr, int m,
                               const SearchBounds& bounds = {});

/// First (m, Q, k) with Q = +-1 (mod B) prime, k odd, gcd(k, Q) = 1 and
/// c(Q 2^m k) = 2 (mod 4). m runs over [m_min, m_max], m_min >= 2.
WitnessReport find_witness_mod4(const mock::ShadowParams& params, int m_min = 2, int m_max = 8,
                                const SearchBounds& bounds = default_mod4_bounds());

/// Recomputes c(n) by trial-division enumeration of V_n and, for small enough
/// n, from the Lambert series; fills report.validation.
void validate_witness(WitnessReport& report);

struct PsiLemmaRow {
  std::int64_t x;
  int psi_4q_2x;
  int psi_4q_4x;
  int psi_8q_2x;
  int psi_8q_8x;
};

struct PsiLemmaReport {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t Q = 0;
  bool holds = false;
  std::vector<PsiLemmaRow> rows;  // x = 1 and x = Q
};

/// Lemma identities for B = 6 (all four indicators 1) and B = 10
/// (Psi_8Q(2x) = Psi_8Q(8x) = Psi_4Q(2x) != Psi_4Q(4x)), x in {1, Q}.
/// Throws std::invalid_argument for other B, gcd(A, B) != 1, or Q not a
/// prime > 5 coprime to B.
PsiLemmaReport check_psi_lemma(std::int64_t B, std::int64_t A, std::int64_t Q);

/// For B = 2 (mod 4), B > 10: each of Psi_4Q(2x)+Psi_4Q(4x), Psi_8Q(2x)+Psi_8Q(8x)
/// and Psi_4Q(4x)+Psi_8Q(8x) is at most 1, x in {1, Q}.
PsiLemmaReport check_psi_lemma_general(std::int64_t B, std::int64_t A, std::int64_t Q);

struct Corollary1Result {
  Valuation j;
  qseries::TruncatedSeries m;
  /// p^-j m, present only when j < 0.
  std::optional<qseries::TruncatedSeries> g = {};
  bool case_i_applies = false;
  bool verified = false;
};

/// Splits H = f_series + m and, when nu_p(H) = j < 0, verifies
/// p^-j H = p^-j m (mod p^-j). Throws std::domain_error if that case applies
/// but f_series is not p-integral.
Corollary1Result corollary1_decompose(const qseries::TruncatedSeries& H, const qseries::TruncatedSeries& f_series,
                                      std::uint64_t p);

}  // namespace mocklab::congruence
