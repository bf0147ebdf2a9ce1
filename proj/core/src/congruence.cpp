#include "mocklab/congruence.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <thread>

#include "mocklab/classical.hpp"

namespace mocklab::congruence {

namespace {

using qseries::TruncatedSeries;
__extension__ typedef __int128 i128;

void require_prime(std::uint64_t p) {
  if (!primes::is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// One candidate outcome inside a single Q (or (m, Q)) slot.
struct SlotResult {
  std::optional<std::pair<std::int64_t, std::int64_t>> hit;  // (k, c)
  SearchStats stats;
};

// Runs `eval` over the slots in order, `jobs` at a time, and returns the
// index of the first slot with a hit. Stats are accumulated up to and
// including that slot so they do not depend on the job count.
std::optional<std::size_t> scan_slots(std::size_t count, unsigned jobs,
                                      const std::function<SlotResult(std::size_t)>& eval,
                                      std::vector<SlotResult>& results) {
  results.assign(count, {});
  jobs = std::max(1u, jobs);
  for (std::size_t start = 0; start < count; start += jobs) {
    const std::size_t stop = std::min(count, start + jobs);
    if (stop - start == 1) {
      results[start] = eval(start);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(stop - start);
      for (std::size_t i = start; i < stop; ++i) {
        workers.emplace_back([&, i] { results[i] = eval(i); });
      }
      for (auto& w : workers) {
        w.join();
      }
    }
    for (std::size_t i = start; i < stop; ++i) {
      if (results[i].hit) {
        return i;
      }
    }
  }
  return std::nullopt;
}

SearchStats sum_stats(const std::vector<SlotResult>& results, std::size_t upto) {
  SearchStats total;
  for (std::size_t i = 0; i < upto && i < results.size(); ++i) {
    total.primes_tried += results[i].stats.primes_tried;
    total.coefficients_evaluated += results[i].stats.coefficients_evaluated;
    total.factor_skips += results[i].stats.factor_skips;
  }
  return total;
}

// Primes l = A (mod B), used for the 4l / 8l style candidates.
std::vector<std::int64_t> small_ells(const mock::ShadowParams& params, std::int64_t limit, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = 2; l <= limit && out.size() < count; ++l) {
    if (floor_mod(l, params.B()) == params.A() && primes::is_prime(static_cast<std::uint64_t>(l))) {
      out.push_back(l);
    }
  }
  return out;
}

// Priority candidates first, then every k <= k_max, each k at most once.
std::vector<std::int64_t> candidate_ks(const std::vector<std::int64_t>& priority, std::int64_t k_max,
                                       const std::function<bool(std::int64_t)>& admissible) {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> seen;
  for (const auto k : priority) {
    if (k <= k_max && admissible(k) && std::find(seen.begin(), seen.end(), k) == seen.end()) {
      out.push_back(k);
      seen.push_back(k);
    }
  }
  std::sort(seen.begin(), seen.end());
  for (std::int64_t k = 1; k <= k_max; ++k) {
    if (admissible(k) && !std::binary_search(seen.begin(), seen.end(), k)) {
      out.push_back(k);
    }
  }
  return out;
}

std::vector<std::int64_t> candidate_primes(std::int64_t lo, std::int64_t hi, std::int64_t count_max,
                                           const std::function<bool(std::int64_t)>& admissible) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = std::max<std::int64_t>(lo, 2); q <= hi; ++q) {
    if (count_max > 0 && static_cast<std::int64_t>(out.size()) >= count_max) {
      break;
    }
    if (admissible(q) && primes::is_prime(static_cast<std::uint64_t>(q))) {
      out.push_back(q);
    }
  }
  return out;
}

std::optional<std::int64_t> checked_index(std::int64_t q, std::int64_t scale, std::int64_t k) {
  const i128 n = static_cast<i128>(q) * scale * k;
  if (n > mock::kMaxCoefficientIndex) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(n);
}

// Evaluates c(n) for each k in turn until `accept` holds.
SlotResult scan_ks(const mock::ShadowParams& params, std::int64_t q, std::int64_t scale,
                   const std::vector<std::int64_t>& ks, const primes::FactorBudget& budget,
                   const std::function<bool(std::int64_t)>& accept) {
  SlotResult out;
  out.stats.primes_tried = 1;
  for (const auto k : ks) {
    const auto n = checked_index(q, scale, k);
    if (!n) {
      break;
    }
    std::int64_t c = 0;
    try {
      c = mock::coefficient_closed_form(params, *n, budget).c;
    } catch (const primes::FactorizationError& e) {
      ++out.stats.factor_skips;
      std::clog << "notice: skipping n=" << *n << ": " << e.what() << '\n';
      continue;
    }
    ++out.stats.coefficients_evaluated;
    if (accept(c)) {
      out.hit = std::make_pair(k, c);
      return out;
    }
  }
  return out;
}

// Closed-form c(n) by plain trial division over d <= sqrt(n).
std::int64_t closed_form_trial_division(const mock::ShadowParams& params, std::int64_t n) {
  const std::int64_t A = params.A();
  const std::int64_t B = params.B();
  i128 total = 0;
  auto visit = [&](std::int64_t a) {
    const std::int64_t b = n / a;
    const i128 cond = static_cast<i128>(b) + static_cast<i128>(B) * a - 2 * A;
    if (cond % (2 * B) != 0) {
      return;
    }
    const i128 abs_b = b < 0 ? -static_cast<i128>(b) : b;
    const i128 abs_ba = static_cast<i128>(B) * (a < 0 ? -a : a);
    const int eps_sign = (params.eps() == 1 && a % 2 != 0) ? -1 : 1;
    const int kappa_sign = (params.kappa() == 1 && abs_b < abs_ba) ? -1 : 1;
    total += eps_sign * kappa_sign * std::min(abs_b, abs_ba);
  };
  for (std::int64_t d = 1; static_cast<i128>(d) * d <= n; ++d) {
    if (n % d != 0) {
      continue;
    }
    visit(d);
    visit(-d);
    if (d != n / d) {
      visit(n / d);
      visit(-(n / d));
    }
  }
  if (n % 2 == 0) {
    total -= 2 * static_cast<i128>(qseries::sigma1(n / 2));
  }
  return static_cast<std::int64_t>(total);
}

bool witness_condition(const WitnessReport& r, std::int64_t c) {
  if (r.p == 2) {
    return floor_mod(c, 4) == 2;
  }
  return floor_mod(c, static_cast<std::int64_t>(r.p)) != 0;
}

bool witness_shape(const WitnessReport& r) {
  const auto p = static_cast<std::int64_t>(r.p);
  std::int64_t pm = 1;
  for (int i = 0; i < r.m; ++i) {
    pm *= p;
  }
  if (static_cast<i128>(r.Q) * pm * r.k != r.n || r.Q % p == 0) {
    return false;
  }
  if (r.p == 2) {
    const std::int64_t qb = floor_mod(r.Q, r.params.B());
    return r.m >= 2 && std::gcd(r.k, 2 * r.Q) == 1 && (qb == 1 || qb == r.params.B() - 1);
  }
  return std::gcd(r.k, r.Q * p) == 1 && floor_mod(r.Q, p) == p - 1;
}

void require_psi_inputs(std::int64_t B, std::int64_t A, std::int64_t Q) {
  if (A <= 0 || std::gcd(A, B) != 1) {
    throw std::invalid_argument("A must be positive and coprime to B");
  }
  if (Q <= 5 || !primes::is_prime(static_cast<std::uint64_t>(Q)) || B % Q == 0) {
    throw std::invalid_argument("Q must be a prime > 5 not dividing B");
  }
}

PsiLemmaReport psi_rows(std::int64_t B, std::int64_t A, std::int64_t Q) {
  PsiLemmaReport out;
  out.A = A;
  out.B = B;
  out.Q = Q;
  for (const std::int64_t x : {std::int64_t{1}, Q}) {
    out.rows.push_back({x, mock::psi(A, B, 4 * Q, 2 * x), mock::psi(A, B, 4 * Q, 4 * x),
                        mock::psi(A, B, 8 * Q, 2 * x), mock::psi(A, B, 8 * Q, 8 * x)});
  }
  return out;
}

}  // namespace

Valuation padic_valuation(const TruncatedSeries& s, std::uint64_t p) {
  require_prime(p);
  Valuation out;
  out.order = s.order();
  for (const auto& [k, c] : s.indexed()) {
    const long v = mocklab::padic_valuation(c, p);
    if (!out.value || v < *out.value) {
      out.value = v;
    }
  }
  return out;
}

CongruenceResult congruent_mod(const TruncatedSeries& g, const TruncatedSeries& h, std::uint64_t p, int m) {
  require_prime(p);
  if (m < 1) {
    throw std::invalid_argument("congruence exponent m must be positive");
  }
  if (g.lattice() != h.lattice()) {
    throw qseries::LatticeMismatch("congruent_mod: lattices 1/" + std::to_string(g.lattice()) + " and 1/" +
                                   std::to_string(h.lattice()) + " differ");
  }
  CongruenceResult out;
  out.order = std::min(g.order(), h.order());
  const TruncatedSeries gt = g.truncated(out.order);
  const TruncatedSeries diff = qseries::series_sub(gt, h.truncated(out.order));
  out.valuation_g = padic_valuation(gt, p);
  out.valuation_diff = padic_valuation(diff, p);
  for (const auto& [k, c] : diff.indexed()) {
    const bool violates =
        out.valuation_g.infinite() || mocklab::padic_valuation(c, p) < *out.valuation_g.value + m;
    if (violates) {
      out.witness_exponent = diff.exponent_of(k);
      break;
    }
  }
  out.holds = !out.witness_exponent.has_value();
  return out;
}

PartitionCongruenceReport verify_partition_congruences(std::int64_t bound) {
  PartitionCongruenceReport out;
  out.bound = bound;
  out.cases = {{5, 4}, {7, 5}, {11, 6}};
  if (bound < 0) {
    out.pass = true;
    return out;
  }
  const TruncatedSeries partitions = qseries::partition_series(Rational(11 * bound + 7));
  out.pass = true;
  for (auto& cs : out.cases) {
    for (std::int64_t n = 0; n <= bound; ++n) {
      const Rational pn = partitions.coeff(Rational(cs.modulus * n + cs.offset));
      ++cs.checked;
      if (residue(pn, cs.modulus) != 0) {
        cs.first_failure = n;
        out.pass = false;
        break;
      }
    }
  }
  return out;
}

SearchBounds default_mod4_bounds() {
  SearchBounds b;
  b.q_count_max = 32;
  return b;
}

WitnessReport find_witness_odd(const mock::ShadowParams& params, std::uint64_t pr, int m, const SearchBounds& bounds) {
  if (pr == 2 || !primes::is_prime(pr)) {
    throw std::invalid_argument("find_witness_odd needs an odd prime (use find_witness_mod4 for 2)");
  }
  if (m < 0) {
    throw std::invalid_argument("m must be nonnegative");
  }
  const auto p = static_cast<std::int64_t>(pr);
  std::int64_t pm = 1;
  for (int i = 0; i < m; ++i) {
    pm *= p;
  }
  const auto budget = primes::factor_budget_from_env();
  const std::int64_t floor_q = std::max({bounds.q_min, params.B() + 1, std::int64_t{6}});
  const auto qs = candidate_primes(floor_q, bounds.q_max, bounds.q_count_max,
                                   [p](std::int64_t q) { return q % p == p - 1; });

  std::vector<std::int64_t> priority = {4, 8};
  for (const auto l : small_ells(params, std::max<std::int64_t>(bounds.k_max / 8, 2), 8)) {
    if (l != p) {
      priority.push_back(4 * l);
      priority.push_back(8 * l);
    }
  }

  std::vector<SlotResult> results;
  const auto winner = scan_slots(qs.size(), bounds.jobs, [&](std::size_t i) {
    const std::int64_t q = qs[i];
    const auto ks = candidate_ks(priority, bounds.k_max, [&](std::int64_t k) { return std::gcd(k, q * p) == 1; });
    return scan_ks(params, q, pm, ks, budget, [p](std::int64_t c) { return floor_mod(c, p) != 0; });
  }, results);

  WitnessReport report{.params = params, .p = pr, .m = m};
  report.stats = sum_stats(results, winner ? *winner + 1 : results.size());
  if (!winner) {
    return report;
  }
  const auto [k, c] = *results[*winner].hit;
  report.found = true;
  report.Q = qs[*winner];
  report.k = k;
  report.n = report.Q * pm * k;
  report.c = c;
  report.c_mod = floor_mod(c, p);
  validate_witness(report);
  return report;
}

WitnessReport find_witness_mod4(const mock::ShadowParams& params, int m_min, int m_max, const SearchBounds& bounds) {
  if (m_min < 2) {
    throw std::invalid_argument("mod 4 witnesses need m >= 2");
  }
  const auto budget = primes::factor_budget_from_env();
  const std::int64_t B = params.B();
  const std::int64_t floor_q = std::max({bounds.q_min, B + 1, std::int64_t{3}});
  const auto qs = candidate_primes(floor_q, bounds.q_max, bounds.q_count_max, [B](std::int64_t q) {
    const std::int64_t r = q % B;
    return r == 1 || r == B - 1;
  });

  std::vector<std::int64_t> priority = {1};
  for (const auto l : small_ells(params, bounds.k_max, 8)) {
    if (l % 2 != 0) {
      priority.push_back(l);
    }
  }

  WitnessReport report{.params = params, .p = 2};
  for (int m = m_min; m <= m_max; ++m) {
    report.m_tried.push_back(m);
    const std::int64_t pm = std::int64_t{1} << m;
    std::vector<SlotResult> results;
    const auto winner = scan_slots(qs.size(), bounds.jobs, [&](std::size_t i) {
      const std::int64_t q = qs[i];
      const auto ks = candidate_ks(priority, bounds.k_max,
                                   [q](std::int64_t k) { return k % 2 != 0 && std::gcd(k, q) == 1; });
      return scan_ks(params, q, pm, ks, budget, [](std::int64_t c) { return floor_mod(c, 4) == 2; });
    }, results);
    const auto stats = sum_stats(results, winner ? *winner + 1 : results.size());
    report.stats.primes_tried += stats.primes_tried;
    report.stats.coefficients_evaluated += stats.coefficients_evaluated;
    report.stats.factor_skips += stats.factor_skips;
    if (winner) {
      const auto [k, c] = *results[*winner].hit;
      report.found = true;
      report.m = m;
      report.Q = qs[*winner];
      report.k = k;
      report.n = report.Q * pm * k;
      report.c = c;
      report.c_mod = floor_mod(c, 4);
      validate_witness(report);
      return report;
    }
  }
  return report;
}

void validate_witness(WitnessReport& report) {
  report.validation = {};
  if (!report.found) {
    return;
  }
  auto& v = report.validation;
  v.c_trial_division = closed_form_trial_division(report.params, report.n);
  bool ok = v.c_trial_division == report.c;
  if (report.n <= kLambertRecheckMax) {
    v.c_lambert = mock::coefficient_lambert(report.params, report.n);
    ok = ok && *v.c_lambert == report.c;
  }
  v.valid = ok && witness_condition(report, v.c_trial_division) && witness_shape(report);
}

PsiLemmaReport check_psi_lemma(std::int64_t B, std::int64_t A, std::int64_t Q) {
  if (B != 6 && B != 10) {
    throw std::invalid_argument("check_psi_lemma covers B = 6 and B = 10 only");
  }
  require_psi_inputs(B, A, Q);
  PsiLemmaReport out = psi_rows(B, A, Q);
  out.holds = std::all_of(out.rows.begin(), out.rows.end(), [B](const PsiLemmaRow& r) {
    if (B == 6) {
      return r.psi_4q_2x == 1 && r.psi_4q_4x == 1 && r.psi_8q_2x == 1 && r.psi_8q_8x == 1;
    }
    return r.psi_8q_2x == r.psi_8q_8x && r.psi_8q_8x == r.psi_4q_2x && r.psi_4q_2x != r.psi_4q_4x;
  });
  return out;
}

PsiLemmaReport check_psi_lemma_general(std::int64_t B, std::int64_t A, std::int64_t Q) {
  if (B % 4 != 2 || B <= 10) {
    throw std::invalid_argument("check_psi_lemma_general needs B = 2 (mod 4) and B > 10");
  }
  require_psi_inputs(B, A, Q);
  PsiLemmaReport out = psi_rows(B, A, Q);
  out.holds = std::all_of(out.rows.begin(), out.rows.end(), [](const PsiLemmaRow& r) {
    return r.psi_4q_2x + r.psi_4q_4x <= 1 && r.psi_8q_2x + r.psi_8q_8x <= 1 && r.psi_4q_4x + r.psi_8q_8x <= 1;
  });
  return out;
}

Corollary1Result corollary1_decompose(const TruncatedSeries& H, const TruncatedSeries& f_series, std::uint64_t p) {
  require_prime(p);
  if (H.lattice() != f_series.lattice() || H.order() != f_series.order()) {
    throw qseries::LatticeMismatch("corollary1_decompose: H and f_series must share lattice and order");
  }
  Corollary1Result out{.j = padic_valuation(H, p), .m = qseries::series_sub(H, f_series)};
  if (out.j.infinite() || *out.j.value >= 0) {
    return out;
  }
  const Valuation vf = padic_valuation(f_series, p);
  if (!vf.infinite() && *vf.value < 0) {
    throw std::domain_error("f_series is not p-integral; the scaled congruence cannot hold");
  }
  out.case_i_applies = true;
  const long shift = -*out.j.value;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), p, static_cast<unsigned long>(shift));
  out.g = out.m.scaled(Rational(scale));
  const auto check = congruent_mod(H.scaled(Rational(scale)), *out.g, p, static_cast<int>(shift));
  if (!check.holds) {
    throw std::logic_error("corollary1_decompose: scaled congruence failed");
  }
  out.verified = true;
  return out;
}

}  // namespace mocklab::congruence
