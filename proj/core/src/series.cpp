#include "mocklab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace mocklab::qseries {

namespace {

void require_lattice(std::int64_t lattice) {
  if (lattice <= 0) {
    throw std::invalid_argument("lattice denominator must be positive");
  }
}

void require_same_lattice(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.lattice() != b.lattice()) {
    throw LatticeMismatch("lattice mismatch: 1/" + std::to_string(a.lattice()) + " vs 1/" +
                          std::to_string(b.lattice()));
  }
}

// ceil of a rational as int64
std::int64_t ceil_int(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!fits_int64(out)) {
    throw std::overflow_error("series order out of range");
  }
  return out.get_si();
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::int64_t lattice, Rational order)
    : lattice_(lattice), order_(std::move(order)) {
  require_lattice(lattice_);
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, std::int64_t lattice, Rational order) {
  TruncatedSeries s(lattice, std::move(order));
  s.add_at_index(0, c);
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(std::int64_t lattice, Rational order,
                                            const std::vector<std::pair<Rational, Rational>>& terms) {
  TruncatedSeries s(lattice, std::move(order));
  for (const auto& [e, c] : terms) {
    s.add_term(e, c);
  }
  return s;
}

Rational TruncatedSeries::min_exp() const {
  if (terms_.empty()) {
    return 0;
  }
  return exponent_of(terms_.begin()->first);
}

Rational TruncatedSeries::exponent_of(Index k) const {
  return make_rational(k, lattice_);
}

TruncatedSeries::Index TruncatedSeries::index_of(const Rational& e) const {
  Rational scaled = e * lattice_;
  if (!is_integer(scaled)) {
    throw LatticeMismatch("exponent " + to_string(e) + " is not on lattice 1/" + std::to_string(lattice_));
  }
  return to_int64(scaled);
}

TruncatedSeries::Index TruncatedSeries::end_index() const {
  return ceil_int(order_ * lattice_);
}

Rational TruncatedSeries::coeff(const Rational& e) const {
  const Index k = index_of(e);
  if (k >= end_index()) {
    throw std::out_of_range("coefficient of q^" + to_string(e) + " is beyond the truncation order " +
                            to_string(order_));
  }
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational{0} : it->second;
}

void TruncatedSeries::add_term(const Rational& e, const Rational& c) {
  add_at_index(index_of(e), c);
}

void TruncatedSeries::add_at_index(Index k, const Rational& c) {
  if (c == 0 || k >= end_index()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

std::vector<std::pair<Rational, Rational>> TruncatedSeries::terms() const {
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    out.emplace_back(exponent_of(k), c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::relattice(std::int64_t new_lattice) const {
  require_lattice(new_lattice);
  if (new_lattice % lattice_ != 0) {
    throw LatticeMismatch("cannot move lattice 1/" + std::to_string(lattice_) + " to 1/" +
                          std::to_string(new_lattice));
  }
  const Index factor = new_lattice / lattice_;
  TruncatedSeries out(new_lattice, order_);
  for (const auto& [k, c] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), k * factor, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::truncated(const Rational& new_order) const {
  TruncatedSeries out(lattice_, std::min(order_, new_order));
  const Index end = out.end_index();
  for (const auto& [k, c] : terms_) {
    if (k >= end) {
      break;
    }
    out.terms_.emplace_hint(out.terms_.end(), k, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& c) const {
  TruncatedSeries out(lattice_, order_);
  if (c == 0) {
    return out;
  }
  for (const auto& [k, v] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), k, v * c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::shifted(const Rational& e) const {
  const Index shift = index_of(e);
  TruncatedSeries out(lattice_, order_ + e);
  for (const auto& [k, v] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), k + shift, v);
  }
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  require_same_lattice(*this, other);
  if (other.order_ < order_) {
    *this = truncated(other.order_);
  }
  const Index end = end_index();
  for (const auto& [k, c] : other.terms_) {
    if (k >= end) {
      break;
    }
    add_at_index(k, c);
  }
  return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.lattice_ == b.lattice_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out = a;
  out += b;
  return out;
}

TruncatedSeries series_neg(const TruncatedSeries& a) { return a.scaled(-1); }

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_add(a, series_neg(b));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_lattice(a, b);
  const Rational order = std::min(a.order() + b.min_exp(), b.order() + a.min_exp());
  TruncatedSeries out(a.lattice(), order);
  if (a.is_zero() || b.is_zero()) {
    return out;
  }
  using Index = TruncatedSeries::Index;
  const Index end = out.end_index();
  const Index lo = a.indexed().begin()->first + b.indexed().begin()->first;
  if (lo >= end) {
    return out;
  }
  // Accumulate densely over [lo, end), the only indices that can survive.
  std::vector<Rational> acc(static_cast<std::size_t>(end - lo));
  std::vector<std::pair<Index, const Rational*>> right;
  right.reserve(b.size());
  for (const auto& [k, c] : b.indexed()) {
    right.emplace_back(k, &c);
  }
  Rational prod;
  for (const auto& [ka, ca] : a.indexed()) {
    for (const auto& [kb, cb] : right) {
      const Index k = ka + kb;
      if (k >= end) {
        break;
      }
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb->get_mpq_t());
      acc[static_cast<std::size_t>(k - lo)] += prod;
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] != 0) {
      out.add_at_index(lo + static_cast<Index>(i), acc[i]);
    }
  }
  return out;
}

TruncatedSeries series_invert(const TruncatedSeries& a, const Rational& order) {
  if (a.is_zero()) {
    throw std::domain_error("cannot invert the zero series");
  }
  using Index = TruncatedSeries::Index;
  const Rational e0 = a.min_exp();
  const Rational attainable = a.order() - 2 * e0;
  TruncatedSeries out(a.lattice(), std::min(order, attainable));

  // a = q^e0 * u with u(0) != 0; the inverse is q^-e0 * w where u*w = 1.
  const Index k0 = a.indexed().begin()->first;
  const Index end = out.end_index() + k0;  // w is needed at indices j with j - k0 < end(out)
  if (end <= 0) {
    return out;
  }
  std::vector<std::pair<Index, const Rational*>> tail;
  const Rational* lead = nullptr;
  for (const auto& [k, c] : a.indexed()) {
    if (k == k0) {
      lead = &c;
    } else {
      tail.emplace_back(k - k0, &c);
    }
  }
  const Rational inv_lead = 1 / *lead;
  std::vector<Rational> w(static_cast<std::size_t>(end));
  w[0] = inv_lead;
  Rational sum;
  Rational prod;
  for (Index j = 1; j < end; ++j) {
    sum = 0;
    for (const auto& [d, c] : tail) {
      if (d > j) {
        break;
      }
      const Rational& wj = w[static_cast<std::size_t>(j - d)];
      if (wj != 0) {
        mpq_mul(prod.get_mpq_t(), c->get_mpq_t(), wj.get_mpq_t());
        sum += prod;
      }
    }
    if (sum != 0) {
      w[static_cast<std::size_t>(j)] = -sum * inv_lead;
    }
  }
  for (Index j = 0; j < end; ++j) {
    out.add_at_index(j - k0, w[static_cast<std::size_t>(j)]);
  }
  return out;
}

TruncatedSeries geometric_expand(const Rational& c, const Rational& h, const Rational& k,
                                 const Rational& order, std::int64_t lattice) {
  if (k == 0) {
    throw std::domain_error("geometric_expand: 1/(1 - q^0) is a pole");
  }
  if (lattice == 0) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), h.get_den().get_mpz_t(), k.get_den().get_mpz_t());
    lattice = l.get_si();
  }
  Rational coeff = c;
  Rational head = h;
  Rational step = k;
  if (step < 0) {
    // 1/(1 - q^k) = -q^(-k)/(1 - q^(-k))
    coeff = -coeff;
    head -= step;
    step = -step;
  }
  TruncatedSeries out(lattice, order);
  const auto start = out.index_of(head);
  const auto stride = out.index_of(step);
  const auto end = out.end_index();
  for (auto idx = start; idx < end; idx += stride) {
    out.add_at_index(idx, coeff);
  }
  return out;
}

NumericValue series_eval_num(const TruncatedSeries& s, std::complex<double> tau) {
  if (!(tau.imag() > 0)) {
    throw std::domain_error("series_eval_num requires Im(tau) > 0");
  }
  using namespace std::complex_literals;
  const double two_pi = 2 * std::numbers::pi;
  std::complex<double> sum = 0;
  for (const auto& [k, c] : s.indexed()) {
    const double e = static_cast<double>(k) / static_cast<double>(s.lattice());
    sum += c.get_d() * std::exp(two_pi * 1i * e * tau);
  }
  const double abs_q = std::exp(-two_pi * tau.imag());
  const double tail = std::pow(abs_q, s.order().get_d()) / (1 - abs_q);
  return {sum, tail};
}

}  // namespace mocklab::qseries
