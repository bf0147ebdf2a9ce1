#include "mocklab/rational.hpp"

#include <limits>
#include <stdexcept>

namespace mocklab {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational r{Integer{std::to_string(num)}, Integer{std::to_string(den)}};
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational{Integer{std::string(text)}};
    }
    Integer num{std::string(text.substr(0, slash))};
    Integer den{std::string(text.substr(slash + 1))};
    if (den == 0) {
      throw std::invalid_argument("zero denominator");
    }
    Rational r{num, den};
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool fits_int64(const Integer& z) {
  static const Integer lo{std::to_string(std::numeric_limits<std::int64_t>::min())};
  static const Integer hi{std::to_string(std::numeric_limits<std::int64_t>::max())};
  return z >= lo && z <= hi;
}

std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) {
    throw std::invalid_argument("rational " + to_string(r) + " is not an integer");
  }
  if (!fits_int64(r.get_num())) {
    throw std::overflow_error("integer " + r.get_num().get_str() + " exceeds int64");
  }
  return std::stoll(r.get_num().get_str());
}

long padic_valuation(const Rational& r, unsigned long p) {
  if (r == 0) {
    throw std::invalid_argument("p-adic valuation of zero is infinite");
  }
  Integer rest;
  Integer prime{p};
  const long up = static_cast<long>(mpz_remove(rest.get_mpz_t(), r.get_num().get_mpz_t(), prime.get_mpz_t()));
  const long down = static_cast<long>(mpz_remove(rest.get_mpz_t(), r.get_den().get_mpz_t(), prime.get_mpz_t()));
  return up - down;
}

std::int64_t residue(const Rational& r, std::int64_t m) {
  if (!is_integer(r)) {
    throw std::invalid_argument("residue of non-integral rational " + to_string(r));
  }
  if (m <= 0) {
    throw std::invalid_argument("modulus must be positive");
  }
  Integer out;
  mpz_fdiv_r_ui(out.get_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(m));
  return static_cast<std::int64_t>(out.get_si());
}

}  // namespace mocklab
