#include "mocklab/series_io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mocklab::qseries {

namespace {

using nlohmann::json;

json integer_to_json(const Integer& z) {
  if (fits_int64(z)) {
    return static_cast<std::int64_t>(z.get_si());
  }
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    return Integer{std::to_string(j.get<std::int64_t>())};
  }
  if (j.is_string()) {
    return Integer{j.get<std::string>()};
  }
  throw std::invalid_argument("expected an integer in series JSON");
}

Rational rational_from(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw std::invalid_argument("zero denominator in series data");
  }
  Rational r{num, den};
  r.canonicalize();
  return r;
}

}  // namespace

std::string to_text(const TruncatedSeries& s) {
  std::ostringstream out;
  out << "ORDER " << to_string(s.order()) << " LATTICE " << s.lattice() << '\n';
  for (const auto& [e, c] : s.terms()) {
    out << to_string(c) << ' ' << to_string(e) << '\n';
  }
  return out.str();
}

TruncatedSeries from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag_order;
  std::string order;
  std::string tag_lattice;
  std::int64_t lattice = 0;
  if (!(in >> tag_order >> order >> tag_lattice >> lattice) || tag_order != "ORDER" || tag_lattice != "LATTICE") {
    throw std::invalid_argument("series text must start with 'ORDER <q> LATTICE <D>'");
  }
  TruncatedSeries s(lattice, parse_rational(order));
  std::string coeff;
  std::string exponent;
  while (in >> coeff) {
    if (!(in >> exponent)) {
      throw std::invalid_argument("series text: term line without exponent");
    }
    const Rational e = parse_rational(exponent);
    if (e >= s.order()) {
      throw std::invalid_argument("series text: exponent " + exponent + " is not below the order");
    }
    s.add_term(e, parse_rational(coeff));
  }
  return s;
}

std::string to_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) {
    terms.push_back({integer_to_json(e.get_num()), integer_to_json(e.get_den()),
                     integer_to_json(c.get_num()), integer_to_json(c.get_den())});
  }
  json j;
  j["order"] = {integer_to_json(s.order().get_num()), integer_to_json(s.order().get_den())};
  j["lattice"] = s.lattice();
  j["terms"] = std::move(terms);
  return j.dump();
}

TruncatedSeries from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const auto& order = j.at("order");
    TruncatedSeries s(j.at("lattice").get<std::int64_t>(),
                      rational_from(integer_from_json(order.at(0)), integer_from_json(order.at(1))));
    for (const auto& t : j.at("terms")) {
      const Rational e = rational_from(integer_from_json(t.at(0)), integer_from_json(t.at(1)));
      if (e >= s.order()) {
        throw std::invalid_argument("series JSON: exponent is not below the order");
      }
      s.add_term(e, rational_from(integer_from_json(t.at(2)), integer_from_json(t.at(3))));
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("series JSON: ") + e.what());
  }
}

}  // namespace mocklab::qseries
