#include "mocklab/report_json.hpp"

#include <cmath>

#include "json.hpp"

namespace mocklab::report {

namespace {

using nlohmann::json;

json params_json(const mock::ShadowParams& p) {
  json j = {{"A", p.A()}, {"B", p.B()}, {"eps", p.eps()}, {"kappa", p.kappa()}, {"b_star", to_string(p.b_star())}};
  if (p.canonicalized()) {
    j["input_A"] = p.input_A();
  }
  return j;
}

json valuation_json(const congruence::Valuation& v) {
  return {{"value", v.infinite() ? json("inf") : json(*v.value)},
          {"range_limited", v.range_limited},
          {"order", to_string(v.order)}};
}

// JSON has no NaN/inf; keep such residuals readable.
json real_json(double x) {
  if (std::isfinite(x)) {
    return x;
  }
  return std::isnan(x) ? "nan" : "inf";
}

}  // namespace

std::string to_json(const mock::ShadowParams& p) { return params_json(p).dump(); }

std::string to_json(const mock::CoefficientRecord& rec) {
  json pairs = json::array();
  for (const auto& [a, b] : rec.pairs) {
    pairs.push_back({a, b});
  }
  return json{{"n", rec.n},
              {"c", rec.c},
              {"divisor_part", rec.divisor_part},
              {"sigma_part", rec.sigma_part},
              {"pairs", pairs}}
      .dump();
}

std::string to_json(const congruence::WitnessReport& r) {
  json j = {{"params", params_json(r.params)}, {"p", r.p}, {"found", r.found}};
  if (r.found) {
    j["m"] = r.m;
    j["Q"] = r.Q;
    j["k"] = r.k;
    j["n"] = r.n;
    j["c"] = r.c;
    j["c_mod"] = r.c_mod;
    json v = {{"valid", r.validation.valid}, {"c_trial_division", r.validation.c_trial_division}};
    v["c_lambert"] = r.validation.c_lambert ? json(to_string(*r.validation.c_lambert)) : json(nullptr);
    j["validation"] = v;
  }
  if (!r.m_tried.empty()) {
    j["m_tried"] = r.m_tried;
  }
  j["search_stats"] = {{"primes_tried", r.stats.primes_tried},
                       {"coefficients_evaluated", r.stats.coefficients_evaluated},
                       {"factor_skips", r.stats.factor_skips}};
  return j.dump();
}

std::string to_json(const congruence::CongruenceResult& r) {
  json j = {{"holds", r.holds},
            {"order", to_string(r.order)},
            {"valuation_g", valuation_json(r.valuation_g)},
            {"valuation_diff", valuation_json(r.valuation_diff)}};
  j["witness_exponent"] = r.witness_exponent ? json(to_string(*r.witness_exponent)) : json(nullptr);
  return j.dump();
}

std::string to_json(const congruence::PartitionCongruenceReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"modulus", c.modulus},
                     {"offset", c.offset},
                     {"checked", c.checked},
                     {"first_failure", c.first_failure ? json(*c.first_failure) : json(nullptr)}});
  }
  return json{{"pass", r.pass}, {"bound", r.bound}, {"cases", cases}}.dump();
}

std::string to_json(const congruence::PsiLemmaReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"x", row.x},
                    {"psi_4Q_2x", row.psi_4q_2x},
                    {"psi_4Q_4x", row.psi_4q_4x},
                    {"psi_8Q_2x", row.psi_8q_2x},
                    {"psi_8Q_8x", row.psi_8q_8x}});
  }
  return json{{"A", r.A}, {"B", r.B}, {"Q", r.Q}, {"holds", r.holds}, {"rows", rows}}.dump();
}

std::string to_json(const std::vector<numerics::NumericCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"identity", c.identity},
                   {"point", c.point},
                   {"residual", real_json(c.residual.value)},
                   {"tol", c.residual.tol},
                   {"pass", c.residual.pass()}});
  }
  return out.dump();
}

}  // namespace mocklab::report
