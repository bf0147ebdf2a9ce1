// mocklab: batch front end for the mock theta series library.
//
// Exit codes: 0 success / verified, 1 search exhausted or check failed,
// 2 usage or input error.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mocklab/classical.hpp"
#include "mocklab/congruence.hpp"
#include "mocklab/mock_family.hpp"
#include "mocklab/numerics.hpp"
#include "mocklab/primes.hpp"
#include "mocklab/report_json.hpp"
#include "mocklab/series_io.hpp"

namespace {

using mocklab::Rational;
using mocklab::qseries::TruncatedSeries;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct ParamArgs {
  std::int64_t A = 0;
  std::int64_t B = 0;
  int eps = 0;
  int kappa = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("A", A, "numerator of the shadow parameter")->required();
    cmd->add_option("B", B, "denominator of the shadow parameter")->required();
    cmd->add_option("eps", eps, "0 or 1")->required();
    cmd->add_option("kappa", kappa, "0 or 1")->required();
  }

  mocklab::mock::ShadowParams validated() const { return mocklab::mock::validate_params(A, B, eps, kappa); }
};

std::string join_json(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? "," : "") + items[i];
  }
  return out + "]";
}

void write_csv(std::ostream& out, const std::vector<std::string>& names, const std::vector<const TruncatedSeries*>& cols) {
  out << "exponent";
  for (const auto& n : names) {
    out << ',' << n;
  }
  out << '\n';
  std::vector<Rational> exps;
  for (const auto* s : cols) {
    for (const auto& [e, c] : s->terms()) {
      exps.push_back(e);
    }
  }
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  for (const auto& e : exps) {
    out << mocklab::to_string(e);
    for (const auto* s : cols) {
      out << ',' << mocklab::to_string(e < s->order() ? s->coeff(e) : Rational(0));
    }
    out << '\n';
  }
}

// Exponents where two series on the same lattice disagree.
json series_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  json mismatches = json::array();
  const TruncatedSeries d = mocklab::qseries::series_sub(a, b);
  for (const auto& [e, c] : d.terms()) {
    mismatches.push_back({mocklab::to_string(e), mocklab::to_string(a.coeff(e)), mocklab::to_string(b.coeff(e))});
  }
  return {{"equal", mismatches.empty()}, {"mismatches", mismatches}};
}

// Splits a modulus p^m with p prime, m >= 1.
std::pair<std::uint64_t, int> prime_power(std::int64_t modulus) {
  if (modulus < 2) {
    throw std::invalid_argument("modulus must be a prime power >= 2");
  }
  const auto f = mocklab::primes::factorize(static_cast<std::uint64_t>(modulus));
  if (f.size() != 1) {
    throw std::invalid_argument("modulus must be a prime power");
  }
  return {f.front().prime, f.front().exponent};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact expansions, congruence checks and numeric identity checks for a family of mock theta functions"};
  app.require_subcommand(1);
  std::function<int()> run;

  // expand
  ParamArgs expand_params;
  std::string expand_order = "10";
  std::string route = "thm1";
  std::string which = "product";
  std::string format = "json";
  bool csv = false;
  auto* expand = app.add_subcommand("expand", "expand f*Theta (or f, or Theta) below an order");
  expand_params.attach(expand);
  expand->add_option("--order", expand_order, "truncation order (rational)")->capture_default_str();
  expand->add_option("--route", route, "construction route for f*Theta")
      ->check(CLI::IsMember({"thm1", "closed", "both"}))
      ->capture_default_str();
  expand->add_option("--series", which, "which series to emit")
      ->check(CLI::IsMember({"product", "mock", "theta"}))
      ->capture_default_str();
  expand->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  expand->add_flag("--csv", csv, "emit an exponent,coefficient table instead");
  expand->callback([&] {
    run = [&]() -> int {
      const auto p = expand_params.validated();
      const Rational order = mocklab::parse_rational(expand_order);
      std::vector<std::string> names;
      std::vector<TruncatedSeries> series;
      if (which == "mock") {
        names = {"mock"};
        series.push_back(mocklab::mock::mock_part_series(p, order));
      } else if (which == "theta") {
        names = {"theta"};
        series.push_back(mocklab::mock::theta_unary_Btau(p, order));
      } else {
        if (route != "closed") {
          names.push_back("thm1");
          series.push_back(mocklab::mock::product_series_thm1(p, order));
        }
        if (route != "thm1") {
          names.push_back("closed");
          series.push_back(mocklab::mock::product_series_closed(p, order));
        }
      }
      std::optional<json> diff;
      if (series.size() == 2) {
        diff = series_diff(series[0], series[1]);
      }
      if (csv) {
        std::vector<const TruncatedSeries*> cols;
        for (const auto& s : series) {
          cols.push_back(&s);
        }
        write_csv(std::cout, names, cols);
      } else if (format == "text") {
        for (std::size_t i = 0; i < series.size(); ++i) {
          std::cout << "# " << names[i] << '\n' << mocklab::qseries::to_text(series[i]);
        }
        if (diff) {
          std::cout << "# diff " << ((*diff)["equal"].get<bool>() ? "empty" : "nonempty") << '\n';
          for (const auto& m : (*diff)["mismatches"]) {
            std::cout << m[0].get<std::string>() << ' ' << m[1].get<std::string>() << ' ' << m[2].get<std::string>()
                      << '\n';
          }
        }
      } else {
        json out = {{"params", json::parse(mocklab::report::to_json(p))}};
        for (std::size_t i = 0; i < series.size(); ++i) {
          out[names[i]] = json::parse(mocklab::qseries::to_json(series[i]));
        }
        if (diff) {
          out["diff"] = *diff;
        }
        std::cout << out.dump() << '\n';
      }
      return (diff && !(*diff)["equal"].get<bool>()) ? kFailed : kOk;
    };
  });

  // coeff
  ParamArgs coeff_params;
  std::int64_t coeff_n = 1;
  std::string coeff_route = "closed";
  auto* coeff = app.add_subcommand("coeff", "single coefficient c(n) of f*Theta");
  coeff_params.attach(coeff);
  coeff->add_option("n", coeff_n, "index n (coefficient of q^(n/2))")->required();
  coeff->add_option("--route", coeff_route, "closed form, Lambert extraction, or both")
      ->check(CLI::IsMember({"closed", "lambert", "both"}))
      ->capture_default_str();
  coeff->callback([&] {
    run = [&]() -> int {
      const auto p = coeff_params.validated();
      const auto budget = mocklab::primes::factor_budget_from_env();
      if (coeff_route == "closed") {
        std::cout << mocklab::report::to_json(mocklab::mock::coefficient_closed_form(p, coeff_n, budget)) << '\n';
        return kOk;
      }
      const Rational lambert = mocklab::mock::coefficient_lambert(p, coeff_n);
      if (coeff_route == "lambert") {
        std::cout << json{{"n", coeff_n}, {"c", mocklab::to_string(lambert)}}.dump() << '\n';
        return kOk;
      }
      const auto rec = mocklab::mock::coefficient_closed_form(p, coeff_n, budget);
      const bool agree = lambert == rec.c;
      std::cout << json{{"closed", json::parse(mocklab::report::to_json(rec))},
                        {"lambert", mocklab::to_string(lambert)},
                        {"agree", agree}}
                       .dump()
                << '\n';
      return agree ? kOk : kFailed;
    };
  });

  // verify
  std::string target;
  std::int64_t modulus = 4;
  std::string verify_order = "500";
  std::int64_t bound = 100;
  auto* verify = app.add_subcommand("verify", "check a series congruence");
  verify->add_option("target", target, "what to verify")
      ->required()
      ->check(CLI::IsMember({"eq11", "partition-congruences"}));
  verify->add_option("--mod", modulus, "prime-power modulus for eq11")->capture_default_str();
  verify->add_option("--order", verify_order, "truncation order for eq11")->capture_default_str();
  verify->add_option("--bound", bound, "largest n for partition-congruences")->capture_default_str();
  verify->callback([&] {
    run = [&]() -> int {
      if (target == "partition-congruences") {
        const auto report = mocklab::congruence::verify_partition_congruences(bound);
        std::cout << mocklab::report::to_json(report) << '\n';
        return report.pass ? kOk : kFailed;
      }
      const auto [p, m] = prime_power(modulus);
      const Rational order = mocklab::parse_rational(verify_order);
      const auto f = mocklab::qseries::ramanujan_f_series(order);
      const auto partitions = mocklab::qseries::partition_series(order);
      const auto result = mocklab::congruence::congruent_mod(f, partitions, p, m);
      json out = json::parse(mocklab::report::to_json(result));
      out["target"] = "eq11";
      out["modulus"] = modulus;
      std::cout << out.dump() << '\n';
      return result.holds ? kOk : kFailed;
    };
  });

  // scan-witness
  ParamArgs scan_params;
  std::uint64_t scan_p = 3;
  int scan_m = -1;
  int scan_m_max = 8;
  mocklab::congruence::SearchBounds bounds;
  std::int64_t q_count = -1;
  auto* scan = app.add_subcommand("scan-witness", "search for an index where c(n) breaks a congruence");
  scan_params.attach(scan);
  scan->add_option("--p", scan_p, "prime (2 selects the mod 4 search)")->required();
  scan->add_option("--m", scan_m, "exponent m (odd p), or first m for p = 2 (default 0 / 2)");
  scan->add_option("--m-max", scan_m_max, "last m for p = 2")->capture_default_str();
  scan->add_option("--q-min", bounds.q_min, "smallest candidate prime Q")->capture_default_str();
  scan->add_option("--q-max", bounds.q_max, "largest candidate prime Q")->capture_default_str();
  scan->add_option("--k-max", bounds.k_max, "largest k")->capture_default_str();
  scan->add_option("--q-count", q_count, "cap on candidate primes (0 = none; default 32 for p = 2, none otherwise)");
  scan->add_option("--jobs", bounds.jobs, "worker threads")->capture_default_str();
  scan->callback([&] {
    run = [&]() -> int {
      const auto p = scan_params.validated();
      mocklab::congruence::WitnessReport report{.params = p};
      if (scan_p == 2) {
        auto b = bounds;
        b.q_count_max = q_count >= 0 ? q_count : mocklab::congruence::default_mod4_bounds().q_count_max;
        report = mocklab::congruence::find_witness_mod4(p, scan_m >= 0 ? scan_m : 2, scan_m_max, b);
      } else {
        auto b = bounds;
        b.q_count_max = q_count >= 0 ? q_count : 0;
        report = mocklab::congruence::find_witness_odd(p, scan_p, scan_m >= 0 ? scan_m : 0, b);
      }
      std::cout << mocklab::report::to_json(report) << '\n';
      return (report.found && report.validation.valid) ? kOk : kFailed;
    };
  });

  // psi-lemma
  std::int64_t lemma_B = 6;
  std::int64_t lemma_A = 1;
  std::int64_t lemma_Q = 0;
  std::int64_t lemma_q_max = 100;
  auto* lemma = app.add_subcommand("psi-lemma", "check the Psi indicator identities for primes Q");
  lemma->add_option("B", lemma_B, "6, 10, or any B = 2 (mod 4) above 10")->required();
  lemma->add_option("A", lemma_A, "residue coprime to B")->required();
  lemma->add_option("--Q", lemma_Q, "a single prime Q > 5");
  lemma->add_option("--q-max", lemma_q_max, "check all primes 5 < Q < q-max")->capture_default_str();
  lemma->callback([&] {
    run = [&]() -> int {
      std::vector<std::int64_t> qs;
      if (lemma_Q > 0) {
        qs.push_back(lemma_Q);
      } else {
        for (std::int64_t q = 7; q < lemma_q_max; ++q) {
          if (mocklab::primes::is_prime(static_cast<std::uint64_t>(q)) && lemma_B % q != 0) {
            qs.push_back(q);
          }
        }
      }
      bool all = true;
      std::vector<std::string> items;
      for (const auto q : qs) {
        const auto r = (lemma_B == 6 || lemma_B == 10) ? mocklab::congruence::check_psi_lemma(lemma_B, lemma_A, q)
                                                       : mocklab::congruence::check_psi_lemma_general(lemma_B, lemma_A, q);
        all = all && r.holds;
        items.push_back(mocklab::report::to_json(r));
      }
      std::cout << join_json(items) << '\n';
      return all ? kOk : kFailed;
    };
  });

  // check-numerics
  std::uint64_t seed = 20240601;
  int count = 100;
  bool with_grid = true;
  auto* numerics = app.add_subcommand("check-numerics", "residuals of the transformation laws and the Appell identity");
  numerics->add_option("--seed", seed, "random seed")->capture_default_str();
  numerics->add_option("--count", count, "random configurations per identity")->capture_default_str();
  numerics->add_flag("--grid,!--no-grid", with_grid, "include the Appell identity over the reference grid");
  numerics->callback([&] {
    run = [&]() -> int {
      std::vector<mocklab::mock::ShadowParams> params;
      if (with_grid) {
        params = mocklab::mock::reference_grid();
      }
      const auto checks = mocklab::numerics::run_numeric_suite(seed, count, params);
      std::cout << mocklab::report::to_json(checks) << '\n';
      const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.residual.pass(); });
      return all ? kOk : kFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run();
  } catch (const mocklab::primes::FactorizationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
