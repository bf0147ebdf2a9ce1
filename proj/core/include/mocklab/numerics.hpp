#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mocklab/mock_family.hpp"

namespace mocklab::numerics {

using Complex = std::complex<double>;

/// Raised when an Appell denominator |1 - e(u) q^n| falls below kPoleGuard.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kPoleGuard = 1e-6;
inline constexpr double kDefaultTol = 1e-14;

struct ComplexPoint {
  Complex tau;
  Complex u;
  Complex v;
};

/// Throws std::domain_error unless Im tau > 0.
void require_upper_half_plane(Complex tau);

class UnimodularMatrix {
 public:
  /// Throws std::invalid_argument unless ad - bc = 1.
  UnimodularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
  static UnimodularMatrix S() { return {0, -1, 1, 0}; }
  static UnimodularMatrix T() { return {1, 1, 0, 1}; }

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t c() const noexcept { return c_; }
  std::int64_t d() const noexcept { return d_; }

  /// (a tau + b) / (c tau + d)
  Complex apply(Complex tau) const;
  /// c tau + d
  Complex automorphy(Complex tau) const;

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y);

 private:
  std::int64_t a_, b_, c_, d_;
};

struct Residual {
  double value = 0;
  double tol = 0;
  std::int64_t terms = 0;

  bool pass() const noexcept { return value < tol; }
};

/// Value of a truncated sum plus the number of terms it used.
struct Evaluation {
  Complex value;
  std::int64_t terms = 0;
};

/// A(u, v; tau) = e^(pi i u) sum_n (-1)^n q^((n^2+n)/2) e^(2 pi i n v) / (1 - e^(2 pi i u) q^n).
Evaluation appell_eval(Complex u, Complex v, Complex tau, double tol = kDefaultTol);
Complex appell_num(Complex u, Complex v, Complex tau, double tol = kDefaultTol);

/// (1/(2 pi i)) d/dv of A: each term times n. The n = 0 term drops out, so
/// u = 0 is allowed.
Evaluation appell_dv_eval(Complex u, Complex v, Complex tau, double tol = kDefaultTol);
Complex appell_dv_num(Complex u, Complex v, Complex tau, double tol = kDefaultTol);

/// theta(v; tau) = sum over nu in 1/2 + Z of q^(nu^2/2) e^(2 pi i nu (v + 1/2)).
Complex jacobi_theta_num(Complex v, Complex tau, double tol = kDefaultTol);

/// beta_1(t) = int_t^inf u^(-1/2) e^(-pi u) du = erfc(sqrt(pi t)). Throws for t < 0.
double beta1_closed(double t);
/// Same integral by adaptive Gauss-Kronrod quadrature.
double beta1_quadrature(double t);

enum class RConvention {
  zwegers,     ///< (-1)^(nu - 1/2) e^(-2 pi i nu u) weights
  as_printed,  ///< -i e^(-2 pi i nu (u + 1/2)) weights; equals minus the above
};

/// R(u; tau) = sum_nu {sgn nu + sgn(nu + a)(beta_1(2y (nu + a)^2) - 1)} w_nu q^(-nu^2/2),
/// a = Im u / Im tau, y = Im tau.
Complex r_function_num(Complex u, Complex tau, double tol = kDefaultTol, RConvention conv = RConvention::zwegers);

/// A(u, v; tau) + (i/2) theta(v; tau) R(u - v; tau).
Complex appell_hat_num(Complex u, Complex v, Complex tau, double tol = kDefaultTol,
                       RConvention conv = RConvention::zwegers);

enum class EllipticSign {
  lambda_mu,   ///< (-1)^(lambda + mu)
  as_printed,  ///< (-1)^(k + l)
};

struct EllipticShift {
  int lambda = 0;
  int mu = 0;
  int l = 0;
  int k = 0;
};

/// |Ahat(u + lambda tau + mu, v + l tau + k) - s q^((lambda^2 - 2 lambda l)/2) e(u(lambda - l) - lambda v) Ahat(u, v)|
Residual elliptic_transform_residual(const ComplexPoint& pt, const EllipticShift& shift, double tol = 1e-8,
                                     EllipticSign sign = EllipticSign::lambda_mu,
                                     RConvention conv = RConvention::zwegers);

/// |Ahat(u/(c tau + d), v/(c tau + d); gamma tau) - (c tau + d) e^(pi i c (2uv - u^2)/(c tau + d)) Ahat(u, v; tau)|
Residual modular_transform_residual(const ComplexPoint& pt, const UnimodularMatrix& gamma, double tol = 1e-8,
                                    RConvention conv = RConvention::zwegers);

/// E2(tau) = 1 - 24 sum n q^n / (1 - q^n).
Complex e2_num(Complex tau, double tol = kDefaultTol);
/// E2(tau) - 3 / (pi Im tau).
Complex e2hat_num(Complex tau, double tol = kDefaultTol);
/// |E2hat(gamma tau) - (c tau + d)^2 E2hat(tau)|
Residual e2hat_residual(Complex tau, const UnimodularMatrix& gamma, double tol = 1e-8);

/// |(B*)^-1 f Theta(tau) - RHS| for the Appell-sum expression of the
/// Lambert series. The exact series is truncated at `order` (chosen from
/// Im tau when absent).
Residual thm1_identity_residual(const mock::ShadowParams& p, Complex tau, double tol = 1e-6,
                                std::optional<std::int64_t> order = std::nullopt);

/// The right-hand side alone: Appell terms at (B tau) plus E2(tau)/(12B).
Complex thm1_appell_side(const mock::ShadowParams& p, Complex tau, double tol = kDefaultTol);

struct NumericCheck {
  std::string identity;
  std::string point;
  Residual residual;
};

/// Seeded random safe configurations: `count` each of elliptic, modular and
/// E2hat residuals, a beta_1 quadrature grid, and the Appell identity at two
/// tau points for every parameter in `params`.
std::vector<NumericCheck> run_numeric_suite(std::uint64_t seed, int count,
                                            const std::vector<mock::ShadowParams>& params);

}  // namespace mocklab::numerics
