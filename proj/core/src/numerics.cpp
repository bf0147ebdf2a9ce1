#include "mocklab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mocklab/series.hpp"

namespace mocklab::numerics {

namespace {

using namespace std::complex_literals;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::int64_t kMaxTerms = 1'000'000;

// e(x) = exp(2 pi i x)
Complex e(Complex x) { return std::exp(kTwoPi * 1i * x); }

void guard_denominator(Complex denom, std::int64_t n) {
  if (std::abs(denom) < kPoleGuard) {
    std::ostringstream msg;
    msg << "Appell denominator |1 - e(u) q^" << n << "| = " << std::abs(denom) << " below the pole guard";
    throw PoleError(msg.str());
  }
}

void guard_terms(std::int64_t terms, const char* what) {
  if (terms > kMaxTerms) {
    throw std::domain_error(std::string(what) + ": series did not converge (Im tau too small?)");
  }
}

// Shared Appell summation; `derivative` weights term n by n.
//
// Tail control: with env_n = |q|^((n^2+n)/2) e^(-2 pi n Im v) the ratio
// env_(n+1)/env_n = |q|^(n+1) e^(-2 pi Im v) decreases in n. Once it is
// below 1/4 and |e(u) q^(n+1)| <= 1/2, the remaining terms are bounded by
// 4 (n+1) env_(n+1) |e^(pi i u)|. The negative side is symmetric after
// rewriting 1/(1 - x q^-k) = -x^-1 q^k / (1 - x^-1 q^k).
Evaluation appell_core(Complex u, Complex v, Complex tau, double tol, bool derivative) {
  require_upper_half_plane(tau);
  if (!(tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const double y = tau.imag();
  const double log_q = -kTwoPi * y;
  const Complex x = e(u);
  const double log_x = std::log(std::abs(x));
  const double log_pre = std::log(std::abs(std::exp(kPi * 1i * u)));
  const double log_target = std::log(tol / 10);

  Complex sum = 0;
  std::int64_t terms = 0;
  for (std::int64_t n = 0;; ++n) {
    if (!(derivative && n == 0)) {
      const Complex denom = 1.0 - x * e(static_cast<double>(n) * tau);
      guard_denominator(denom, n);
      const double nn = static_cast<double>(n);
      Complex term = e(tau * (nn * nn + nn) / 2.0 + nn * v) / denom;
      if (n % 2 != 0) {
        term = -term;
      }
      sum += derivative ? nn * term : term;
    }
    ++terms;
    guard_terms(terms, "appell");
    const double n1 = static_cast<double>(n + 1);
    const double log_ratio = n1 * log_q - kTwoPi * v.imag();
    const double log_env_next = log_q * (n1 * n1 + n1) / 2 - kTwoPi * n1 * v.imag();
    const bool tail_ok = log_ratio < std::log(0.25) && log_x + n1 * log_q < std::log(0.5) &&
                         std::log(4 * n1) + log_env_next + log_pre < log_target;
    if (tail_ok) {
      break;
    }
  }
  for (std::int64_t k = 1;; ++k) {
    const double kk = static_cast<double>(k);
    const Complex denom = 1.0 - e(static_cast<double>(k) * tau - u);
    guard_denominator(denom, -k);
    Complex term = e(tau * (kk * kk + kk) / 2.0 - kk * v - u) / denom;
    if (k % 2 == 0) {
      term = -term;
    }
    sum += derivative ? -kk * term : term;
    ++terms;
    guard_terms(terms, "appell");
    const double k1 = kk + 1;
    const double log_ratio = k1 * log_q + kTwoPi * v.imag();
    const double log_env_next = log_q * (k1 * k1 + k1) / 2 + kTwoPi * k1 * v.imag() - log_x;
    const bool tail_ok = log_ratio < std::log(0.25) && -log_x + k1 * log_q < std::log(0.5) &&
                         std::log(4 * k1) + log_env_next + log_pre < log_target;
    if (tail_ok) {
      break;
    }
  }
  return {std::exp(kPi * 1i * u) * sum, terms};
}

int sgn(double x) { return (x > 0) - (x < 0); }

std::string describe(const ComplexPoint& pt) {
  std::ostringstream out;
  out.precision(6);
  out << "tau=" << pt.tau << " u=" << pt.u << " v=" << pt.v;
  return out.str();
}

std::string describe(const UnimodularMatrix& g) {
  std::ostringstream out;
  out << "gamma=(" << g.a() << "," << g.b() << ";" << g.c() << "," << g.d() << ")";
  return out.str();
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

class ConfigSampler {
 public:
  explicit ConfigSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Complex tau() { return {uniform(-0.5, 0.5), uniform(0.8, 1.4)}; }

  // Im(z)/Im(tau) kept at least 0.15 away from the integers.
  Complex elliptic(Complex tau) {
    const double a = uniform(0.15, 0.4) * (integer(0, 1) == 0 ? 1 : -1);
    return {uniform(-0.5, 0.5), a * tau.imag()};
  }

  UnimodularMatrix gamma() {
    UnimodularMatrix g = UnimodularMatrix::identity();
    const int length = integer(1, 3);
    for (int i = 0; i < length; ++i) {
      switch (integer(0, 2)) {
        case 0:
          g = g * UnimodularMatrix::S();
          break;
        case 1:
          g = g * UnimodularMatrix::T();
          break;
        default:
          g = g * UnimodularMatrix(1, -1, 0, 1);
          break;
      }
    }
    return g;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

void require_upper_half_plane(Complex tau) {
  if (!(tau.imag() > 0)) {
    throw std::domain_error("tau must lie in the upper half-plane");
  }
}

UnimodularMatrix::UnimodularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  __extension__ typedef __int128 wide;
  if (static_cast<wide>(a) * d - static_cast<wide>(b) * c != 1) {
    throw std::invalid_argument("matrix determinant must be 1");
  }
}

Complex UnimodularMatrix::apply(Complex tau) const {
  return (static_cast<double>(a_) * tau + static_cast<double>(b_)) / automorphy(tau);
}

Complex UnimodularMatrix::automorphy(Complex tau) const {
  return static_cast<double>(c_) * tau + static_cast<double>(d_);
}

UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

Evaluation appell_eval(Complex u, Complex v, Complex tau, double tol) {
  return appell_core(u, v, tau, tol, false);
}

Complex appell_num(Complex u, Complex v, Complex tau, double tol) { return appell_eval(u, v, tau, tol).value; }

Evaluation appell_dv_eval(Complex u, Complex v, Complex tau, double tol) {
  return appell_core(u, v, tau, tol, true);
}

Complex appell_dv_num(Complex u, Complex v, Complex tau, double tol) {
  return appell_dv_eval(u, v, tau, tol).value;
}

Complex jacobi_theta_num(Complex v, Complex tau, double tol) {
  require_upper_half_plane(tau);
  const double y = tau.imag();
  const double log_target = std::log(tol / 10);
  Complex sum = 0;
  // Term nu has modulus exp(-pi y nu^2 - 2 pi nu Im v); sum each side
  // until the next term is below target and the ratio below 1/2.
  for (const double side : {1.0, -1.0}) {
    for (std::int64_t j = 0;; ++j) {
      const double nu = side * (static_cast<double>(j) + 0.5);
      sum += e(tau * nu * nu / 2.0 + nu * (v + 0.5));
      guard_terms(j, "theta");
      const double next = side * (static_cast<double>(j) + 1.5);
      const double log_next = -kPi * y * next * next - kTwoPi * next * v.imag();
      const double log_ratio = -kPi * y * (2 * std::abs(next) - 1) - side * kTwoPi * v.imag();
      if (log_next < log_target && log_ratio < std::log(0.5)) {
        break;
      }
    }
  }
  return sum;
}

double beta1_closed(double t) {
  if (t < 0) {
    throw std::domain_error("beta_1 requires t >= 0");
  }
  return std::erfc(std::sqrt(kPi * t));
}

double beta1_quadrature(double t) {
  if (t < 0) {
    throw std::domain_error("beta_1 requires t >= 0");
  }
  // u = w^2 turns the endpoint singularity into a smooth Gaussian tail.
  auto integrand = [](double w) { return 2 * std::exp(-kPi * w * w); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, std::sqrt(t), std::numeric_limits<double>::infinity(), 15, 1e-15);
}

Complex r_function_num(Complex u, Complex tau, double tol, RConvention conv) {
  require_upper_half_plane(tau);
  const double y = tau.imag();
  const double a = u.imag() / y;
  // Away from [min(0,-a), max(0,-a)] the bracket is sgn(nu) beta_1(2y(nu+a)^2)
  // and the term modulus is at most exp(-pi y ((nu+a)^2 + a^2)) <= exp(-pi y (nu+a)^2),
  // so a margin L with exp(-pi y L^2) < tol/10 suffices.
  const double margin = std::sqrt(std::log(10 / tol) / (kPi * y)) + 2;
  const auto lo = static_cast<std::int64_t>(std::floor(std::min(0.0, -a) - margin));
  const auto hi = static_cast<std::int64_t>(std::ceil(std::max(0.0, -a) + margin));
  Complex sum = 0;
  for (std::int64_t j = lo; j <= hi; ++j) {
    const double nu = static_cast<double>(j) + 0.5;
    const double shifted = nu + a;
    double bracket = 0;
    if (sgn(nu) == sgn(shifted)) {
      bracket = sgn(nu) * beta1_closed(2 * y * shifted * shifted);
    } else {
      bracket = sgn(nu) + sgn(shifted) * (beta1_closed(2 * y * shifted * shifted) - 1);
    }
    if (bracket == 0) {
      continue;
    }
    const Complex gauss = e(-tau * nu * nu / 2.0);
    if (conv == RConvention::zwegers) {
      const double parity = (j % 2 == 0) ? 1.0 : -1.0;
      sum += bracket * parity * gauss * e(-nu * u);
    } else {
      sum += bracket * gauss * e(-nu * (u + 0.5));
    }
  }
  return conv == RConvention::zwegers ? sum : -1i * sum;
}

Complex appell_hat_num(Complex u, Complex v, Complex tau, double tol, RConvention conv) {
  return appell_num(u, v, tau, tol) + 0.5i * jacobi_theta_num(v, tau, tol) * r_function_num(u - v, tau, tol, conv);
}

Residual elliptic_transform_residual(const ComplexPoint& pt, const EllipticShift& s, double tol, EllipticSign sign,
                                     RConvention conv) {
  const Complex tau = pt.tau;
  const Complex lhs = appell_hat_num(pt.u + static_cast<double>(s.lambda) * tau + static_cast<double>(s.mu),
                                     pt.v + static_cast<double>(s.l) * tau + static_cast<double>(s.k), tau,
                                     kDefaultTol, conv);
  const int exponent = sign == EllipticSign::lambda_mu ? s.lambda + s.mu : s.k + s.l;
  const double parity = (exponent % 2 == 0) ? 1.0 : -1.0;
  const double lam = s.lambda;
  const double ell = s.l;
  const Complex factor = parity * e(tau * (lam * lam - 2 * lam * ell) / 2.0 + pt.u * (lam - ell) - lam * pt.v);
  const Complex rhs = factor * appell_hat_num(pt.u, pt.v, tau, kDefaultTol, conv);
  return {std::abs(lhs - rhs), tol, 2};
}

Residual modular_transform_residual(const ComplexPoint& pt, const UnimodularMatrix& g, double tol, RConvention conv) {
  require_upper_half_plane(pt.tau);
  const Complex j = g.automorphy(pt.tau);
  const double c = static_cast<double>(g.c());
  const Complex lhs = appell_hat_num(pt.u / j, pt.v / j, g.apply(pt.tau), kDefaultTol, conv);
  const Complex rhs = j * std::exp(kPi * 1i * c * (2.0 * pt.u * pt.v - pt.u * pt.u) / j) *
                      appell_hat_num(pt.u, pt.v, pt.tau, kDefaultTol, conv);
  return {std::abs(lhs - rhs), tol, 2};
}

Complex e2_num(Complex tau, double tol) {
  require_upper_half_plane(tau);
  const double abs_q = std::exp(-kTwoPi * tau.imag());
  Complex sum = 0;
  // |n q^n / (1 - q^n)| <= n |q|^n / (1 - |q|); the tail after n is bounded
  // by (n+1)|q|^(n+1) / (1 - |q|)^3.
  for (std::int64_t n = 1;; ++n) {
    const Complex qn = e(static_cast<double>(n) * tau);
    sum += static_cast<double>(n) * qn / (1.0 - qn);
    guard_terms(n, "E2");
    const double next = static_cast<double>(n + 1);
    const double tail = 24 * next * std::pow(abs_q, next) / std::pow(1 - abs_q, 3);
    if (tail < tol / 10) {
      break;
    }
  }
  return 1.0 - 24.0 * sum;
}

Complex e2hat_num(Complex tau, double tol) { return e2_num(tau, tol) - 3 / (kPi * tau.imag()); }

Residual e2hat_residual(Complex tau, const UnimodularMatrix& g, double tol) {
  const Complex j = g.automorphy(tau);
  return {std::abs(e2hat_num(g.apply(tau)) - j * j * e2hat_num(tau)), tol, 2};
}

Complex thm1_appell_side(const mock::ShadowParams& p, Complex tau, double tol) {
  require_upper_half_plane(tau);
  const double A = static_cast<double>(p.A());
  const double B = static_cast<double>(p.B());
  const double shift = p.eps() / 2.0;
  const Complex w = B * tau;
  const Complex v1 = (A - B / 2) * tau - 0.5 + shift;
  const Complex u2 = (B - 2 * A) * tau;
  const Complex v2 = (B / 2 - A) * tau - 0.5 + shift;
  const double sign = ((p.kappa() + p.eps()) % 2 == 0) ? 1.0 : -1.0;
  return appell_dv_num(0, v1, w, tol) +
         sign * (appell_dv_num(u2, v2, w, tol) + (B - 2 * A) / B * appell_num(u2, v2, w, tol)) +
         e2_num(tau, tol) / (12 * B);
}

Residual thm1_identity_residual(const mock::ShadowParams& p, Complex tau, double tol,
                                std::optional<std::int64_t> order) {
  require_upper_half_plane(tau);
  std::int64_t omega = 0;
  if (order) {
    omega = *order;
  } else {
    // Coefficients grow at most polynomially; pick Omega with |q|^Omega Omega^3 < 1e-13.
    const double log_q = -kTwoPi * tau.imag();
    omega = 4;
    while (static_cast<double>(omega) * log_q + 3 * std::log(static_cast<double>(omega)) > std::log(1e-13)) {
      ++omega;
    }
  }
  const auto series = mock::product_series_thm1(p, Rational(omega));
  const Complex lhs = qseries::series_eval_num(series, tau).value / p.b_star().get_d();
  const Complex rhs = thm1_appell_side(p, tau);
  return {std::abs(lhs - rhs), tol, static_cast<std::int64_t>(series.size())};
}

std::vector<NumericCheck> run_numeric_suite(std::uint64_t seed, int count,
                                            const std::vector<mock::ShadowParams>& params) {
  std::vector<NumericCheck> out;
  ConfigSampler sampler(seed);

  for (int i = 0; i < count; ++i) {
    ComplexPoint pt;
    pt.tau = sampler.tau();
    pt.u = sampler.elliptic(pt.tau);
    pt.v = sampler.elliptic(pt.tau);
    const EllipticShift s{sampler.integer(-1, 1), sampler.integer(-2, 2), sampler.integer(-1, 1),
                          sampler.integer(-2, 2)};
    std::ostringstream where;
    where << describe(pt) << " shift=(" << s.lambda << "," << s.mu << "," << s.l << "," << s.k << ")";
    out.push_back({"elliptic", where.str(), elliptic_transform_residual(pt, s)});
  }

  for (int i = 0; i < count; ++i) {
    // Resample until gamma tau stays comfortably inside the half-plane and
    // u / (c tau + d) stays off the lattice.
    for (;;) {
      ComplexPoint pt;
      pt.tau = sampler.tau();
      pt.u = sampler.elliptic(pt.tau);
      pt.v = sampler.elliptic(pt.tau);
      const UnimodularMatrix g = sampler.gamma();
      const Complex image = g.apply(pt.tau);
      const Complex u_image = pt.u / g.automorphy(pt.tau);
      if (image.imag() < 0.5 || distance_to_integer(u_image.imag() / image.imag()) < 0.1) {
        continue;
      }
      out.push_back({"modular", describe(pt) + " " + describe(g), modular_transform_residual(pt, g)});
      break;
    }
  }

  for (int i = 0; i < count; ++i) {
    for (;;) {
      const Complex tau = sampler.tau();
      const UnimodularMatrix g = sampler.gamma();
      if (g.apply(tau).imag() < 0.3) {
        continue;
      }
      std::ostringstream where;
      where.precision(6);
      where << "tau=" << tau << " " << describe(g);
      out.push_back({"e2hat", where.str(), e2hat_residual(tau, g)});
      break;
    }
  }

  constexpr int kGrid = 25;
  for (int i = 0; i < kGrid; ++i) {
    const double t = 1e-3 * std::pow(20 / 1e-3, static_cast<double>(i) / (kGrid - 1));
    std::ostringstream where;
    where.precision(6);
    where << "t=" << t;
    out.push_back({"beta1", where.str(), {std::abs(beta1_closed(t) - beta1_quadrature(t)), 1e-10, 1}});
  }

  for (const auto& p : params) {
    for (const Complex tau : {Complex(0.05, 1.1), Complex(0.0, 0.9)}) {
      std::ostringstream where;
      where.precision(6);
      where << "A=" << p.A() << " B=" << p.B() << " eps=" << p.eps() << " kappa=" << p.kappa() << " tau=" << tau;
      out.push_back({"thm1", where.str(), thm1_identity_residual(p, tau)});
    }
  }
  return out;
}

}  // namespace mocklab::numerics
