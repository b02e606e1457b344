#include "hankel/specfun.hpp"
#include "hankel/quad.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hankel {

void SpecFunAccuracy::validate() const {
  if (!(target_rel_err > 10 * std::numeric_limits<double>::epsilon()))
    throw std::invalid_argument("SpecFunAccuracy: target_rel_err too small");
  if (max_nodes < 64)
    throw std::invalid_argument("SpecFunAccuracy: max_nodes must be >= 64");
}

namespace specfun {
namespace {

constexpr double pi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_gamma_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::nearbyint(z.real());
}

// log Γ(z) for Re z >= 1/2.
Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex a = lanczos_p[0];
  for (std::size_t i = 1; i < lanczos_p.size(); ++i)
    a += lanczos_p[i] / (z + static_cast<double>(i));
  const Complex t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// log sin(πz), stable for large |Im z|.
Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  if (std::abs(y) < 20.0)
    return std::log(std::sin(pi * z));
  const Complex i(0.0, 1.0);
  if (y > 0) // e^{-iπz} dominates
    return -i * pi * z - std::log(2.0 * i) +
           std::log(1.0 - std::exp(2.0 * i * pi * z));
  return i * pi * z - std::log(-2.0 * i) +
         std::log(1.0 - std::exp(-2.0 * i * pi * z));
}

void require_finite(double v, const char *what) {
  if (!std::isfinite(v))
    throw SpecFunError(SpecFunError::Kind::accuracy,
                       std::string(what) + ": non-finite result");
}

// P_{-1/2+ik}(1+x) by the series F(1/2-ik, 1/2+ik; 1; -x/2), x < 1.
double conical_near_one(double k, double x) {
  double term = 1.0, sum = 1.0;
  const double w = -0.5 * x;
  for (int n = 0; n < 2000; ++n) {
    const double a = n + 0.5;
    term *= (a * a + k * k) / ((n + 1.0) * (n + 1.0)) * w;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && (n + 1.0) * (n + 1.0) > k * k * std::abs(w))
      return sum;
  }
  throw SpecFunError(SpecFunError::Kind::accuracy,
                     "legendre_conical: series about z=1 did not converge");
}

// P_{-1/2+ik}(z), z >= 2, from the expansion in 1/z².
double conical_large(double k, double z) {
  const Complex ik(0.0, k);
  const Complex nu(-0.5, k);
  const Complex log_pref = log_gamma(ik) - log_gamma(0.5 + ik) -
                           0.5 * std::log(pi) + nu * std::log(2.0 * z);
  const Complex a(0.25, -0.5 * k), b(0.75, -0.5 * k), c(1.0, -k);
  const double w = 1.0 / (z * z);
  Complex term = 1.0, sum = 1.0;
  for (int n = 0; n < 4000; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * (n + 1.0)) * w;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2)
      return 2.0 * (std::exp(log_pref) * sum).real();
  }
  throw SpecFunError(SpecFunError::Kind::accuracy,
                     "legendre_conical: 1/z^2 expansion did not converge");
}

// Mehler–Dirichlet: P_{-1/2+ik}(cosh θ) = (2/π)∫₀^θ cos(kt)/√(2coshθ-2cosh t) dt,
// with t = θ - s² removing the endpoint singularity.
double conical_mehler_dirichlet(double k, double z, const SpecFunAccuracy &acc) {
  const double theta = std::acosh(z);
  auto integrand = [&](double s) {
    const double s2 = s * s;
    if (s == 0.0)
      return std::sqrt(2.0 / std::sinh(theta)) * std::cos(k * theta);
    const double denom =
        2.0 * std::sqrt(std::sinh(theta - 0.5 * s2) * std::sinh(0.5 * s2));
    return 2.0 * s * std::cos(k * (theta - s2)) / denom;
  };
  QuadOpts opts;
  opts.rel_tol = std::min(acc.target_rel_err, 1e-12);
  opts.abs_tol = 0.0;
  const QuadResult r = integrate_interval(integrand, 0.0, std::sqrt(theta), opts);
  return 2.0 / pi * r.value;
}

} // namespace

Complex log_gamma(Complex z) {
  if (is_gamma_pole(z))
    throw SpecFunError(SpecFunError::Kind::pole, "gamma: pole at non-positive integer");
  if (z.real() >= 0.5)
    return log_gamma_right(z);
  return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) {
  if (is_gamma_pole(z))
    throw SpecFunError(SpecFunError::Kind::pole, "gamma: pole at non-positive integer");
  if (z.real() >= 0.5)
    return std::exp(log_gamma_right(z));
  // Reflection in direct form keeps the sign right on the negative real axis.
  if (std::abs(z.imag()) < 20.0)
    return pi / (std::sin(pi * z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma(z));
}

double legendre_conical(double k, double x, const SpecFunAccuracy &acc) {
  if (!std::isfinite(k) || !std::isfinite(x) || k < 0.0 || x < 0.0)
    throw SpecFunError(SpecFunError::Kind::domain,
                       "legendre_conical: requires finite k >= 0 and x >= 0");
  double v;
  if (x < 1.0)
    v = conical_near_one(k, x);
  else if (k < 1e-3)
    v = conical_mehler_dirichlet(k, x + 1.0, acc);
  else
    v = conical_large(k, x + 1.0);
  require_finite(v, "legendre_conical");
  return v;
}

double whittaker_w(double beta, Order nu, double x, const SpecFunAccuracy &acc) {
  if (!(x > 0.0))
    throw SpecFunError(SpecFunError::Kind::domain, "whittaker_w: requires x > 0");
  return WhittakerW(beta, nu, x, acc).value(x);
}

double macdonald_k(Order nu, double z, const SpecFunAccuracy &acc) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw SpecFunError(SpecFunError::Kind::domain, "macdonald_k: requires z > 0");
  const double v = nu.magnitude();
  const bool osc = nu.is_imaginary();

  // log of the integrand relative to e^{-z}: -2z sinh²(t/2) + log cosh(vt)
  auto log_env = [&](double t) {
    const double sh = std::sinh(0.5 * t);
    double l = -2.0 * z * sh * sh;
    if (!osc)
      l += v * t + std::log1p(std::exp(-2.0 * v * t)) - std::log(2.0);
    return l;
  };
  double t_peak = 0.0;
  if (!osc && v > 0.0)
    t_peak = std::asinh(v / z);
  const double peak = log_env(t_peak);
  double T = std::max(t_peak, 0.5);
  while (log_env(T) > peak - 42.0)
    T *= 1.25;

  auto f = [&](double t) {
    const double sh = std::sinh(0.5 * t);
    const double e = std::exp(-2.0 * z * sh * sh);
    return osc ? e * std::cos(v * t) : e * std::cosh(v * t);
  };

  int n = 16;
  double h = T / n;
  double sum = 0.5 * f(0.0) + 0.5 * f(T);
  double abs_sum = std::abs(sum);
  for (int j = 1; j < n; ++j) {
    const double fj = f(j * h);
    sum += fj;
    abs_sum += std::abs(fj);
  }
  double prev = sum * h;
  // The rule is only trusted once the step resolves the oscillation.
  const double h_resolve = std::min(0.5, osc ? 1.0 / std::max(v, 1.0) : 0.5);
  for (;;) {
    if (2 * n > acc.max_nodes)
      throw SpecFunError(SpecFunError::Kind::accuracy,
                         "macdonald_k: trapezoid rule did not converge");
    double mid = 0.0;
    for (int j = 0; j < n; ++j) {
      const double fj = f((j + 0.5) * h);
      mid += fj;
      abs_sum += std::abs(fj);
    }
    sum += mid;
    n *= 2;
    h *= 0.5;
    const double cur = sum * h;
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (h <= h_resolve &&
        diff <= std::max(acc.target_rel_err * 1e-3 * std::abs(cur),
                         4.0 * std::numeric_limits<double>::epsilon() * abs_sum * h))
      break;
  }
  const double val = prev * std::exp(-z);
  require_finite(val, "macdonald_k");
  return val;
}

double laguerre(int n, double alpha, double x) {
  if (n < 0)
    throw std::invalid_argument("laguerre: degree must be non-negative");
  if (n == 0)
    return 1.0;
  double prev = 1.0, cur = 1.0 + alpha - x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

SpectralMaps spectral_maps(double k) {
  if (!(k >= 0.0) || !std::isfinite(k))
    throw std::invalid_argument("spectral_maps: requires finite k >= 0");
  return {k * k + 0.25, pi / std::cosh(pi * k)};
}

} // namespace specfun
} // namespace hankel
