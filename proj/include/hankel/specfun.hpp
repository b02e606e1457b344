#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hankel {

using Complex = std::complex<double>;

/// Raised when a special function cannot be evaluated: a pole, a point outside
/// the supported domain, or an internal error estimate above the target.
class SpecFunError : public std::runtime_error {
public:
  enum class Kind { pole, domain, accuracy, parameter };

  SpecFunError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct SpecFunAccuracy {
  double target_rel_err = 1e-10;
  int max_nodes = 1 << 14;

  void validate() const;
};

/// Index of a Whittaker or MacDonald function: a real p or a purely imaginary
/// ik, stored as a magnitude plus a flag.
class Order {
public:
  static Order real(double p) { return Order(p, false); }
  static Order imag(double k) { return Order(k, true); }

  double magnitude() const noexcept { return value_; }
  bool is_imaginary() const noexcept { return imaginary_; }
  /// ν² as a real number: p² for real order, -k² for imaginary order.
  double squared() const noexcept {
    return imaginary_ ? -value_ * value_ : value_ * value_;
  }
  Complex as_complex() const noexcept {
    return imaginary_ ? Complex(0.0, value_) : Complex(value_, 0.0);
  }

private:
  Order(double v, bool im) : value_(v), imaginary_(im) {}
  double value_;
  bool imaginary_;
};

namespace specfun {

/// Γ(z) for complex z. Lanczos approximation (g = 7) with reflection for
/// Re z < 1/2. Throws SpecFunError::pole at non-positive integers.
Complex gamma(Complex z);

/// log Γ(z) on the principal branch of the Lanczos form; finite wherever
/// gamma() is. Used when |Γ| would overflow or underflow.
Complex log_gamma(Complex z);

/// P_{-1/2+ik}(x+1), the conical (Mehler) function, for k >= 0 and x >= 0.
///
/// For x < 1 the hypergeometric series about z = 1 is summed; for x >= 1 the
/// expansion in 1/z² is used, written as twice the real part of the
/// ν = -1/2+ik branch. For k below 1e-3 the 1/z² expansion cancels badly, so
/// the Mehler–Dirichlet integral is evaluated instead.
double legendre_conical(double k, double x, const SpecFunAccuracy &acc = {});

/// W_{-β,ν}(x) for real β, real or imaginary ν and x > 0.
///
/// One-off evaluation. Repeated evaluation at many x for fixed (β, ν) should
/// go through WhittakerW, which amortises the ODE sweep.
double whittaker_w(double beta, Order nu, double x,
                   const SpecFunAccuracy &acc = {});

/// K_ν(z) for z > 0 with real or imaginary order, via
/// ∫₀^∞ e^{-z cosh t} cosh(νt) dt summed by the trapezoid rule with step
/// halving. The integrand is analytic in a strip, so the rule converges
/// geometrically once the step resolves the oscillation.
double macdonald_k(Order nu, double z, const SpecFunAccuracy &acc = {});

/// Generalised Laguerre polynomial L^α_n(x) by the three-term recurrence.
double laguerre(int n, double alpha, double x);

struct SpectralMaps {
  double mu;
  double lambda;
};

/// μ = k² + 1/4 and λ = π / cosh(πk). Every eigen family takes its λ(k)
/// from here so the values are identical everywhere.
SpectralMaps spectral_maps(double k);

} // namespace specfun

/// W_{-β,ν}(x) with the ODE sweep cached.
///
/// Writing W(x) = x^{1/2} w(ln x) turns the Whittaker equation into
/// w'' = (e^{2s}/4 + β e^s + ν²) w. The decaying solution is seeded at a large
/// X from the asymptotic series and integrated inward in s with an adaptive
/// Runge–Kutta–Fehlberg 7(8) pair; every accepted step is stored. A query
/// at x takes one step from the nearest checkpoint above ln x, so it costs
/// about 13 right-hand-side evaluations.
///
/// When 1/2 + |ν| + β is a non-positive integer (real ν), W is a Laguerre
/// polynomial times e^{-x/2} x^{ν+1/2} and is evaluated in closed form.
class WhittakerW {
public:
  WhittakerW(double beta, Order nu, double x_min = 1e-40,
             const SpecFunAccuracy &acc = {});

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  double derivative(double x) const;
  /// W and dW/dx together.
  std::pair<double, double> value_and_derivative(double x) const;

  double beta() const noexcept { return beta_; }
  const Order &order() const noexcept { return nu_; }
  /// Start of the inward integration (asymptotic series used above it).
  double seed_point() const noexcept { return x_seed_; }
  std::size_t checkpoints() const noexcept { return s_.size(); }

private:
  std::pair<double, double> series(double x) const;
  std::pair<double, double> laguerre_form(double x) const;

  double beta_;
  Order nu_;
  double x_min_;
  double x_seed_ = 0.0;
  bool closed_form_ = false;
  int laguerre_degree_ = 0;
  double laguerre_scale_ = 0.0;
  // checkpoints, decreasing in s
  std::vector<double> s_, w_, dw_;
};

} // namespace hankel
