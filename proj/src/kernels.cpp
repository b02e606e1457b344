#include "hankel/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hankel {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_x(const KernelSpec &spec, double x) {
  if (!std::isfinite(x) || x < 0.0 || (x == 0.0 && spec.singular_at_zero()))
    throw SpecFunError(SpecFunError::Kind::domain,
                       spec.name() + ": kernel evaluated outside its domain");
}

// 8 K₁(z)/z and its first two z-derivatives.
struct MacG {
  double g, dg, d2g;
};

MacG macdonald_g(double z, bool need_derivs) {
  const double k1 = specfun::macdonald_k(Order::real(1.0), z);
  MacG r{8.0 * k1 / z, 0.0, 0.0};
  if (!need_derivs)
    return r;
  const double k0 = specfun::macdonald_k(Order::real(0.0), z);
  const double dk1 = -k0 - k1 / z;
  const double d2k1 = (1.0 + 1.0 / (z * z)) * k1 - dk1 / z;
  r.dg = 8.0 * (dk1 / z - k1 / (z * z));
  r.d2g = 8.0 * (d2k1 / z - 2.0 * dk1 / (z * z) + 2.0 * k1 / (z * z * z));
  return r;
}

// x-derivatives of G(z(x)) with z = √(8r), r = x + shift.
KernelDerivs macdonald_chain(double r, double scale) {
  const double z = std::sqrt(8.0 * r);
  const MacG g = macdonald_g(z, true);
  const double dz = 4.0 / z;
  const double d2z = -16.0 / (z * z * z);
  return {scale * g.g, scale * g.dg * dz, scale * (g.d2g * dz * dz + g.dg * d2z)};
}

} // namespace

void LParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw std::invalid_argument("LParams: non-finite coefficient");
  if (alpha < 0.0 || gamma < 0.0)
    throw std::invalid_argument("LParams: requires alpha >= 0 and gamma >= 0");
}

double EndBehavior::operator()(double x) const {
  return coeff * std::pow(x, power) * std::exp(-rate * std::pow(x, stretch));
}

std::string EndBehavior::describe() const {
  std::ostringstream os;
  os << coeff;
  if (power != 0.0)
    os << "*x^" << power;
  if (rate != 0.0) {
    os << "*exp(-" << rate << "*x";
    if (stretch != 1.0)
      os << "^" << stretch;
    os << ")";
  }
  return os.str();
}

KernelSpec KernelSpec::mehler() {
  KernelSpec s;
  s.id_ = KernelId::mehler;
  s.name_ = "mehler";
  s.params_ = {0.0, 0.0, 2.0};
  s.sing_inf_ = true;
  return s;
}

KernelSpec KernelSpec::carleman() {
  KernelSpec s;
  s.id_ = KernelId::carleman;
  s.name_ = "carleman";
  s.params_ = {0.0, 0.0, 0.0};
  s.sing0_ = s.sing_inf_ = true;
  return s;
}

KernelSpec KernelSpec::whittaker(double beta) {
  if (!std::isfinite(beta))
    throw SpecFunError(SpecFunError::Kind::parameter, "whittaker kernel: non-finite beta");
  const double nearest = std::nearbyint(beta);
  if (nearest <= -1.0 && std::abs(beta - nearest) < 1e-6)
    throw SpecFunError(SpecFunError::Kind::parameter,
                       "whittaker kernel: beta must avoid -1, -2, ... (pole of Gamma(1+beta))");
  KernelSpec s;
  s.id_ = KernelId::whittaker;
  s.name_ = "whittaker(" + fmt(beta) + ")";
  s.params_ = {0.25, beta, 0.0};
  s.sing0_ = true;
  s.beta_ = beta;
  s.gamma_factor_ = specfun::gamma(Complex(1.0 + beta, 0.0)).real();
  s.w_ = std::make_shared<const WhittakerW>(beta, Order::real(0.5), 1e-40);
  return s;
}

KernelSpec KernelSpec::macdonald() {
  KernelSpec s;
  s.id_ = KernelId::macdonald;
  s.name_ = "macdonald";
  s.params_ = {0.0, 2.0, 0.0};
  s.sing0_ = true;
  return s;
}

KernelSpec KernelSpec::regular_whittaker(double beta) {
  if (!std::isfinite(beta))
    throw SpecFunError(SpecFunError::Kind::parameter,
                       "regular_whittaker kernel: non-finite beta");
  KernelSpec s;
  s.id_ = KernelId::regular_whittaker;
  s.name_ = "regular_whittaker(" + fmt(beta) + ")";
  // The shift x -> x+2 moves the linear coefficient by 2α = 1/2.
  s.params_ = {0.25, beta + 0.5, 2.0};
  s.beta_ = beta;
  s.w_ = std::make_shared<const WhittakerW>(beta, Order::real(0.5), 1.0);
  return s;
}

KernelSpec KernelSpec::regular_macdonald() {
  KernelSpec s;
  s.id_ = KernelId::regular_macdonald;
  s.name_ = "regular_macdonald";
  s.params_ = {0.0, 2.0, 2.0};
  return s;
}

KernelSpec KernelSpec::finite_rank(int l) {
  if (l < 1)
    throw SpecFunError(SpecFunError::Kind::parameter, "finite_rank kernel: l must be >= 1");
  KernelSpec s;
  s.id_ = KernelId::finite_rank;
  s.name_ = "finite_rank(" + std::to_string(l) + ")";
  s.params_ = {0.25, -static_cast<double>(l), 0.0};
  s.l_ = l;
  s.beta_ = -static_cast<double>(l);
  return s;
}

KernelSpec KernelSpec::custom(std::string name, Fn a, LParams params,
                              bool singular_at_zero, bool singular_at_infinity) {
  if (!a)
    throw std::invalid_argument("custom kernel: empty function");
  KernelSpec s;
  s.id_ = KernelId::custom;
  s.name_ = std::move(name);
  s.params_ = params;
  s.sing0_ = singular_at_zero;
  s.sing_inf_ = singular_at_infinity;
  s.custom_ = std::move(a);
  return s;
}

KernelSpec KernelSpec::from_name(const std::string &id, double beta, int l) {
  if (id == "mehler")
    return mehler();
  if (id == "carleman")
    return carleman();
  if (id == "whittaker")
    return whittaker(beta);
  if (id == "macdonald")
    return macdonald();
  if (id == "regular_whittaker" || id == "regular-whittaker")
    return regular_whittaker(beta);
  if (id == "regular_macdonald" || id == "regular-macdonald")
    return regular_macdonald();
  if (id == "finite_rank" || id == "finite-rank")
    return finite_rank(l);
  throw std::invalid_argument("unknown kernel id: " + id);
}

double KernelSpec::operator()(double x) const {
  check_x(*this, x);
  switch (id_) {
  case KernelId::mehler:
    return 1.0 / (x + 2.0);
  case KernelId::carleman:
    return 1.0 / x;
  case KernelId::whittaker:
    return gamma_factor_ * w_->value(x) / x;
  case KernelId::macdonald:
    return macdonald_g(std::sqrt(8.0 * x), false).g;
  case KernelId::regular_whittaker:
    return w_->value(x + 2.0) / (x + 2.0);
  case KernelId::regular_macdonald:
    return macdonald_g(std::sqrt(8.0 * (x + 2.0)), false).g / std::sqrt(8.0);
  case KernelId::finite_rank:
    return std::exp(-0.5 * x) * specfun::laguerre(l_ - 1, 1.0, x);
  case KernelId::custom:
    return custom_(x);
  }
  return 0.0;
}

double kernel_eval(const KernelSpec &spec, double x) { return spec(x); }

KernelDerivs kernel_derivatives(const KernelSpec &spec, double x) {
  check_x(spec, x);
  switch (spec.id_) {
  case KernelId::mehler:
  case KernelId::carleman: {
    const double r = spec.id_ == KernelId::mehler ? x + 2.0 : x;
    return {1.0 / r, -1.0 / (r * r), 2.0 / (r * r * r)};
  }
  case KernelId::whittaker: {
    const auto [W, dW] = spec.w_->value_and_derivative(x);
    const double d2W = (0.25 + spec.beta_ / x) * W;
    const double G = spec.gamma_factor_;
    return {G * W / x, G * (dW / x - W / (x * x)),
            G * (d2W / x - 2.0 * dW / (x * x) + 2.0 * W / (x * x * x))};
  }
  case KernelId::regular_whittaker: {
    const double r = x + 2.0;
    const auto [W, dW] = spec.w_->value_and_derivative(r);
    const double d2W = (0.25 + spec.beta_ / r) * W;
    return {W / r, dW / r - W / (r * r), d2W / r - 2.0 * dW / (r * r) + 2.0 * W / (r * r * r)};
  }
  case KernelId::macdonald:
    return macdonald_chain(x, 1.0);
  case KernelId::regular_macdonald:
    return macdonald_chain(x + 2.0, 1.0 / std::sqrt(8.0));
  case KernelId::finite_rank: {
    const int l = spec.l_;
    const double L = specfun::laguerre(l - 1, 1.0, x);
    const double dL = l >= 2 ? -specfun::laguerre(l - 2, 2.0, x) : 0.0;
    const double d2L = l >= 3 ? specfun::laguerre(l - 3, 3.0, x) : 0.0;
    const double e = std::exp(-0.5 * x);
    return {e * L, e * (dL - 0.5 * L), e * (d2L - dL + 0.25 * L)};
  }
  case KernelId::custom:
    return kernel_derivatives_numeric(spec, x);
  }
  return {};
}

KernelDerivs kernel_derivatives_numeric(const KernelSpec &spec, double x) {
  check_x(spec, x);
  double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(x, 1.0);
  if (spec.singular_at_zero())
    h = std::min(h, 0.25 * x);
  else if (x - 2.0 * h < 0.0)
    h = 0.5 * x > 0.0 ? std::min(h, 0.5 * x) : h;
  const double fm2 = spec(x - 2.0 * h), fm1 = spec(x - h), f0 = spec(x);
  const double fp1 = spec(x + h), fp2 = spec(x + 2.0 * h);
  const double d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  return {f0, d1, d2};
}

double ode_residual(const KernelSpec &spec, const LParams &p, double x) {
  const KernelDerivs d = kernel_derivatives(spec, x);
  return -(x + p.gamma) * d.d2a - 2.0 * d.da + (p.alpha * x + p.beta) * d.a;
}

double ode_residual(const KernelSpec &spec, double x) {
  return ode_residual(spec, spec.params(), x);
}

double ode_residual_normalized(const KernelSpec &spec, const LParams &p, double x,
                               bool numeric) {
  const KernelDerivs d =
      numeric ? kernel_derivatives_numeric(spec, x) : kernel_derivatives(spec, x);
  const double r = -(x + p.gamma) * d.d2a - 2.0 * d.da + (p.alpha * x + p.beta) * d.a;
  return r / (std::abs(d.a) + std::abs(d.da) + std::abs(d.d2a) + 1e-300);
}

KernelAsymptotics kernel_asymptotics(const KernelSpec &spec) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  switch (spec.id()) {
  case KernelId::mehler:
    return {{0.5, 0.0, 0.0, 1.0}, {1.0, -1.0, 0.0, 1.0}};
  case KernelId::carleman:
    return {{1.0, -1.0, 0.0, 1.0}, {1.0, -1.0, 0.0, 1.0}};
  case KernelId::whittaker: {
    const double b = spec.beta();
    const double G = specfun::gamma(Complex(1.0 + b, 0.0)).real();
    return {{1.0, -1.0, 0.0, 1.0}, {G, -1.0 - b, 0.5, 1.0}};
  }
  case KernelId::macdonald:
    return {{1.0, -1.0, 0.0, 1.0},
            {std::pow(2.0, 0.25) * sqrt_pi, -0.75, std::sqrt(8.0), 0.5}};
  case KernelId::regular_whittaker:
    return {{spec(0.0), 0.0, 0.0, 1.0}, {std::exp(-1.0), -1.0 - spec.beta(), 0.5, 1.0}};
  case KernelId::regular_macdonald:
    return {{spec(0.0), 0.0, 0.0, 1.0},
            {std::pow(2.0, -1.25) * sqrt_pi, -0.75, std::sqrt(8.0), 0.5}};
  case KernelId::finite_rank: {
    const int l = spec.rank();
    double fact = 1.0;
    for (int j = 2; j < l; ++j)
      fact *= j;
    const double sgn = (l - 1) % 2 == 0 ? 1.0 : -1.0;
    return {{static_cast<double>(l), 0.0, 0.0, 1.0},
            {sgn / fact, static_cast<double>(l - 1), 0.5, 1.0}};
  }
  case KernelId::custom:
    break;
  }
  throw std::invalid_argument("kernel_asymptotics: not available for custom kernels");
}

} // namespace hankel
