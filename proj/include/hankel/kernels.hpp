#pragma once

#include "hankel/specfun.hpp"

#include <functional>
#include <memory>
#include <string>

namespace hankel {

/// Coefficients of L f = -((x²+γx) f')' + (αx²+βx) f.
struct LParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  void validate() const;
};

enum class KernelId {
  mehler,
  carleman,
  whittaker,
  macdonald,
  regular_whittaker,
  regular_macdonald,
  finite_rank,
  custom
};

/// Leading behaviour coeff · x^power · exp(-rate · x^stretch) at one end.
struct EndBehavior {
  double coeff = 1.0;
  double power = 0.0;
  double rate = 0.0;
  double stretch = 1.0;

  double operator()(double x) const;
  std::string describe() const;
};

struct KernelAsymptotics {
  EndBehavior at_zero;
  EndBehavior at_infinity;
};

struct KernelDerivs {
  double a = 0.0;
  double da = 0.0;
  double d2a = 0.0;
};

/// A Hankel kernel a(x) together with the parameters of the differential
/// operator it commutes with.
class KernelSpec {
public:
  using Fn = std::function<double(double)>;

  static KernelSpec mehler();
  static KernelSpec carleman();
  static KernelSpec whittaker(double beta);
  static KernelSpec macdonald();
  static KernelSpec regular_whittaker(double beta);
  static KernelSpec regular_macdonald();
  static KernelSpec finite_rank(int l);
  /// Arbitrary kernel for ODE and commutator tests. Derivatives are numeric.
  static KernelSpec custom(std::string name, Fn a, LParams params,
                           bool singular_at_zero, bool singular_at_infinity);
  /// Catalog lookup by id ("mehler", "whittaker", "finite-rank", ...).
  static KernelSpec from_name(const std::string &id, double beta = 0.0, int l = 1);

  KernelId id() const noexcept { return id_; }
  /// e.g. "mehler", "whittaker(0.5)", "finite_rank(2)".
  const std::string &name() const noexcept { return name_; }
  const LParams &params() const noexcept { return params_; }
  bool singular_at_zero() const noexcept { return sing0_; }
  bool singular_at_infinity() const noexcept { return sing_inf_; }
  double beta() const noexcept { return beta_; }
  int rank() const noexcept { return l_; }
  /// true when derivatives come from closed forms or the special function's
  /// own differential equation rather than finite differences.
  bool analytic_derivatives() const noexcept { return id_ != KernelId::custom; }

  double operator()(double x) const;

private:
  KernelSpec() = default;

  friend KernelDerivs kernel_derivatives(const KernelSpec &, double);

  KernelId id_ = KernelId::custom;
  std::string name_;
  LParams params_;
  bool sing0_ = false;
  bool sing_inf_ = false;
  double beta_ = 0.0;
  int l_ = 0;
  double gamma_factor_ = 1.0; // Γ(1+β) for the whittaker kernel
  std::shared_ptr<const WhittakerW> w_;
  Fn custom_;
};

/// a(x). Throws SpecFunError::domain for x <= 0 on kernels singular at 0
/// (x = 0 is accepted for the regular ones).
double kernel_eval(const KernelSpec &spec, double x);

/// a, a', a''. Elementary kernels are differentiated by hand; the Whittaker
/// and MacDonald kernels take a' from the special function's derivative and
/// a'' from the Whittaker or Bessel equation. Custom kernels fall back to
/// kernel_derivatives_numeric.
KernelDerivs kernel_derivatives(const KernelSpec &spec, double x);

/// Central differences with h = ε^{1/3}·max(x, 1), shrunk near x = 0.
KernelDerivs kernel_derivatives_numeric(const KernelSpec &spec, double x);

/// -(x+γ)a'' - 2a' + (αx+β)a for the given parameters.
double ode_residual(const KernelSpec &spec, const LParams &params, double x);
/// Residual against the kernel's own parameters.
double ode_residual(const KernelSpec &spec, double x);
/// Residual divided by |a|+|a'|+|a''|.
double ode_residual_normalized(const KernelSpec &spec, const LParams &params,
                               double x, bool numeric = false);

KernelAsymptotics kernel_asymptotics(const KernelSpec &spec);

} // namespace hankel
