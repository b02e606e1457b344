#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace hankel {

class KernelSpec;

class QuadError : public std::runtime_error {
public:
  enum class Kind { non_convergence, nan };
  QuadError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

enum class TailDecay { exponential, sqrt_exponential, algebraic };

struct QuadOpts {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  /// Integrand may blow up (integrably) at 0: (0,1] is mapped by y = e^u.
  bool singular_at_zero = false;
  TailDecay tail_decay_hint = TailDecay::algebraic;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  long nodes_used = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15/31-point Gauss–Kronrod on [a, b].
QuadResult integrate_interval(const Integrand &f, double a, double b, const QuadOpts &opts = {});

/// ∫₀^∞ f(y) dy.
///
/// [1, ∞) is mapped by y = e^u and cut into unit panels in u; the panel scan
/// stops once the integrand envelope has stayed below 1e-3·rel_tol of its
/// peak (or 1e-3·abs_tol) for three panels. In u an x^{-1/2±ik} tail becomes
/// e^{-u/2} times an oscillation of fixed frequency. [0, 1] is integrated
/// directly, or in u on (-∞, 0] when singular_at_zero is set.
QuadResult integrate_semi_infinite(const Integrand &f, const QuadOpts &opts = {});

/// (Af)(x) = ∫₀^∞ a(x+y) f(y) dy. The log map is always used near y = 0, so
/// the x^{-1} kernels at small x need no special treatment.
QuadResult apply_hankel(const KernelSpec &spec, const Integrand &f, double x,
                        const QuadOpts &opts = {});

/// ∫₀^∞ f(x) g(x) dx.
QuadResult inner_product(const Integrand &f, const Integrand &g, const QuadOpts &opts = {});

} // namespace hankel
