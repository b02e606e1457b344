#pragma once

#include "hankel/kernels.hpp"
#include "hankel/quad.hpp"
#include "hankel/report.hpp"

#include <functional>
#include <vector>

namespace hankel {

/// f with its first two derivatives on (0, ∞).
struct SmoothFn {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;

  double operator()(double x) const { return value(x); }
};

/// Derivatives by 4th-order central differences of value.
SmoothFn numeric_smooth_fn(std::function<double(double)> value);

/// exp(1/((y-a)(y-b))) on (a, b), zero elsewhere, with exact derivatives.
SmoothFn bump(double a, double b);

/// Compares d1/d2 against central differences at the sample points and
/// throws std::runtime_error if they disagree by more than rel_tol.
void check_derivatives(const SmoothFn &f, const std::vector<double> &xs, double rel_tol = 1e-5);

/// -((x²+γx) f')' + (αx²+βx) f.
double apply_L(const LParams &p, const SmoothFn &f, double x);

struct CommutatorOpts {
  QuadOpts quad;
  /// relative step of the 8th-order stencil used for L(Af)
  double fd_step = 0.04;
  double tolerance = 1e-6;
};

/// r(x) = L(Af)(x) - A(Lf)(x) on x_grid. max_rel_err is the relative L²
/// residual ‖r‖/‖L(Af)‖ over the grid; max_abs_err is max |r|.
VerificationReport commutator_residual(const KernelSpec &spec, const LParams &params,
                                       const SmoothFn &f, const std::vector<double> &x_grid,
                                       const CommutatorOpts &opts = {});

/// ω(x) = 2 ln(√x + √(x+2)) - ln 2, the Liouville variable for γ = 2.
double liouville_forward(double x);
/// η = ω⁻¹, which is cosh t - 1.
double liouville_inverse(double t);

enum class PotentialKind { mehler_free, whittaker_gamma0, macdonald_gamma0, regular };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::mehler_free;
  double alpha = 0.0;
  double beta = 0.0;
};

/// q̃(t) of the transformed operator -d²/dt² + q̃ + 1/4.
///   mehler_free       -1/(4(η²+2η))
///   whittaker_gamma0  e^{2t}/4 + β e^t
///   macdonald_gamma0  2 e^t
///   regular           -1/(4(η²+2η)) + αη² + βη
double liouville_potential(const PotentialSpec &p, double t);

/// q̃(t) + 1/(4t²) for the γ = 2 potentials, which stays bounded as t → 0.
double liouville_potential_regular_part(const PotentialSpec &p, double t);

} // namespace hankel
