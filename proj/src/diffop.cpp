#include "hankel/diffop.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hankel {
namespace {

double fd_step(double x) { return std::min(2e-3 * std::max(x, 1.0), 0.25 * x); }

double fd1(const std::function<double(double)> &f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double fd2(const std::function<double(double)> &f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

constexpr std::array<double, 9> c1 = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                      4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
constexpr std::array<double, 9> c2 = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                      8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};

} // namespace

SmoothFn numeric_smooth_fn(std::function<double(double)> value) {
  SmoothFn f;
  f.value = value;
  f.d1 = [value](double x) { return fd1(value, x, fd_step(x)); };
  f.d2 = [value](double x) { return fd2(value, x, fd_step(x)); };
  return f;
}

SmoothFn bump(double a, double b) {
  if (!(a < b))
    throw std::invalid_argument("bump: requires a < b");
  SmoothFn f;
  f.value = [a, b](double y) {
    if (y <= a || y >= b)
      return 0.0;
    return std::exp(1.0 / ((y - a) * (y - b)));
  };
  f.d1 = [a, b](double y) {
    if (y <= a || y >= b)
      return 0.0;
    const double P = (y - a) * (y - b), dP = 2 * y - a - b;
    const double v = std::exp(1.0 / P);
    return v == 0.0 ? 0.0 : v * (-dP / (P * P));
  };
  f.d2 = [a, b](double y) {
    if (y <= a || y >= b)
      return 0.0;
    const double P = (y - a) * (y - b), dP = 2 * y - a - b;
    const double v = std::exp(1.0 / P);
    if (v == 0.0)
      return 0.0;
    const double g1 = -dP / (P * P);
    const double g2 = -2.0 / (P * P) + 2.0 * dP * dP / (P * P * P);
    return v * (g2 + g1 * g1);
  };
  return f;
}

void check_derivatives(const SmoothFn &f, const std::vector<double> &xs, double rel_tol) {
  for (double x : xs) {
    const double h = fd_step(x);
    const double n1 = fd1(f.value, x, h), n2 = fd2(f.value, x, h);
    const double a1 = f.d1(x), a2 = f.d2(x);
    const double s1 = std::abs(a1) + std::abs(f(x)) / std::max(x, 1.0);
    const double s2 = std::abs(a2) + std::abs(a1) / std::max(x, 1.0);
    if (std::abs(n1 - a1) > rel_tol * s1 + 1e-300 || std::abs(n2 - a2) > rel_tol * s2 + 1e-300)
      throw std::runtime_error("SmoothFn: derivatives inconsistent with values at x = " +
                               std::to_string(x));
  }
}

double apply_L(const LParams &p, const SmoothFn &f, double x) {
  if (!(x > 0.0))
    throw std::invalid_argument("apply_L: requires x > 0");
  const double v = -(x * x + p.gamma * x) * f.d2(x) - (2.0 * x + p.gamma) * f.d1(x) +
                   (p.alpha * x * x + p.beta * x) * f(x);
  if (!std::isfinite(v))
    throw std::runtime_error("apply_L: non-finite result");
  return v;
}

VerificationReport commutator_residual(const KernelSpec &spec, const LParams &params,
                                       const SmoothFn &f, const std::vector<double> &x_grid,
                                       const CommutatorOpts &opts) {
  const auto t0 = std::chrono::steady_clock::now();
  auto Lf = [&](double y) { return y > 0.0 ? apply_L(params, f, y) : 0.0; };
  auto A = [&](const std::function<double(double)> &g, double x) {
    return apply_hankel(spec, g, x, opts.quad).value;
  };
  double r2 = 0.0, s2 = 0.0, rmax = 0.0;
  for (double x : x_grid) {
    const double h = std::min(opts.fd_step * (1.0 + x), 0.2 * x);
    double af = 0.0, daf = 0.0, d2af = 0.0;
    for (int j = -4; j <= 4; ++j) {
      const double v = A(f.value, x + j * h);
      if (j == 0)
        af = v;
      daf += c1[j + 4] * v;
      d2af += c2[j + 4] * v;
    }
    daf /= h;
    d2af /= h * h;
    const double laf = -(x * x + params.gamma * x) * d2af - (2.0 * x + params.gamma) * daf +
                       (params.alpha * x * x + params.beta * x) * af;
    const double alf = A(Lf, x);
    const double r = laf - alf;
    r2 += r * r;
    s2 += laf * laf;
    rmax = std::max(rmax, std::abs(r));
  }
  VerificationReport rep;
  rep.case_id = spec.name();
  rep.check_id = "commutator";
  rep.params = {{"alpha", params.alpha}, {"beta", params.beta}, {"gamma", params.gamma}};
  rep.max_abs_err = rmax;
  rep.max_rel_err = s2 > 0.0 ? std::sqrt(r2 / s2) : (r2 > 0.0 ? INFINITY : 0.0);
  rep.tolerance = opts.tolerance;
  rep.judge_relative();
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

double liouville_forward(double x) {
  if (!(x >= 0.0))
    throw std::invalid_argument("liouville_forward: requires x >= 0");
  // asinh(√(x/2)) = ln(√x + √(x+2)) - ln √2, without cancellation at small x
  return 2.0 * std::asinh(std::sqrt(0.5 * x));
}

double liouville_inverse(double t) {
  if (!(t >= 0.0))
    throw std::invalid_argument("liouville_inverse: requires t >= 0");
  const double s = std::sinh(0.5 * t);
  return 2.0 * s * s;
}

double liouville_potential_regular_part(const PotentialSpec &p, double t) {
  if (p.kind == PotentialKind::whittaker_gamma0 || p.kind == PotentialKind::macdonald_gamma0)
    throw std::invalid_argument("liouville_potential_regular_part: only for gamma = 2 potentials");
  if (!(t > 0.0))
    throw std::invalid_argument("liouville_potential_regular_part: requires t > 0");
  double free;
  if (t < 1e-2) {
    const double t2 = t * t;
    free = 0.25 * (1.0 / 3.0 - t2 / 15.0 + 2.0 * t2 * t2 / 189.0 - t2 * t2 * t2 / 675.0);
  } else {
    const double sh = std::sinh(t);
    free = 0.25 / (t * t) - 0.25 / (sh * sh);
  }
  if (p.kind == PotentialKind::mehler_free)
    return free;
  const double eta = liouville_inverse(t);
  return free + p.alpha * eta * eta + p.beta * eta;
}

double liouville_potential(const PotentialSpec &p, double t) {
  switch (p.kind) {
  case PotentialKind::whittaker_gamma0: {
    const double e = std::exp(t);
    return 0.25 * e * e + p.beta * e;
  }
  case PotentialKind::macdonald_gamma0:
    return 2.0 * std::exp(t);
  case PotentialKind::mehler_free:
  case PotentialKind::regular: {
    if (!(t > 0.0))
      throw std::invalid_argument("liouville_potential: requires t > 0 when gamma = 2");
    const double sh = std::sinh(t);
    // η² + 2η = sinh² t
    double q = -0.25 / (sh * sh);
    if (p.kind == PotentialKind::regular) {
      const double eta = liouville_inverse(t);
      q += p.alpha * eta * eta + p.beta * eta;
    }
    return q;
  }
  }
  return 0.0;
}

} // namespace hankel
