#include "hankel/specfun.hpp"

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace hankel {
namespace {

using State = std::array<double, 2>;
using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State>;

struct Rhs {
  double beta, nu2;
  double q(double s) const {
    const double e = std::exp(s);
    return 0.25 * e * e + beta * e + nu2;
  }
  void operator()(const State &y, State &dy, double s) const {
    dy[0] = y[1];
    dy[1] = q(s) * y[0];
  }
};

// Step-error norm on (w, w_s/ρ), ρ ≈ local frequency or decay rate.
double error_norm(const Rhs &rhs, double s, const State &y, const State &err, double tol) {
  const double rho = std::sqrt(std::abs(rhs.q(s))) + 1.0;
  const double scale = std::max(std::abs(y[0]), std::abs(y[1]) / rho);
  const double e = std::max(std::abs(err[0]), std::abs(err[1]) / rho);
  return e / (tol * scale + 1e-300);
}

// Adaptive integration from (s0, y0) toward s1 < s0; calls visit(s, y) after every accepted step.
template <class Visit>
void sweep(const Rhs &rhs, double s0, State y, double s1, double tol, int max_steps, Visit visit) {
  Stepper stepper;
  double s = s0;
  double h = -0.02;
  int steps = 0;
  while (s > s1) {
    if (s + h < s1)
      h = s1 - s;
    State yn, err;
    stepper.do_step(rhs, y, s, yn, h, err);
    const double en = error_norm(rhs, s + h, yn, err, tol);
    if (!std::isfinite(en))
      throw SpecFunError(SpecFunError::Kind::accuracy, "WhittakerW: non-finite ODE state");
    if (en <= 1.0) {
      s = (s + h < s1 + 1e-14 * std::abs(s1)) ? s1 : s + h;
      y = yn;
      visit(s, y);
      h *= std::min(4.0, 0.9 * std::pow(std::max(en, 1e-12), -1.0 / 8.0));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -1.0 / 8.0));
    }
    if (++steps > max_steps)
      throw SpecFunError(SpecFunError::Kind::accuracy, "WhittakerW: step limit exceeded");
  }
}

} // namespace

WhittakerW::WhittakerW(double beta, Order nu, double x_min, const SpecFunAccuracy &acc)
    : beta_(beta), nu_(nu), x_min_(x_min) {
  acc.validate();
  if (!std::isfinite(beta) || !std::isfinite(nu.magnitude()))
    throw SpecFunError(SpecFunError::Kind::parameter, "WhittakerW: non-finite parameter");
  if (!(x_min > 0.0))
    throw SpecFunError(SpecFunError::Kind::domain, "WhittakerW: x_min must be positive");

  // Terminating case: 1/2 ± p + β = -m.
  if (!nu.is_imaginary()) {
    const double p = nu.magnitude();
    for (double sign : {1.0, -1.0}) {
      const double m = -(0.5 + sign * p + beta);
      const double mr = std::nearbyint(m);
      if (mr >= 0.0 && std::abs(m - mr) < 1e-12) {
        closed_form_ = true;
        laguerre_degree_ = static_cast<int>(mr);
        laguerre_scale_ = sign * p;
        return;
      }
    }
  }

  // Smallest seed point at which the asymptotic series reaches full precision.
  for (double X : {16.0, 24.0, 36.0, 54.0, 80.0, 120.0, 180.0, 270.0, 400.0, 600.0}) {
    double c = 1.0, best = 1.0;
    bool ok = false;
    for (int n = 0; n < 400; ++n) {
      const double a = 0.5 + beta + n;
      c *= (a * a - nu.squared()) / ((n + 1.0) * X);
      const double t = std::abs(c);
      if (t < 1e-17) {
        ok = true;
        break;
      }
      if (t > best && n > 2)
        break;
      best = std::min(best, t);
    }
    if (ok) {
      x_seed_ = X;
      break;
    }
  }
  if (x_seed_ == 0.0)
    throw SpecFunError(SpecFunError::Kind::accuracy,
                       "WhittakerW: asymptotic series does not converge for these parameters");

  const auto [W, dW] = series(x_seed_);
  const double X = x_seed_;
  State y{W / std::sqrt(X), std::sqrt(X) * dW - 0.5 * W / std::sqrt(X)};
  const Rhs rhs{beta_, nu_.squared()};
  const double s0 = std::log(X);
  const double s1 = std::log(std::min(x_min_, X)) - 1e-9;
  const double tol = std::min(1e-13, acc.target_rel_err * 1e-3);
  s_.push_back(s0);
  w_.push_back(y[0]);
  dw_.push_back(y[1]);
  sweep(rhs, s0, y, s1, tol, 200000, [&](double s, const State &st) {
    s_.push_back(s);
    w_.push_back(st[0]);
    dw_.push_back(st[1]);
  });
}

std::pair<double, double> WhittakerW::series(double x) const {
  const double kappa = -beta_;
  double c = 1.0, S = 1.0, dS = 0.0;
  double prev = 1.0;
  for (int n = 0; n < 400; ++n) {
    const double a = 0.5 + beta_ + n;
    const double cn = c * (a * a - nu_.squared()) / (n + 1.0) * (-1.0 / x);
    if (std::abs(cn) > prev && n > 2)
      break;
    c = cn;
    prev = std::abs(cn);
    S += c;
    dS += -(n + 1.0) * c / x;
    if (std::abs(c) < 1e-18 * std::abs(S))
      break;
  }
  const double pref = std::exp(-0.5 * x + kappa * std::log(x));
  return {pref * S, pref * ((-0.5 + kappa / x) * S + dS)};
}

std::pair<double, double> WhittakerW::laguerre_form(double x) const {
  const int m = laguerre_degree_;
  const double q = laguerre_scale_;
  double fact = 1.0;
  for (int j = 2; j <= m; ++j)
    fact *= j;
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  const double L = specfun::laguerre(m, 2.0 * q, x);
  const double dL = m > 0 ? -specfun::laguerre(m - 1, 2.0 * q + 1.0, x) : 0.0;
  const double pref = sgn * fact * std::exp(-0.5 * x + (q + 0.5) * std::log(x));
  return {pref * L, pref * ((-0.5 + (q + 0.5) / x) * L + dL)};
}

std::pair<double, double> WhittakerW::value_and_derivative(double x) const {
  if (!(x > 0.0) || !std::isfinite(x))
    throw SpecFunError(SpecFunError::Kind::domain, "WhittakerW: requires finite x > 0");
  if (closed_form_)
    return laguerre_form(x);
  if (x >= x_seed_)
    return series(x);

  const double s = std::log(x);
  const Rhs rhs{beta_, nu_.squared()};
  State y;
  // first checkpoint with s_j <= s, then step back from its predecessor
  auto it = std::upper_bound(s_.begin(), s_.end(), s, std::greater<double>());
  if (it == s_.end()) {
    // below the stored range: continue the sweep without storing
    State y0{w_.back(), dw_.back()};
    y = y0;
    sweep(rhs, s_.back(), y0, s, 1e-13, 200000, [&](double, const State &st) { y = st; });
  } else {
    const std::size_t j = static_cast<std::size_t>(it - s_.begin()) - 1;
    const State yj{w_[j], dw_[j]};
    if (s == s_[j]) {
      y = yj;
    } else {
      Stepper stepper;
      State err;
      stepper.do_step(rhs, yj, s_[j], y, s - s_[j], err);
    }
  }
  const double rx = std::sqrt(x);
  const double W = rx * y[0];
  const double dW = (0.5 * y[0] + y[1]) / rx;
  if (!std::isfinite(W) || !std::isfinite(dW))
    throw SpecFunError(SpecFunError::Kind::accuracy, "WhittakerW: non-finite value");
  return {W, dW};
}

double WhittakerW::value(double x) const { return value_and_derivative(x).first; }

double WhittakerW::derivative(double x) const { return value_and_derivative(x).second; }

} // namespace hankel
