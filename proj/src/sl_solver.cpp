#include "hankel/sl_solver.hpp"

#include "hankel/diffop.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>
#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hankel {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double sinh_of_eta(double x) { return std::sqrt(x * x + 2.0 * x); }

void fix_sign(std::vector<double> &v) {
  const auto it = std::max_element(v.begin(), v.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (it != v.end() && *it < 0.0)
    for (double &x : v)
      x = -x;
}

// Fraction of h Σ f̃² carried by the outer 10 grid points at one end.
double edge_mass(const std::vector<double> &f, bool left) {
  const std::size_t n = f.size(), m = std::min<std::size_t>(10, n);
  double tot = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tot += f[i] * f[i];
    if ((left && i < m) || (!left && i >= n - m))
      edge += f[i] * f[i];
  }
  return edge / tot;
}

struct TailValue {
  double psi, dpsi;
};

// Asymptotic series for the solution with unit tail coefficient; nullopt-like
// failure is reported through ok = false when the smallest term is not below 1e-13.
bool tail_series(const CompactSpec &c, double mu, double x, TailValue &out) {
  constexpr int max_terms = 200;
  if (c.kind == CompactCase::regular_whittaker) {
    const double b = c.beta + 0.5, s = -0.5 - b;
    const double c0 = 0.25 - mu - b * b - 2.0 * b, c1 = -2.0 * (b + 0.5) * (b + 0.5);
    double dm1 = 0.0, dm = 1.0;
    double v = 1.0, dv = 0.0, xm = 1.0, last = INFINITY;
    bool ok = false;
    for (int m = 0; m < max_terms; ++m) {
      const double dn = ((c0 - m * (m + 1.0) - (2.0 * b + 1.0) * m) * dm +
                         (c1 - 2.0 * m * (m - 1.0) - 4.0 * b * (m - 1.0)) * dm1) /
                        (m + 1.0);
      xm /= x;
      const double term = dn * xm;
      if (std::abs(term) > last)
        break;
      last = std::abs(term);
      v += term;
      dv -= (m + 1.0) * term / x;
      dm1 = dm;
      dm = dn;
      if (std::abs(term) < 1e-17 * std::abs(v)) {
        ok = true;
        break;
      }
    }
    ok = ok || last < 1e-13 * std::abs(v);
    const double pre = std::exp(-0.5 * x + s * std::log(x));
    out.psi = pre * v;
    out.dpsi = pre * (dv + (-0.5 + s / x) * v);
    return ok;
  }
  const double z = std::sqrt(x), r2 = std::sqrt(2.0);
  std::array<double, 3> e = {1.0, 0.0, 0.0}; // e_m, e_{m-1}, e_{m-2}
  double w = 1.0, dw = 0.0, zm = 1.0, last = INFINITY;
  bool ok = false;
  for (int m = 0; m < max_terms; ++m) {
    const double en = ((-m * (m + 1.0) / 4.0 - mu - 61.0 / 16.0) * e[0] - 2.0 * r2 * m * e[1] +
                       (-(m - 1.0) * (m - 2.0) / 2.0 - (m - 2.0) - 9.0 / 8.0) * e[2]) /
                      (r2 * (m + 1.0));
    zm /= z;
    const double term = en * zm;
    if (std::abs(term) > last && m > 2)
      break;
    last = std::abs(term);
    w += term;
    dw -= (m + 1.0) * term / z;
    e = {en, e[0], e[1]};
    if (std::abs(term) < 1e-17 * std::abs(w)) {
      ok = true;
      break;
    }
  }
  ok = ok || last < 1e-13 * std::abs(w);
  const double pre = std::exp(-2.0 * r2 * z - 1.5 * std::log(z));
  out.psi = pre * w;
  out.dpsi = pre * (dw + (-1.5 / z - 2.0 * r2) * w) / (2.0 * z);
  return ok;
}

double kernel_tail_coeff(const CompactSpec &c) {
  return kernel_asymptotics(c.kernel()).at_infinity.coeff;
}

double weighted_integral(const CompactSpec &c, const SLEigenpair &p) {
  // ∫ w(y) ψ(y) dy = ∫ w(η) f̃ sinh(t)^{1/2} dt, midpoint rule on the cell grid
  double s = 0.0;
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    const double y = liouville_inverse(p.t[i]);
    const double wy = c.kind == CompactCase::regular_whittaker ? std::exp(-0.5 * y) : 1.0;
    s += wy * p.tilde_psi[i] * std::sqrt(std::sinh(p.t[i]));
  }
  return s * p.h;
}

// Grid indices beyond the last turning point where f̃ is still resolved.
std::vector<std::size_t> tail_window(const CompactSpec &c, const SLEigenpair &p, double floor) {
  const PotentialSpec ps{PotentialKind::regular, c.params().alpha, c.params().beta};
  const double fmax =
      std::abs(*std::max_element(p.tilde_psi.begin(), p.tilde_psi.end(),
                                 [](double a, double b) { return std::abs(a) < std::abs(b); }));
  std::size_t turn = 0;
  for (std::size_t i = 0; i < p.t.size(); ++i)
    if (liouville_potential(ps, p.t[i]) + 0.25 <= p.mu)
      turn = i;
  std::vector<std::size_t> idx;
  for (std::size_t i = turn + 1; i < p.t.size(); ++i) {
    if (std::abs(p.tilde_psi[i]) < floor * fmax)
      break;
    idx.push_back(i);
  }
  return idx;
}

// Right truncation point: q̃ ≥ μ + 40 and WKB action ∫√(V - μ) ≥ 20 past the turning point.
double confining_edge(const std::function<double(double)> &V, double mu, double t0) {
  const double dt = 0.01;
  double t = t0, action = 0.0;
  while (V(t) - 0.25 < mu + 40.0 || action < 20.0) {
    const double g = V(t + 0.5 * dt) - mu;
    if (g > 0.0)
      action += std::sqrt(g) * dt;
    t += dt;
  }
  return t;
}

} // namespace

void SLProblem::validate() const {
  if (!potential)
    throw SLError(SLError::Kind::parameter, "SLProblem: potential not set");
  if (!(t_min < t_max))
    throw SLError(SLError::Kind::parameter, "SLProblem: requires t_min < t_max");
  if (n_points < 200)
    throw SLError(SLError::Kind::parameter, "SLProblem: requires n_points >= 200");
  if (left_bc == LeftBC::regular_sqrt && t_min != 0.0)
    throw SLError(SLError::Kind::parameter, "SLProblem: regular_sqrt requires t_min = 0");
}

double SLEigenpair::tilde_at(double tq) const {
  if (t.empty())
    return 0.0;
  if (tq <= t.front()) {
    if (map == LiouvilleMap::asinh && tq >= 0.0)
      return tilde_psi.front() * std::sqrt(tq / t.front());
    return tq < t.front() - h ? 0.0 : tilde_psi.front() * (tq - t.front() + h) / h;
  }
  if (tq >= t.back())
    return tq > t.back() + h ? 0.0 : tilde_psi.back() * (t.back() + h - tq) / h;
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((tq - t.front()) / h), t.size() - 2);
  const double u = (tq - t[i]) / h;
  return (1.0 - u) * tilde_psi[i] + u * tilde_psi[i + 1];
}

double SLEigenpair::psi(double x) const {
  if (!(x > 0.0))
    throw std::invalid_argument("SLEigenpair::psi: requires x > 0");
  if (map == LiouvilleMap::log)
    return tilde_at(std::log(x)) / std::sqrt(x);
  return tilde_at(liouville_forward(x)) / std::sqrt(sinh_of_eta(x));
}

std::vector<SLEigenpair> solve(const SLProblem &pb, int n_eigs) {
  pb.validate();
  const double h = pb.step();
  std::vector<double> t, d, e;
  if (pb.left_bc == LeftBC::decaying) {
    for (int i = 1; i < pb.n_points; ++i)
      t.push_back(pb.t_min + i * h);
    for (double ti : t) {
      d.push_back(2.0 / (h * h) + pb.potential(ti) + pb.shift);
      e.push_back(-1.0 / (h * h));
    }
  } else {
    // cell-centred radial scheme for -(1/t)(t g')' with f̃ = t^{1/2} g
    for (int i = 0; i < pb.n_points; ++i)
      t.push_back((i + 0.5) * h);
    for (int i = 0; i < pb.n_points; ++i) {
      const double tl = i * h, tr = (i + 1) * h;
      d.push_back((tl + tr) / (h * h * t[i]) + pb.potential(t[i]) + pb.shift);
      e.push_back(i + 1 < pb.n_points ? -tr / (h * h * std::sqrt(t[i] * t[i + 1])) : 0.0);
    }
  }
  const lapack_int n = static_cast<lapack_int>(t.size());
  if (n_eigs < 1 || n_eigs > n)
    throw SLError(SLError::Kind::parameter, "solve: n_eigs out of range");
  lapack_int found = 0;
  std::vector<double> w(n), z(static_cast<std::size_t>(n) * n_eigs);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n_eigs));
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0,
                                         0.0, 1, n_eigs, 0.0, &found, w.data(), z.data(), n,
                                         isuppz.data());
  if (info != 0 || found != n_eigs)
    throw SLError(SLError::Kind::solver, "solve: tridiagonal eigensolver failed, info = " +
                                             std::to_string(info));
  std::vector<SLEigenpair> out;
  const double scale = 1.0 / std::sqrt(h);
  for (int j = 0; j < n_eigs; ++j) {
    SLEigenpair p;
    p.mu = w[j];
    p.map = pb.map;
    p.h = h;
    p.t = t;
    p.tilde_psi.assign(z.begin() + static_cast<std::ptrdiff_t>(j) * n,
                       z.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
    for (double &v : p.tilde_psi)
      v *= scale;
    fix_sign(p.tilde_psi);
    const double m_right = edge_mass(p.tilde_psi, false);
    const double m_left = pb.left_bc == LeftBC::decaying ? edge_mass(p.tilde_psi, true) : 0.0;
    if (std::max(m_left, m_right) > 1e-8)
      throw SLError(SLError::Kind::domain_too_small,
                    "solve: eigenfunction " + std::to_string(j + 1) +
                        " has boundary mass " + num(m_left) + "/" + num(m_right) + " on [" + num(pb.t_min) + ", " + num(pb.t_max) + "] n=" + std::to_string(pb.n_points));
    out.push_back(std::move(p));
  }
  return out;
}

SLProblem line_problem(const LParams &p, double mu_target, int n_points) {
  if (!(p.alpha > 0.0) || p.gamma != 0.0)
    throw SLError(SLError::Kind::parameter, "line_problem: requires alpha > 0 and gamma = 0");
  if (!(mu_target < 0.25))
    throw SLError(SLError::Kind::parameter, "line_problem: only eigenvalues below 1/4");
  SLProblem pb;
  const double a = p.alpha, b = p.beta;
  pb.potential = [a, b](double t) {
    const double e = std::exp(t);
    return a * e * e + b * e;
  };
  pb.t_min = -20.0 / std::sqrt(0.25 - mu_target);
  pb.t_max = confining_edge([&](double t) { return pb.potential(t) + 0.25; }, mu_target, 0.0);
  pb.left_bc = LeftBC::decaying;
  pb.map = LiouvilleMap::log;
  pb.n_points = n_points;
  return pb;
}

SLProblem regular_problem(const LParams &p, double mu_target, int n_points) {
  if (p.gamma != 2.0)
    throw SLError(SLError::Kind::parameter, "regular_problem: requires gamma = 2");
  if (!(p.alpha > 0.0 || (p.alpha == 0.0 && p.beta > 0.0)))
    throw SLError(SLError::Kind::parameter, "regular_problem: potential is not confining");
  const PotentialSpec ps{PotentialKind::regular, p.alpha, p.beta};
  SLProblem pb;
  pb.potential = [ps](double t) { return liouville_potential_regular_part(ps, t); };
  pb.t_min = 0.0;
  pb.t_max =
      confining_edge([&](double t) { return liouville_potential(ps, t) + 0.25; }, mu_target, 0.5);
  pb.left_bc = LeftBC::regular_sqrt;
  pb.map = LiouvilleMap::asinh;
  pb.n_points = n_points;
  return pb;
}

RichardsonResult richardson(const SLProblem &problem, int n_eigs) {
  RichardsonResult r;
  SLProblem p = problem;
  auto mus = [&](int n) {
    p.n_points = n;
    std::vector<double> v;
    for (const SLEigenpair &e : solve(p, n_eigs))
      v.push_back(e.mu);
    return v;
  };
  r.mu_n = mus(problem.n_points);
  r.mu_2n = mus(2 * problem.n_points);
  r.mu_4n = mus(4 * problem.n_points);
  for (int j = 0; j < n_eigs; ++j) {
    const double d1 = r.mu_n[j] - r.mu_2n[j], d2 = r.mu_2n[j] - r.mu_4n[j];
    r.order.push_back(std::log2(std::abs(d1 / d2)));
    r.extrapolated.push_back((4.0 * r.mu_4n[j] - r.mu_2n[j]) / 3.0);
  }
  return r;
}

double truncation_sensitivity(const SLProblem &problem, int n_eigs) {
  SLProblem wide = problem;
  wide.t_max = 2.0 * problem.t_max;
  if (problem.left_bc == LeftBC::decaying)
    wide.t_min = 2.0 * problem.t_min;
  // both choices double the span, so 2n keeps the step
  wide.n_points = 2 * problem.n_points;
  const auto a = solve(problem, n_eigs), b = solve(wide, n_eigs);
  double worst = 0.0;
  for (int j = 0; j < n_eigs; ++j)
    worst = std::max(worst, std::abs(a[j].mu - b[j].mu));
  return worst;
}

double orthonormality_defect(const std::vector<SLEigenpair> &pairs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i; j < pairs.size(); ++j) {
      const double ip = pairs[i].h * std::inner_product(pairs[i].tilde_psi.begin(),
                                                        pairs[i].tilde_psi.end(),
                                                        pairs[j].tilde_psi.begin(), 0.0);
      worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double left_bc_residual(const SLEigenpair &pair) {
  if (pair.t.size() < 10)
    throw SLError(SLError::Kind::parameter, "left_bc_residual: grid too small");
  // least squares for g = a + b t² over the first 10 cells
  double s0 = 0, s1 = 0, s2 = 0, r0 = 0, r1 = 0;
  std::array<double, 10> g{}, u{};
  for (int i = 0; i < 10; ++i) {
    g[i] = pair.tilde_psi[i] / std::sqrt(pair.t[i]);
    u[i] = pair.t[i] * pair.t[i];
    s0 += 1;
    s1 += u[i];
    s2 += u[i] * u[i];
    r0 += g[i];
    r1 += u[i] * g[i];
  }
  const double det = s0 * s2 - s1 * s1;
  const double a = (r0 * s2 - r1 * s1) / det, b = (s0 * r1 - s1 * r0) / det;
  double res = 0.0;
  for (int i = 0; i < 10; ++i)
    res += (g[i] - a - b * u[i]) * (g[i] - a - b * u[i]);
  return std::sqrt(res / 10.0) / std::abs(a);
}

KernelSpec CompactSpec::kernel() const {
  return kind == CompactCase::regular_whittaker ? KernelSpec::regular_whittaker(beta)
                                                : KernelSpec::regular_macdonald();
}

LParams CompactSpec::params() const { return kernel().params(); }

std::string CompactSpec::name() const { return kernel().name(); }

EndBehavior semiclassical_tail(const CompactSpec &c, double) {
  if (c.kind == CompactCase::regular_whittaker)
    return {1.0, -1.0 - c.beta, 0.5, 1.0};
  return {1.0, -0.75, std::sqrt(8.0), 0.5};
}

SLProblem compact_problem(const CompactSpec &c, int n_eigs, int n_points) {
  double target = 20.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      SLProblem pb = regular_problem(c.params(), target, n_points);
      const double top = solve(pb, n_eigs).back().mu;
      if (top <= target)
        return pb;
      target = 1.5 * top + 10.0;
    } catch (const SLError &e) {
      if (e.kind() != SLError::Kind::domain_too_small)
        throw;
      target = 2.0 * target + 10.0;
    }
  }
  throw SLError(SLError::Kind::domain_too_small, "compact_problem: truncation did not settle");
}

std::vector<SLEigenpair> solve_compact(const CompactSpec &c, int n_eigs, int n_points) {
  return solve(compact_problem(c, n_eigs, n_points), n_eigs);
}

double tail_coefficient(const CompactSpec &c, const SLEigenpair &pair) {
  using namespace boost::numeric::odeint;
  using State = std::array<double, 2>;
  const auto idx = tail_window(c, pair, 1e-6);
  if (idx.size() < 10)
    throw SLError(SLError::Kind::tail_normalization, "tail_coefficient: tail window too short");
  const double t_hi = pair.t[idx.back()];
  const PotentialSpec ps{PotentialKind::regular, c.params().alpha, c.params().beta};
  const double mu = pair.mu;

  TailValue tv{};
  double X = 0.0;
  for (double cand : {30.0, 45.0, 68.0, 100.0, 150.0, 225.0, 340.0, 500.0}) {
    if (liouville_forward(cand) > t_hi + 0.5 && tail_series(c, mu, cand, tv)) {
      X = cand;
      break;
    }
  }
  if (X == 0.0)
    throw SLError(SLError::Kind::tail_normalization, "tail_coefficient: series did not converge");

  const double sh = sinh_of_eta(X), T = liouville_forward(X);
  State y = {std::sqrt(sh) * tv.psi, 0.5 * (X + 1.0) / std::sqrt(sh) * tv.psi +
                                         sh * std::sqrt(sh) * tv.dpsi};
  auto sys = [&](const State &s, State &ds, double t) {
    ds[0] = s[1];
    ds[1] = (liouville_potential(ps, t) + 0.25 - mu) * s[0];
  };
  std::vector<double> times = {T};
  for (auto it = idx.rbegin(); it != idx.rend(); ++it)
    times.push_back(pair.t[*it]);
  std::vector<double> f_tail;
  auto stepper = make_controlled<runge_kutta_fehlberg78<State>>(0.0, 1e-12);
  integrate_times(stepper, sys, y, times.begin(), times.end(), -1e-3,
                  [&](const State &s, double) { f_tail.push_back(s[0]); });
  f_tail.erase(f_tail.begin());
  std::reverse(f_tail.begin(), f_tail.end());

  // fit separately on the two halves of the window and require agreement
  auto fit = [&](std::size_t lo, std::size_t hi) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      num += pair.tilde_psi[idx[j]] * f_tail[j];
      den += f_tail[j] * f_tail[j];
    }
    return num / den;
  };
  const std::size_t mid = idx.size() / 2;
  const double c_all = fit(0, idx.size()), c_lo = fit(0, mid), c_hi = fit(mid, idx.size());
  if (!std::isfinite(c_all) || std::abs(c_lo - c_hi) > 1e-3 * std::abs(c_all))
    throw SLError(SLError::Kind::tail_normalization,
                  "tail_coefficient: fit does not stabilize (" + std::to_string(c_lo) + " vs " +
                      std::to_string(c_hi) + ")");
  return c_all;
}

double compact_case_lambda(const CompactSpec &c, const SLEigenpair &pair) {
  return kernel_tail_coeff(c) * weighted_integral(c, pair) / tail_coefficient(c, pair);
}

double compact_case_lambda_literal(const CompactSpec &c, const SLEigenpair &pair) {
  const double pref =
      c.kind == CompactCase::regular_whittaker ? 1.0 : std::sqrt(2.0 * std::numbers::pi);
  return pref * weighted_integral(c, pair) / tail_coefficient(c, pair);
}

double tail_slope(const CompactSpec &c, const SLEigenpair &pair) {
  const auto idx = tail_window(c, pair, 1e-8);
  if (idx.size() < 10)
    throw SLError(SLError::Kind::tail_normalization, "tail_slope: tail window too short");
  const PotentialSpec ps{PotentialKind::regular, c.params().alpha, c.params().beta};
  auto gap = [&](double t) { return liouville_potential(ps, t) + 0.25 - pair.mu; };
  // WKB solution (V - μ)^{-1/4} exp(-∫√(V - μ)) along the window, skipping the first unit
  // of action where it is not yet accurate
  double action = 0.0, su = 0, sy = 0, suu = 0, suy = 0;
  int n = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const double t = pair.t[idx[j]];
    if (j > 0)
      action += std::sqrt(std::max(gap(t - 0.5 * pair.h), 0.0)) * pair.h;
    if (action < 1.0)
      continue;
    const double u = -0.25 * std::log(gap(t)) - action;
    const double y = std::log(std::abs(pair.tilde_psi[idx[j]]));
    su += u;
    sy += y;
    suu += u * u;
    suy += u * y;
    ++n;
  }
  if (n < 10)
    throw SLError(SLError::Kind::tail_normalization, "tail_slope: tail window too short");
  return (n * suy - su * sy) / (n * suu - su * su);
}

CompactQuadrature compact_quadrature(const CompactSpec &c, const std::vector<SLEigenpair> &pairs,
                                     const std::vector<SLEigenpair> *refined) {
  if (refined && refined->size() != pairs.size())
    throw SLError(SLError::Kind::parameter, "compact_quadrature: refined set size mismatch");
  using GL = boost::math::quadrature::gauss<double, 8>;
  if (pairs.empty())
    return {};
  const auto &xa = GL::abscissa();
  const auto &wa = GL::weights();
  const double t_end = pairs.front().t.back() + 0.5 * pairs.front().h;
  const int panels = static_cast<int>(std::ceil(t_end / 0.1));
  const double pw = t_end / panels;
  CompactQuadrature q;
  std::vector<double> ts;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * pw;
    for (std::size_t i = 0; i < xa.size(); ++i)
      for (double sgn : {-1.0, 1.0}) {
        if (xa[i] == 0.0 && sgn > 0)
          continue;
        const double t = mid + sgn * 0.5 * pw * xa[i];
        ts.push_back(t);
        q.x.push_back(liouville_inverse(t));
        q.w.push_back(0.5 * pw * wa[i] * std::sinh(t));
      }
  }
  // ψ = f̃ / sinh(t)^{1/2} is smooth and even in t, so it is interpolated directly
  auto sample = [&](const SLEigenpair &pr) {
    std::vector<double> g(pr.t.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = pr.tilde_psi[i] / std::sqrt(std::sinh(pr.t[i]));
    std::vector<double> v;
    for (double t : ts) {
      // 4-point Lagrange on the cell grid, mirrored through t = 0
      const double s = (t - pr.t[0]) / pr.h;
      const long i0 = static_cast<long>(std::floor(s)) - 1;
      auto at = [&](long i) {
        if (i < 0)
          return g[static_cast<std::size_t>(-i - 1)];
        return i < static_cast<long>(g.size()) ? g[static_cast<std::size_t>(i)] : 0.0;
      };
      const double u = s - static_cast<double>(i0);
      const double l0 = -(u - 1) * (u - 2) * (u - 3) / 6.0, l1 = u * (u - 2) * (u - 3) / 2.0,
                   l2 = -u * (u - 1) * (u - 3) / 2.0, l3 = u * (u - 1) * (u - 2) / 6.0;
      v.push_back(l0 * at(i0) + l1 * at(i0 + 1) + l2 * at(i0 + 2) + l3 * at(i0 + 3));
    }
    return v;
  };
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<double> v = sample(pairs[p]);
    if (refined) {
      const std::vector<double> r = sample((*refined)[p]);
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (4.0 * r[i] - v[i]) / 3.0;
    }
    q.psi.push_back(std::move(v));
  }
  const KernelSpec a = c.kernel();
  const std::size_t n = q.x.size();
  std::vector<double> K(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      K[i * n + j] = K[j * n + i] = a(q.x[i] + q.x[j]);
  for (const auto &psi : q.psi) {
    std::vector<double> ap(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ap[i] += K[i * n + j] * q.w[j] * psi[j];
    q.a_psi.push_back(std::move(ap));
  }
  return q;
}

double rayleigh_quotient(const CompactQuadrature &q, std::size_t i) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < q.x.size(); ++j) {
    num += q.w[j] * q.psi[i][j] * q.a_psi[i][j];
    den += q.w[j] * q.psi[i][j] * q.psi[i][j];
  }
  return num / den;
}

double eigen_residual(const CompactQuadrature &q, std::size_t i, double lambda) {
  double r = 0.0, s = 0.0;
  for (std::size_t j = 0; j < q.x.size(); ++j) {
    const double d = q.a_psi[i][j] - lambda * q.psi[i][j];
    r += q.w[j] * d * d;
    s += q.w[j] * q.psi[i][j] * q.psi[i][j];
  }
  return std::sqrt(r / s) / std::abs(lambda);
}

} // namespace hankel
