#include "hankel/quad.hpp"
#include "hankel/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hankel {
namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

enum class Map { identity, exp };

struct Panel {
  double a, b;
  Map map;
  double value = 0.0;
  double err = 0.0;
  bool at_floor = false; // error estimate is the roundoff floor
};

class Rule {
public:
  Rule()
      : xk_(boost::math::quadrature::gauss_kronrod<double, 31>::abscissa()),
        wk_(boost::math::quadrature::gauss_kronrod<double, 31>::weights()),
        wg_(boost::math::quadrature::gauss<double, 15>::weights()) {}

  // Fills p.value / p.err; returns nodes used.
  int apply(const Integrand &f, Panel &p) const {
    const double c = 0.5 * (p.a + p.b), hl = 0.5 * (p.b - p.a);
    double fv[31];
    auto eval = [&](double t) {
      double v;
      if (p.map == Map::identity) {
        v = f(t);
      } else {
        const double y = std::exp(t);
        v = y == 0.0 ? 0.0 : f(y) * y;
      }
      if (std::isnan(v))
        throw QuadError(QuadError::Kind::nan, "quadrature: integrand returned NaN");
      return v;
    };
    fv[0] = eval(c);
    for (std::size_t i = 1; i < xk_.size(); ++i) {
      fv[2 * i - 1] = eval(c - hl * xk_[i]);
      fv[2 * i] = eval(c + hl * xk_[i]);
    }
    double rk = wk_[0] * fv[0], rg = wg_[0] * fv[0], rabs = std::abs(rk);
    for (std::size_t i = 1; i < xk_.size(); ++i) {
      const double s = fv[2 * i - 1] + fv[2 * i];
      rk += wk_[i] * s;
      rabs += wk_[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
      if (i % 2 == 0)
        rg += wg_[i / 2] * s;
    }
    const double mean = 0.5 * rk;
    double rasc = wk_[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < xk_.size(); ++i)
      rasc += wk_[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
    const double ahl = std::abs(hl);
    rabs *= ahl;
    rasc *= ahl;
    double err = std::abs((rk - rg) * hl);
    if (rasc != 0.0 && err != 0.0)
      err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    const double floor = 50.0 * eps * rabs;
    p.at_floor = err <= floor;
    p.value = rk * hl;
    p.err = std::max(err, floor);
    if (!std::isfinite(p.value))
      throw QuadError(QuadError::Kind::nan, "quadrature: non-finite panel sum");
    return 31;
  }

private:
  const std::array<double, 16> &xk_, &wk_;
  const std::array<double, 8> &wg_;
};

const Rule &rule() {
  static const Rule r;
  return r;
}

double neumaier(const std::vector<double> &v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}

QuadResult adapt(const Integrand &f, std::vector<Panel> panels, const QuadOpts &opts, long nodes) {
  const Rule &r = rule();
  for (Panel &p : panels)
    nodes += r.apply(f, p);
  std::priority_queue<std::pair<double, std::size_t>> heap;
  auto totals = [&](double &val, double &err) {
    std::vector<double> v;
    v.reserve(panels.size());
    err = 0.0;
    for (const Panel &p : panels) {
      v.push_back(p.value);
      err += p.err;
    }
    val = neumaier(v);
  };
  for (std::size_t i = 0; i < panels.size(); ++i)
    if (!panels[i].at_floor)
      heap.push({panels[i].err, i});
  double val, err;
  totals(val, err);
  int splits = 0;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(val)) && !heap.empty()) {
    if (++splits > opts.max_subdivisions)
      throw QuadError(QuadError::Kind::non_convergence,
                      "quadrature: no convergence within max_subdivisions (error estimate " +
                          std::to_string(err) + ")");
    const std::size_t i = heap.top().second;
    heap.pop();
    const double mid = 0.5 * (panels[i].a + panels[i].b);
    if (!(mid > panels[i].a && mid < panels[i].b)) {
      panels[i].at_floor = true;
      continue;
    }
    Panel right{mid, panels[i].b, panels[i].map};
    panels[i].b = mid;
    const double old_v = panels[i].value, old_e = panels[i].err;
    nodes += r.apply(f, panels[i]);
    nodes += r.apply(f, right);
    panels.push_back(right);
    if (!panels[i].at_floor)
      heap.push({panels[i].err, i});
    if (!right.at_floor)
      heap.push({right.err, panels.size() - 1});
    val += panels[i].value + right.value - old_v;
    err += panels[i].err + right.err - old_e;
  }
  totals(val, err);
  return {val, err, nodes};
}

double cap_for(TailDecay t) {
  switch (t) {
  case TailDecay::exponential:
    return 12.0;
  case TailDecay::sqrt_exponential:
    return 16.0;
  case TailDecay::algebraic:
    break;
  }
  return 120.0;
}

// Unit panels in u from 0 toward dir·∞ until the envelope of f(e^u)e^u has
// stayed below the cutoff for three panels.
void scan(const Integrand &f, double dir, double cap, const QuadOpts &opts, double &peak,
          std::vector<Panel> &out, long &nodes) {
  int quiet = 0;
  for (int j = 0; j < static_cast<int>(cap); ++j) {
    const double u0 = dir * j, u1 = dir * (j + 1);
    double env = 0.0;
    for (int s = 0; s <= 4; ++s) {
      const double y = std::exp(u0 + 0.25 * s * (u1 - u0));
      const double g = f(y) * y;
      if (std::isnan(g))
        throw QuadError(QuadError::Kind::nan, "quadrature: integrand returned NaN");
      env = std::max(env, std::abs(g));
    }
    nodes += 5;
    peak = std::max(peak, env);
    out.push_back({std::min(u0, u1), std::max(u0, u1), Map::exp});
    if (peak > 0.0 && env <= 1e-3 * opts.rel_tol * peak) {
      if (++quiet >= 3)
        return;
    } else {
      quiet = 0;
    }
  }
  if (quiet == 0 && peak > 0.0)
    throw QuadError(QuadError::Kind::non_convergence,
                    "quadrature: integrand has not decayed at the truncation cap");
}

} // namespace

void QuadOpts::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0))
    throw std::invalid_argument("QuadOpts: tolerances must be positive");
  if (max_subdivisions < 1)
    throw std::invalid_argument("QuadOpts: max_subdivisions must be >= 1");
}

QuadResult integrate_interval(const Integrand &f, double a, double b, const QuadOpts &opts) {
  opts.validate();
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("integrate_interval: finite limits required");
  if (a == b)
    return {};
  const double sgn = b > a ? 1.0 : -1.0;
  QuadResult r = adapt(f, {{std::min(a, b), std::max(a, b), Map::identity}}, opts, 0);
  r.value *= sgn;
  return r;
}

QuadResult integrate_semi_infinite(const Integrand &f, const QuadOpts &opts) {
  opts.validate();
  std::vector<Panel> panels;
  long nodes = 0;
  double peak = 0.0;
  scan(f, 1.0, cap_for(opts.tail_decay_hint), opts, peak, panels, nodes);
  if (opts.singular_at_zero)
    scan(f, -1.0, 120.0, opts, peak, panels, nodes);
  else
    panels.push_back({0.0, 1.0, Map::identity});
  std::sort(panels.begin(), panels.end(),
            [](const Panel &x, const Panel &y) { return x.map != y.map ? x.map < y.map : x.a < y.a; });
  return adapt(f, std::move(panels), opts, nodes);
}

QuadResult apply_hankel(const KernelSpec &spec, const Integrand &f, double x, const QuadOpts &opts) {
  if (!(x >= 0.0))
    throw std::invalid_argument("apply_hankel: x must be >= 0");
  QuadOpts o = opts;
  o.singular_at_zero = true;
  return integrate_semi_infinite([&](double y) { return spec(x + y) * f(y); }, o);
}

QuadResult inner_product(const Integrand &f, const Integrand &g, const QuadOpts &opts) {
  return integrate_semi_infinite([&](double y) { return f(y) * g(y); }, opts);
}

} // namespace hankel
