#include "hankel/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace hankel {
namespace {

constexpr double pi = std::numbers::pi;

QuadOpts tight(QuadOpts q, double rel) {
  q.rel_tol = std::min(q.rel_tol, rel);
  return q;
}

// Composite 8-point Gauss–Legendre in u = ln x on panels of width 1/2,
// returning nodes x_i and weights for dx.
struct LogRule {
  std::vector<double> x, w;
};

// Extends the rule upward from u = -36 until envelope(x)·√x has stayed
// below 1e-10 of its peak for two panels.
LogRule log_rule(const std::function<double(double)> &envelope) {
  using GL = boost::math::quadrature::gauss<double, 8>;
  const auto &xa = GL::abscissa();
  const auto &wa = GL::weights();
  LogRule r;
  const double h = 0.5;
  double peak = 0.0;
  int quiet = 0;
  for (double u0 = -36.0; u0 < 80.0; u0 += h) {
    double env = 0.0;
    const double c = u0 + 0.5 * h;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        if (xa[i] == 0.0 && sgn > 0)
          continue;
        const double u = c + sgn * 0.5 * h * xa[i];
        const double x = std::exp(u);
        r.x.push_back(x);
        r.w.push_back(0.5 * h * wa[i] * x);
        env = std::max(env, std::abs(envelope(x)) * std::sqrt(x));
      }
    }
    peak = std::max(peak, env);
    if (u0 > 0.0 && env < 1e-10 * peak) {
      if (++quiet >= 2)
        break;
    } else {
      quiet = 0;
    }
  }
  return r;
}

} // namespace

double DiscretePair::psi(double x) const {
  if (x < 0.0)
    throw std::invalid_argument("DiscretePair::psi: requires x >= 0");
  if (x == 0.0)
    return p > 0.5 ? 0.0 : (p == 0.5 ? specfun::laguerre(n - 1, 2.0 * p, 0.0) : INFINITY);
  return std::exp(-0.5 * x + (p - 0.5) * std::log(x)) * specfun::laguerre(n - 1, 2.0 * p, x);
}

double DiscretePair::norm2() const {
  return std::exp(std::lgamma(2.0 * p + n) - std::lgamma(static_cast<double>(n))) / (2.0 * p);
}

EigenFamily::EigenFamily(FamilyCase c, KernelSpec k, double beta)
    : kind_(c), kernel_(std::move(k)), beta_(beta) {
  if (c == FamilyCase::whittaker && beta < -0.5)
    discrete_ = discrete_spectrum(beta);
}

EigenFamily EigenFamily::mehler() { return {FamilyCase::mehler, KernelSpec::mehler(), 0.0}; }

EigenFamily EigenFamily::carleman() { return {FamilyCase::carleman, KernelSpec::carleman(), 0.0}; }

EigenFamily EigenFamily::whittaker(double beta) {
  return {FamilyCase::whittaker, KernelSpec::whittaker(beta), beta};
}

EigenFamily EigenFamily::macdonald() {
  return {FamilyCase::macdonald, KernelSpec::macdonald(), 0.0};
}

EigenFamily EigenFamily::from_name(const std::string &id, double beta) {
  if (id == "mehler")
    return mehler();
  if (id == "carleman")
    return carleman();
  if (id == "whittaker")
    return whittaker(beta);
  if (id == "macdonald")
    return macdonald();
  throw std::invalid_argument("no eigenfunction family for case: " + id);
}

double EigenFamily::normalization(double k) const {
  if (!(k > 0.0) && !(k == 0.0 && kind_ == FamilyCase::carleman))
    throw std::invalid_argument("normalization: requires k > 0");
  switch (kind_) {
  case FamilyCase::mehler:
    return std::sqrt(k * std::tanh(pi * k));
  case FamilyCase::carleman:
    return 1.0 / std::sqrt(pi);
  case FamilyCase::whittaker: {
    // π^{-1} √(k sinh 2πk) |Γ(1/2 - ik + β)|, assembled in logs
    const double lg = specfun::log_gamma(Complex(0.5 + beta_, -k)).real();
    const double lsh = 2.0 * pi * k + std::log1p(-std::exp(-4.0 * pi * k)) - std::log(2.0);
    return std::exp(0.5 * (std::log(k) + lsh) + lg) / pi;
  }
  case FamilyCase::macdonald:
    return 2.0 / pi * std::sqrt(k * std::sinh(2.0 * pi * k));
  }
  return 0.0;
}

Complex EigenFamily::m(double k) const {
  if (!(k > 0.0))
    throw std::invalid_argument("m(k): requires k > 0");
  const Complex ik(0.0, k);
  switch (kind_) {
  case FamilyCase::mehler:
    return std::exp(specfun::log_gamma(ik) - specfun::log_gamma(0.5 + ik) + ik * std::log(2.0)) /
           std::sqrt(2.0 * pi);
  case FamilyCase::carleman:
    return 0.5;
  case FamilyCase::whittaker:
    return std::exp(specfun::log_gamma(-2.0 * ik) - specfun::log_gamma(0.5 - ik + beta_));
  case FamilyCase::macdonald:
    return Complex(0.0, pi) * std::exp((ik - 1.0) * std::log(2.0)) /
           (specfun::gamma(1.0 + 2.0 * ik) * std::sinh(2.0 * pi * k));
  }
  return 0.0;
}

std::function<double(double)> EigenFamily::eigenfunction(double k, int branch) const {
  if (!(k > 0.0) && !(k == 0.0 && kind_ == FamilyCase::carleman))
    throw std::invalid_argument("eigenfunction: requires k > 0");
  if (branch < 0 || branch >= branches())
    throw std::invalid_argument("eigenfunction: branch out of range");
  const double nk = normalization(k);
  switch (kind_) {
  case FamilyCase::mehler:
    return [nk, k](double x) { return nk * specfun::legendre_conical(k, x); };
  case FamilyCase::carleman:
    if (branch == 0)
      return [nk, k](double x) { return nk * std::cos(k * std::log(x)) / std::sqrt(x); };
    return [nk, k](double x) { return nk * std::sin(k * std::log(x)) / std::sqrt(x); };
  case FamilyCase::whittaker: {
    auto w = std::make_shared<const WhittakerW>(beta_, Order::imag(k), 1e-40);
    return [nk, w](double x) { return nk * w->value(x) / x; };
  }
  case FamilyCase::macdonald:
    return [nk, k](double x) {
      return nk * specfun::macdonald_k(Order::imag(2.0 * k), std::sqrt(8.0 * x)) / std::sqrt(x);
    };
  }
  return {};
}

std::vector<DiscretePair> discrete_spectrum(double beta) {
  std::vector<DiscretePair> out;
  if (!(beta < -0.5))
    return out;
  const double s = std::sin(pi * beta);
  if (std::abs(beta - std::nearbyint(beta)) < 1e-12 || s == 0.0)
    throw SpecFunError(SpecFunError::Kind::parameter,
                       "discrete_spectrum: sin(pi beta) = 0; use finite_rank_spectrum");
  const double b = std::abs(beta);
  for (int n = 1; n < b + 0.5; ++n) {
    DiscretePair d;
    d.n = n;
    d.p = b + 0.5 - n;
    d.mu = 0.25 - d.p * d.p;
    d.lambda = (n % 2 == 0 ? 1.0 : -1.0) * pi / s;
    out.push_back(d);
  }
  return out;
}

std::vector<DiscretePair> finite_rank_spectrum(int l) {
  if (l < 1)
    throw std::invalid_argument("finite_rank_spectrum: requires l >= 1");
  std::vector<DiscretePair> out;
  for (int n = 1; n <= l; ++n) {
    DiscretePair d;
    d.n = n;
    d.p = l + 0.5 - n;
    d.mu = 0.25 - d.p * d.p;
    d.lambda = (n - l) % 2 == 0 ? 1.0 : -1.0;
    out.push_back(d);
  }
  return out;
}

VerificationReport normalization_identity(const EigenFamily &fam, double k, double tolerance) {
  if (fam.kind() == FamilyCase::carleman)
    throw std::invalid_argument("normalization_identity: not defined for the Carleman pair");
  const double from_m = 1.0 / (std::sqrt(2.0 * pi) * std::abs(fam.m(k)));
  const double closed = fam.normalization(k);
  VerificationReport r;
  r.case_id = fam.name();
  r.check_id = "normalization";
  r.params = {{"k", k}};
  r.max_abs_err = std::abs(from_m - closed);
  r.max_rel_err = r.max_abs_err / std::abs(closed);
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

VerificationReport verify_continuum_identity(const EigenFamily &fam, double k,
                                             const std::vector<double> &x_grid,
                                             const IdentityOpts &opts) {
  const auto psi = fam.eigenfunction(k);
  const double lam = fam.lambda(k);
  QuadOpts q = opts.quad;
  q.singular_at_zero = true;
  double psi_max = 0.0;
  std::vector<double> pv;
  for (double x : x_grid) {
    pv.push_back(psi(x));
    psi_max = std::max(psi_max, std::abs(pv.back()));
  }
  double max_abs = 0.0, max_rel = 0.0;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    const double apsi = apply_hankel(fam.kernel(), psi, x, q).value;
    const double rhs = lam * pv[i];
    const double d = std::abs(apsi - rhs);
    max_abs = std::max(max_abs, d);
    max_rel = std::max(max_rel, d / (std::abs(rhs) + lam * psi_max));
    if (opts.plot)
      opts.plot->push_back({fam.name(), k, x, apsi, rhs});
  }
  VerificationReport r;
  r.case_id = fam.name();
  r.check_id = "continuum_identity";
  r.params = {{"k", k}};
  r.max_abs_err = max_abs;
  r.max_rel_err = max_rel;
  r.tolerance = opts.tolerance;
  r.judge_relative();
  return r;
}

VerificationReport verify_carleman_closed_form(double k, double tolerance) {
  QuadOpts q;
  q.rel_tol = 1e-12;
  q.abs_tol = 0.0;
  q.singular_at_zero = true;
  const QuadResult res = integrate_semi_infinite(
      [k](double t) { return std::cos(k * std::log(t)) / ((1.0 + t) * std::sqrt(t)); }, q);
  const double exact = specfun::spectral_maps(k).lambda;
  VerificationReport r;
  r.case_id = "carleman";
  r.check_id = "mellin_closed_form";
  r.params = {{"k", k}};
  r.max_abs_err = std::abs(res.value - exact);
  r.max_rel_err = r.max_abs_err / exact;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

VerificationReport verify_discrete_eigenvalue(const KernelSpec &kernel, const DiscretePair &pair,
                                              const std::vector<double> &x_grid,
                                              const IdentityOpts &opts) {
  const auto psi = [&pair](double y) { return pair.psi(y); };
  QuadOpts q = tight(opts.quad, 1e-12);
  q.singular_at_zero = true;
  double psi_max = 0.0;
  for (double x : x_grid)
    psi_max = std::max(psi_max, std::abs(pair.psi(x)));
  double max_abs = 0.0, num = 0.0, den = 0.0;
  for (double x : x_grid) {
    const double lhs = apply_hankel(kernel, psi, x, q).value;
    const double pv = pair.psi(x);
    max_abs = std::max(max_abs, std::abs(lhs - pair.lambda * pv));
    num += lhs * pv;
    den += pv * pv;
  }
  VerificationReport r;
  r.case_id = kernel.name();
  r.check_id = "discrete_eigenvalue";
  r.params = {{"n", static_cast<double>(pair.n)}, {"p", pair.p}, {"lambda", pair.lambda},
              {"lambda_fit", num / den}};
  r.max_abs_err = max_abs;
  r.max_rel_err = max_abs / (std::abs(pair.lambda) * psi_max);
  r.tolerance = opts.tolerance;
  r.judge_relative();
  return r;
}

VerificationReport discrete_orthogonality(const std::string &case_id,
                                          const std::vector<DiscretePair> &pairs,
                                          double tolerance) {
  QuadOpts q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-16;
  q.singular_at_zero = true;
  q.tail_decay_hint = TailDecay::exponential;
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto &a = pairs[i], &b = pairs[j];
      const double ip =
          inner_product([&](double x) { return a.psi(x); }, [&](double x) { return b.psi(x); }, q)
              .value;
      worst = std::max(worst, std::abs(ip) / std::sqrt(a.norm2() * b.norm2()));
    }
  VerificationReport r;
  r.case_id = case_id;
  r.check_id = "discrete_orthogonality";
  r.params = {{"pairs", static_cast<double>(pairs.size())}};
  r.max_abs_err = worst;
  r.max_rel_err = worst;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

VerificationReport discrete_continuum_orthogonality(const EigenFamily &fam,
                                                    const std::vector<double> &k_grid,
                                                    double tolerance) {
  QuadOpts q;
  q.rel_tol = 1e-10;
  q.abs_tol = 0.0;
  q.singular_at_zero = true;
  q.tail_decay_hint = TailDecay::exponential;
  double worst = 0.0;
  for (double k : k_grid) {
    const auto psi = fam.eigenfunction(k);
    for (const DiscretePair &d : fam.discrete()) {
      auto prod = [&](double x) { return d.psi(x) * psi(x); };
      const double scale =
          integrate_semi_infinite([&](double x) { return std::abs(prod(x)); }, q).value;
      QuadOpts qa = q;
      qa.abs_tol = 1e-12 * scale;
      const double ip = integrate_semi_infinite(prod, qa).value;
      worst = std::max(worst, std::abs(ip) / scale);
    }
  }
  VerificationReport r;
  r.case_id = fam.name();
  r.check_id = "discrete_continuum_orthogonality";
  r.params = {{"k_points", static_cast<double>(k_grid.size())}};
  r.max_abs_err = worst;
  r.max_rel_err = worst;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

VerificationReport kernel_subspace_check(int l, double k, const std::vector<double> &x_grid,
                                         double tolerance) {
  return kernel_subspace_check(KernelSpec::finite_rank(l), l, k, x_grid, tolerance);
}

VerificationReport kernel_subspace_check(const KernelSpec &kernel, int l, double k,
                                         const std::vector<double> &x_grid, double tolerance) {
  auto w = std::make_shared<const WhittakerW>(-static_cast<double>(l), Order::imag(k), 1e-40);
  auto psi = [w](double y) { return w->value(y) / y; };
  QuadOpts q;
  q.rel_tol = 1e-10;
  q.abs_tol = 0.0;
  q.singular_at_zero = true;
  q.tail_decay_hint = TailDecay::exponential;
  double worst = 0.0, max_abs = 0.0;
  for (double x : x_grid) {
    const double abs_scale =
        integrate_semi_infinite([&](double y) { return std::abs(kernel(x + y) * psi(y)); }, q)
            .value;
    QuadOpts qa = q;
    qa.abs_tol = 1e-13 * abs_scale;
    const double v = apply_hankel(kernel, psi, x, qa).value;
    max_abs = std::max(max_abs, std::abs(v));
    worst = std::max(worst, std::abs(v) / abs_scale);
  }
  VerificationReport r;
  r.case_id = kernel.name();
  r.check_id = "kernel_subspace";
  r.params = {{"l", static_cast<double>(l)}, {"k", k}};
  r.max_abs_err = max_abs;
  r.max_rel_err = worst;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

std::vector<double> forward_transform(const EigenFamily &fam, const Integrand &f,
                                      const std::vector<double> &k_grid, int branch,
                                      const QuadOpts &opts) {
  QuadOpts q = opts;
  q.singular_at_zero = true;
  std::vector<double> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    const auto psi = fam.eigenfunction(k, branch);
    out.push_back(inner_product(psi, f, q).value);
  }
  return out;
}

std::vector<TestFunction> default_test_functions() {
  return {{"x2_exp1", [](double x) { return x * x * std::exp(-x); }},
          {"x3_exp1", [](double x) { return x * x * x * std::exp(-x); }}};
}

VerificationReport verify_diagonalization(const EigenFamily &fam, const TestFunction &tf,
                                          const std::vector<double> &k_grid, double tolerance) {
  QuadOpts q;
  q.rel_tol = 1e-10;
  q.abs_tol = 0.0;
  q.singular_at_zero = true;
  const KernelSpec &a = fam.kernel();
  auto Af = [&](double x) { return apply_hankel(a, tf.f, x, q).value; };
  // Af is sampled once on a fixed rule; the rule is extended until both f and Af are negligible.
  std::vector<double> af_cache;
  const LogRule rule = log_rule([&](double x) {
    const double v = Af(x);
    af_cache.push_back(v);
    return std::abs(v) + std::abs(tf.f(x));
  });
  double worst = 0.0, scale = 0.0;
  for (int b = 0; b < fam.branches(); ++b)
    for (double k : k_grid) {
      const auto psi = fam.eigenfunction(k, b);
      double uaf = 0.0, uf = 0.0;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double pv = psi(rule.x[i]) * rule.w[i];
        uaf += pv * af_cache[i];
        uf += pv * tf.f(rule.x[i]);
      }
      const double lam = fam.lambda(k);
      worst = std::max(worst, std::abs(uaf - lam * uf));
      scale = std::max(scale, std::abs(lam * uf));
    }
  VerificationReport r;
  r.case_id = fam.name();
  r.check_id = "diagonalization:" + tf.name;
  r.params = {{"k_points", static_cast<double>(k_grid.size())}};
  r.max_abs_err = worst;
  r.max_rel_err = scale > 0.0 ? worst / scale : INFINITY;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

double parseval_k_max(double cutoff) { return std::acosh(1.0 / cutoff) / pi; }

VerificationReport verify_parseval(const EigenFamily &fam, const TestFunction &tf, int n_k,
                                   double tolerance) {
  if (n_k < 2)
    throw std::invalid_argument("verify_parseval: need at least two k points");
  QuadOpts q;
  q.rel_tol = 1e-12;
  q.abs_tol = 0.0;
  q.tail_decay_hint = TailDecay::exponential;
  const double norm2 = inner_product(tf.f, tf.f, q).value;
  const LogRule rule = log_rule(tf.f);
  std::vector<double> fv(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    fv[i] = tf.f(rule.x[i]) * rule.w[i];

  const double kmax = parseval_k_max();
  const double h = kmax / (n_k - 1);
  double cont = 0.0;
  for (int j = 0; j < n_k; ++j) {
    // the k = 0 endpoint is taken as a limit; for β = -3/2, -5/2, ... it is nonzero
    const double k = j == 0 && fam.kind() != FamilyCase::carleman ? 1e-7 : j * h;
    double s2 = 0.0;
    for (int b = 0; b < (k == 0.0 ? 1 : fam.branches()); ++b) {
      const auto psi = fam.eigenfunction(k, b);
      double u = 0.0;
      for (std::size_t i = 0; i < rule.x.size(); ++i)
        u += psi(rule.x[i]) * fv[i];
      s2 += u * u;
    }
    cont += (j == 0 || j == n_k - 1 ? 0.5 : 1.0) * h * s2;
  }
  double point = 0.0;
  QuadOpts qd = q;
  qd.singular_at_zero = true;
  for (const DiscretePair &d : fam.discrete()) {
    const double c = inner_product([&](double x) { return d.psi(x); }, tf.f, qd).value;
    point += c * c / d.norm2();
  }
  VerificationReport r;
  r.case_id = fam.name();
  r.check_id = "parseval:" + tf.name;
  r.params = {{"k_max", kmax}, {"n_k", static_cast<double>(n_k)}, {"point_part", point}};
  r.max_abs_err = std::abs(cont + point - norm2);
  r.max_rel_err = r.max_abs_err / norm2;
  r.tolerance = tolerance;
  r.judge_relative();
  return r;
}

} // namespace hankel
