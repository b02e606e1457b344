#include "hankel/suites.hpp"

#include "hankel/diffop.hpp"
#include "hankel/kernels.hpp"
#include "hankel/nystrom.hpp"
#include "hankel/sl_solver.hpp"
#include "hankel/spectral.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace hankel {
namespace {

using json = nlohmann::json;
using Params = std::vector<std::pair<std::string, double>>;

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

class Runner {
public:
  Runner(const Config &cfg, std::vector<PlotRow> *plot) : cfg_(cfg), plot_(plot) {}

  bool wanted(const std::string &case_id) const {
    return cfg_.case_filter.empty() || case_id.rfind(cfg_.case_filter, 0) == 0;
  }

  // Runs fn; an exception becomes a failed report under the given labels.
  void check(const std::string &case_id, const std::string &check_id, Params params,
             double tolerance, const std::function<VerificationReport()> &fn) {
    if (!wanted(case_id))
      return;
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    try {
      r = fn();
    } catch (const std::exception &e) {
      r = VerificationReport{};
      r.case_id = case_id;
      r.check_id = check_id;
      r.params = params;
      r.max_abs_err = nan;
      r.max_rel_err = nan;
      r.tolerance = tolerance;
      r.pass = false;
      r.diagnostic = e.what();
    }
    r.runtime_ms = cfg_.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count()
                               : 0;
    out.push_back(std::move(r));
  }

  std::vector<double> x_grid(const KernelSpec &k) const {
    std::vector<double> xs;
    for (double x : cfg_.x_grid)
      if (x > 0.0 || !k.singular_at_zero())
        xs.push_back(x);
    return xs;
  }

  std::vector<double> positive_x() const {
    std::vector<double> xs;
    for (double x : cfg_.x_grid)
      if (x > 0.0)
        xs.push_back(x);
    return xs;
  }

  const Config &cfg_;
  std::vector<PlotRow> *plot_;
  std::vector<VerificationReport> out;
};

VerificationReport make(const std::string &case_id, const std::string &check_id, Params params,
                        double abs_err, double rel_err, double tolerance, bool relative = true) {
  VerificationReport r;
  r.case_id = case_id;
  r.check_id = check_id;
  r.params = std::move(params);
  r.max_abs_err = abs_err;
  r.max_rel_err = rel_err;
  r.tolerance = tolerance;
  if (relative)
    r.judge_relative();
  else
    r.judge_absolute();
  return r;
}

Params lparams(const LParams &p) { return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}}; }

std::vector<KernelSpec> catalog(const Config &cfg) {
  std::vector<KernelSpec> ks = {KernelSpec::mehler(), KernelSpec::carleman()};
  for (double b : cfg.whittaker_betas)
    ks.push_back(KernelSpec::whittaker(b));
  for (double b : cfg.discrete_betas)
    ks.push_back(KernelSpec::whittaker(b));
  ks.push_back(KernelSpec::macdonald());
  for (double b : cfg.compact_betas)
    ks.push_back(KernelSpec::regular_whittaker(b));
  ks.push_back(KernelSpec::regular_macdonald());
  for (int l : cfg.ranks)
    ks.push_back(KernelSpec::finite_rank(l));
  return ks;
}

void ode_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  const std::vector<double> xs = log_grid(1e-2, 1e2, 30);
  for (const KernelSpec &k : catalog(cfg)) {
    for (bool numeric : {false, true}) {
      const double tol = numeric ? cfg.tol.ode_numeric : cfg.tol.ode_analytic;
      const std::string id = numeric ? "ode_numeric" : "ode_analytic";
      run.check(k.name(), id, lparams(k.params()), tol, [&] {
        double worst = 0.0;
        for (double x : xs)
          worst = std::max(worst, std::abs(ode_residual_normalized(k, k.params(), x, numeric)));
        return make(k.name(), id, lparams(k.params()), worst, worst, tol);
      });
    }
  }
  // the rank-l kernel is a multiple of x^{-1} W_{l,1/2}
  for (int l : cfg.ranks) {
    const KernelSpec k = KernelSpec::finite_rank(l);
    run.check(k.name(), "whittaker_form", {{"l", double(l)}}, cfg.tol.finite_rank, [&] {
      double fact = 1.0;
      for (int j = 2; j < l; ++j)
        fact *= j;
      const double sgn = (l - 1) % 2 == 0 ? 1.0 : -1.0;
      double abs_err = 0.0, rel = 0.0;
      for (double x : log_grid(0.1, 20.0, 20)) {
        const double w = sgn / fact * specfun::whittaker_w(-double(l), Order::real(0.5), x) / x;
        const double d = std::abs(k(x) - w);
        abs_err = std::max(abs_err, d);
        rel = std::max(rel, d / std::abs(w));
      }
      return make(k.name(), "whittaker_form", {{"l", double(l)}}, abs_err, rel,
                  cfg.tol.finite_rank);
    });
  }
}

void commutator_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  const SmoothFn f = bump(1.0, 3.0);
  const std::vector<double> xs = log_grid(0.1, 20.0, 24);
  CommutatorOpts opts;
  opts.quad = cfg.quad;
  opts.tolerance = cfg.tol.commutator;

  const KernelSpec mehler = KernelSpec::mehler();
  run.check(mehler.name(), "commutator", lparams(mehler.params()), opts.tolerance,
            [&] { return commutator_residual(mehler, mehler.params(), f, xs, opts); });

  // a kernel outside the family must not commute with the same L
  const KernelSpec control = KernelSpec::custom(
      "control_shift3", [](double x) { return 1.0 / (x + 3.0); }, mehler.params(), false, true);
  const double thr = cfg.tol.commutator_control;
  const Params cp = {{"threshold", thr}};
  run.check(control.name(), "commutator_control", cp, 1.0, [&] {
    const VerificationReport r = commutator_residual(control, mehler.params(), f, xs, opts);
    // max_rel_err is threshold / residual: at most 1 when the control is detected
    return make(control.name(), "commutator_control", cp, r.max_rel_err, thr / r.max_rel_err, 1.0);
  });
}

void eigen_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  std::vector<EigenFamily> fams = {EigenFamily::mehler(), EigenFamily::carleman()};
  for (double b : cfg.whittaker_betas)
    fams.push_back(EigenFamily::whittaker(b));
  fams.push_back(EigenFamily::macdonald());

  for (const EigenFamily &fam : fams) {
    if (fam.kind() == FamilyCase::carleman)
      continue;
    for (double k : cfg.normalization_k)
      run.check(fam.name(), "normalization", {{"k", k}}, cfg.tol.normalization,
                [&] { return normalization_identity(fam, k, cfg.tol.normalization); });
  }

  for (const EigenFamily &fam : fams) {
    const bool elementary = fam.kind() == FamilyCase::mehler || fam.kind() == FamilyCase::carleman;
    IdentityOpts io;
    io.quad = cfg.quad;
    io.tolerance = elementary ? cfg.tol.eigen_elementary : cfg.tol.eigen_special;
    io.plot = run.plot_;
    const std::vector<double> xs = run.x_grid(fam.kernel());
    for (double k : cfg.k_grid)
      run.check(fam.name(), "continuum_identity", {{"k", k}}, io.tolerance,
                [&] { return verify_continuum_identity(fam, k, xs, io); });
  }

  for (double k : cfg.carleman_k)
    run.check("carleman", "mellin_closed_form", {{"k", k}}, cfg.tol.carleman_closed_form,
              [&] { return verify_carleman_closed_form(k, cfg.tol.carleman_closed_form); });

  // Nyström spectrum stays in [0, π] for kernels without point spectrum
  std::vector<KernelSpec> ks = {KernelSpec::mehler(), KernelSpec::carleman()};
  for (double b : cfg.whittaker_betas)
    if (b >= -0.5)
      ks.push_back(KernelSpec::whittaker(b));
  ks.push_back(KernelSpec::macdonald());
  for (const KernelSpec &k : ks)
    for (int n : cfg.solver.nystrom_nodes) {
      const Params p = {{"n", double(n)}};
      run.check(k.name(), "nystrom_containment", p, cfg.tol.containment, [&] {
        const auto v = nystrom::eigenvalues(nystrom::build(k, n));
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const double excess = std::max({0.0, -*lo, *hi - pi});
        return make(k.name(), "nystrom_containment", p, excess, excess, cfg.tol.containment,
                    false);
      });
    }

  // eigenvalues near π multiply as the Carleman grid widens
  run.check("carleman", "continuum_filling", {}, 0.5, [&] {
    int prev = -1, drops = 0;
    for (int n : cfg.solver.nystrom_nodes) {
      const int c = nystrom::rank_check(nystrom::build(KernelSpec::carleman(), n), pi - 0.1);
      if (c <= prev)
        ++drops;
      prev = c;
    }
    return make("carleman", "continuum_filling", {}, drops, drops, 0.5, false);
  });
}

void discrete_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  const std::vector<double> xs = run.positive_x();
  for (double beta : cfg.discrete_betas) {
    if (!(beta < -0.5))
      continue;
    char label[48];
    std::snprintf(label, sizeof label, "whittaker(%g)", beta);
    std::optional<KernelSpec> kernel;
    std::vector<DiscretePair> pairs;
    try {
      kernel = KernelSpec::whittaker(beta);
      pairs = discrete_spectrum(beta);
    } catch (const std::exception &) {
      run.check(label, "discrete_spectrum", {{"beta", beta}}, cfg.tol.discrete_eigenvalue,
                []() -> VerificationReport { throw; });
      continue;
    }
    const KernelSpec &k = *kernel;
    const std::string cid = k.name();
    IdentityOpts io;
    io.quad = cfg.quad;
    io.tolerance = cfg.tol.discrete_eigenvalue;
    for (const DiscretePair &d : pairs)
      run.check(cid, "discrete_eigenvalue", {{"n", double(d.n)}}, io.tolerance,
                [&] { return verify_discrete_eigenvalue(k, d, xs, io); });
    run.check(cid, "discrete_orthogonality", {{"pairs", double(pairs.size())}},
              cfg.tol.orthogonality,
              [&] { return discrete_orthogonality(cid, pairs, cfg.tol.orthogonality); });
    run.check(cid, "discrete_continuum_orthogonality", {{"k_points", double(cfg.k_grid.size())}},
              cfg.tol.discrete_continuum, [&] {
                return discrete_continuum_orthogonality(EigenFamily::whittaker(beta), cfg.k_grid,
                                                        cfg.tol.discrete_continuum);
              });

    // independent route: finite differences in the Liouville variable
    const LParams lp{0.25, beta, 0.0};
    const int ne = static_cast<int>(pairs.size());
    const double mu_top = pairs.back().mu;
    run.check(cid, "sl_eigenvalue", {}, cfg.tol.sl_eigenvalue, [&] {
      const SLProblem pb = line_problem(lp, mu_top, cfg.solver.n_points);
      const RichardsonResult rr = richardson(pb, ne);
      double err = 0.0, err_x = 0.0, order_dev = 0.0;
      for (int j = 0; j < ne; ++j) {
        err = std::max(err, std::abs(rr.mu_4n[j] - pairs[j].mu));
        err_x = std::max(err_x, std::abs(rr.extrapolated[j] - pairs[j].mu));
        order_dev = std::max(order_dev, std::abs(rr.order[j] - 2.0));
      }
      run.out.push_back(make(cid, "sl_order", {{"n_points", double(pb.n_points)}}, order_dev,
                             order_dev, cfg.tol.sl_order, false));
      // the converged value is the extrapolation; the finest grid is reported alongside
      return make(cid, "sl_eigenvalue",
                  {{"n_points", double(4 * pb.n_points)}, {"finest_grid_err", err}}, err_x, err_x,
                  cfg.tol.sl_eigenvalue, false);
    });
    run.check(cid, "sl_truncation", {}, cfg.tol.sl_truncation, [&] {
      const double d = truncation_sensitivity(line_problem(lp, mu_top, cfg.solver.n_points), ne);
      return make(cid, "sl_truncation", {}, d, d, cfg.tol.sl_truncation, false);
    });
    run.check(cid, "sl_orthonormality", {}, cfg.tol.sl_orthonormality, [&] {
      const double d = orthonormality_defect(solve(line_problem(lp, mu_top, cfg.solver.n_points), ne));
      return make(cid, "sl_orthonormality", {}, d, d, cfg.tol.sl_orthonormality, false);
    });

    // the matrix has exactly one eigenvalue near each predicted λ_n, and nothing else
    // outside [min λ_n, max(π, max λ_n)]
    const int nn = *std::max_element(cfg.solver.nystrom_nodes.begin(),
                                     cfg.solver.nystrom_nodes.end());
    run.check(cid, "nystrom_discrete", {{"n", double(nn)}}, cfg.tol.outlier, [&] {
      const auto v = nystrom::eigenvalues(nystrom::build(k, nn));
      double dist = 0.0, lo = 0.0, hi = pi;
      for (const DiscretePair &d : pairs) {
        const auto near = std::count_if(v.begin(), v.end(), [&](double x) {
          return std::abs(x - d.lambda) < cfg.tol.outlier;
        });
        double best = INFINITY;
        for (double x : v)
          best = std::min(best, std::abs(x - d.lambda));
        dist = std::max(dist, near == 1 ? best : INFINITY);
        lo = std::min(lo, d.lambda);
        hi = std::max(hi, d.lambda);
      }
      const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
      const double excess = std::max({0.0, lo - *vmin, *vmax - hi});
      run.out.push_back(make(cid, "nystrom_containment", {{"n", double(nn)}}, excess, excess,
                             cfg.tol.containment, false));
      return make(cid, "nystrom_discrete", {{"n", double(nn)}}, dist, dist, cfg.tol.outlier,
                  false);
    });
  }
}

void finite_rank_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  const std::vector<double> xs = run.positive_x();
  for (int l : cfg.ranks) {
    const KernelSpec k = KernelSpec::finite_rank(l);
    const std::string cid = k.name();
    const auto pairs = finite_rank_spectrum(l);
    const int nn = cfg.solver.finite_rank_nodes;
    const Params np = {{"n", double(nn)}};

    run.check(cid, "nystrom_rank", np, 0.5, [&] {
      const int r = nystrom::rank_check(nystrom::build(k, nn), 1e-6);
      return make(cid, "nystrom_rank", np, std::abs(r - l), std::abs(r - l), 0.5, false);
    });
    run.check(cid, "nystrom_eigenvalues", np, cfg.tol.finite_rank, [&] {
      const auto v = nystrom::eigenvalues(nystrom::build(k, nn));
      std::vector<double> top(v.begin(), v.begin() + l), want;
      for (const DiscretePair &d : pairs)
        want.push_back(d.lambda);
      std::sort(top.begin(), top.end());
      std::sort(want.begin(), want.end());
      double err = 0.0;
      for (int j = 0; j < l; ++j)
        err = std::max(err, std::abs(top[j] - want[j]));
      for (std::size_t j = l; j < v.size(); ++j)
        err = std::max(err, std::abs(v[j]));
      return make(cid, "nystrom_eigenvalues", np, err, err, cfg.tol.finite_rank, false);
    });
    run.check(cid, "nystrom_eigenfunctions", np, cfg.tol.finite_rank_vectors, [&] {
      // each ψ_n must lie in the matrix eigenspace of its eigenvalue (±1 may be repeated)
      const nystrom::HankelMatrix m = nystrom::build(k, nn);
      const nystrom::Eigensystem es = nystrom::eigensystem(m);
      double worst = 0.0;
      for (const DiscretePair &d : pairs) {
        Eigen::VectorXd target(m.nodes.size());
        for (std::size_t i = 0; i < m.nodes.size(); ++i)
          target(Eigen::Index(i)) = std::sqrt(m.weights[i]) * d.psi(m.nodes[i]);
        Eigen::VectorXd proj = Eigen::VectorXd::Zero(target.size());
        for (int j = 0; j < l; ++j)
          if (std::abs(es.values[j] - d.lambda) < 1e-6)
            proj += es.vectors.col(j).dot(target) * es.vectors.col(j);
        worst = std::max(worst, (target - proj).norm() / target.norm());
      }
      return make(cid, "nystrom_eigenfunctions", np, worst, worst, cfg.tol.finite_rank_vectors);
    });
    IdentityOpts io;
    io.quad = cfg.quad;
    io.tolerance = cfg.tol.finite_rank;
    for (const DiscretePair &d : pairs)
      run.check(cid, "discrete_eigenvalue", {{"n", double(d.n)}}, io.tolerance,
                [&] { return verify_discrete_eigenvalue(k, d, xs, io); });
    for (double kk : cfg.subspace_k)
      run.check(cid, "kernel_subspace", {{"l", double(l)}, {"k", kk}}, cfg.tol.subspace,
                [&] { return kernel_subspace_check(l, kk, xs, cfg.tol.subspace); });
  }
}

void compact_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  std::vector<CompactSpec> cases;
  for (double b : cfg.compact_betas)
    cases.push_back({CompactCase::regular_whittaker, b});
  cases.push_back({CompactCase::regular_macdonald, 0.0});
  const int ne = cfg.solver.compact_eigs;
  for (const CompactSpec &c : cases) {
    const std::string cid = c.name();
    if (!run.wanted(cid))
      continue;
    SLProblem pb;
    std::vector<SLEigenpair> p1, p2;
    try {
      pb = compact_problem(c, ne, cfg.solver.n_points);
      p1 = solve(pb, ne);
      SLProblem fine = pb;
      fine.n_points *= 2;
      p2 = solve(fine, ne);
    } catch (const std::exception &) {
      run.check(cid, "sl_solve", {}, cfg.tol.compact, []() -> VerificationReport { throw; });
      continue;
    }
    run.check(cid, "sl_orthonormality", {}, cfg.tol.sl_orthonormality, [&] {
      const double d = orthonormality_defect(p1);
      return make(cid, "sl_orthonormality", {}, d, d, cfg.tol.sl_orthonormality, false);
    });
    run.check(cid, "sl_truncation", {}, cfg.tol.sl_truncation, [&] {
      const double d = truncation_sensitivity(pb, ne);
      return make(cid, "sl_truncation", {}, d, d, cfg.tol.sl_truncation, false);
    });
    run.check(cid, "left_bc", {}, cfg.tol.left_bc, [&] {
      double worst = 0.0;
      for (const SLEigenpair &p : p1)
        worst = std::max(worst, left_bc_residual(p));
      return make(cid, "left_bc", {}, worst, worst, cfg.tol.left_bc);
    });

    std::vector<double> lam(ne, nan);
    std::optional<CompactQuadrature> q;
    std::vector<double> nys;
    for (int i = 0; i < ne; ++i) {
      const Params ip = {{"n", double(i + 1)}, {"mu", p2[i].mu}};
      run.check(cid, "pss_vs_rayleigh", ip, cfg.tol.compact, [&] {
        lam[i] = (4.0 * compact_case_lambda(c, p2[i]) - compact_case_lambda(c, p1[i])) / 3.0;
        if (!q)
          q = compact_quadrature(c, p1, &p2);
        const double rq = rayleigh_quotient(*q, i);
        return make(cid, "pss_vs_rayleigh", ip, std::abs(lam[i] - rq),
                    std::abs(lam[i] - rq) / std::abs(rq), cfg.tol.compact);
      });
      run.check(cid, "pss_residual", ip, cfg.tol.compact, [&] {
        if (!q || std::isnan(lam[i]))
          throw std::runtime_error("no tail-normalized eigenvalue");
        const double r = eigen_residual(*q, i, lam[i]);
        return make(cid, "pss_residual", ip, r * std::abs(lam[i]), r, cfg.tol.compact);
      });
      run.check(cid, "pss_vs_nystrom", ip, cfg.tol.compact, [&] {
        if (std::isnan(lam[i]))
          throw std::runtime_error("no tail-normalized eigenvalue");
        if (nys.empty())
          nys = nystrom::eigenvalues(
              nystrom::build(c.kernel(), cfg.solver.finite_rank_nodes, nystrom::NodeMap::algebraic_map));
        const double d = std::abs(nys[i] - lam[i]);
        return make(cid, "pss_vs_nystrom", ip, d, d / std::abs(lam[i]), cfg.tol.compact);
      });
      run.check(cid, "tail_slope", ip, cfg.tol.tail_slope, [&] {
        const double m = tail_slope(c, p1[i]);
        return make(cid, "tail_slope", ip, std::abs(m - 1.0), std::abs(m - 1.0),
                    cfg.tol.tail_slope);
      });
    }
  }
}

void transform_suite(Runner &run) {
  const Config &cfg = run.cfg_;
  std::vector<EigenFamily> fams = {EigenFamily::mehler(), EigenFamily::carleman()};
  for (double b : cfg.whittaker_betas)
    fams.push_back(EigenFamily::whittaker(b));
  for (double b : cfg.discrete_betas)
    if (b < -0.5)
      fams.push_back(EigenFamily::whittaker(b));
  fams.push_back(EigenFamily::macdonald());
  for (const EigenFamily &fam : fams)
    for (const TestFunction &tf : default_test_functions()) {
      run.check(fam.name(), "diagonalization:" + tf.name,
                {{"k_points", double(cfg.k_grid.size())}}, cfg.tol.diagonalization,
                [&] { return verify_diagonalization(fam, tf, cfg.k_grid, cfg.tol.diagonalization); });
      run.check(fam.name(), "parseval:" + tf.name, {}, cfg.tol.parseval, [&] {
        return verify_parseval(fam, tf, cfg.solver.parseval_points, cfg.tol.parseval);
      });
    }
}

template <class T> std::vector<T> as_vector(const json &v, const std::string &key) {
  if (!v.is_array())
    throw ConfigError("config: " + key + " must be an array");
  std::vector<T> out;
  for (const json &e : v) {
    if (!e.is_number())
      throw ConfigError("config: " + key + " must contain numbers");
    out.push_back(e.get<T>());
  }
  return out;
}

double as_number(const json &v, const std::string &key) {
  if (!v.is_number())
    throw ConfigError("config: " + key + " must be a number");
  return v.get<double>();
}

} // namespace

QuadOpts Config::default_quad() { return QuadOpts{}; }

void Config::validate() const {
  const double *t = &tol.ode_analytic;
  const std::size_t n = sizeof(Tolerances) / sizeof(double);
  for (std::size_t i = 0; i < n; ++i)
    if (!(t[i] > 0.0))
      throw ConfigError("config: all tolerances must be positive");
  for (double k : k_grid)
    if (!(k > 0.0))
      throw ConfigError("config: k_grid values must be positive");
  for (double x : x_grid)
    if (!(x >= 0.0))
      throw ConfigError("config: x_grid values must be non-negative");
  for (int l : ranks)
    if (l < 1)
      throw ConfigError("config: ranks must be >= 1");
  if (solver.n_points < 200)
    throw ConfigError("config: solver.n_points must be >= 200");
  if (solver.compact_eigs < 1)
    throw ConfigError("config: solver.compact_eigs must be >= 1");
  if (solver.parseval_points < 2)
    throw ConfigError("config: solver.parseval_points must be >= 2");
  if (solver.finite_rank_nodes % 20 != 0 || solver.finite_rank_nodes < 20)
    throw ConfigError("config: solver.finite_rank_nodes must be a positive multiple of 20");
  for (int n : solver.nystrom_nodes)
    if (n < 2)
      throw ConfigError("config: solver.nystrom_nodes must be >= 2");
  if (format != "json" && format != "csv")
    throw ConfigError("config: format must be json or csv");
  try {
    quad.validate();
  } catch (const std::exception &e) {
    throw ConfigError(std::string("config: quad: ") + e.what());
  }
}

void merge_config_json(Config &cfg, const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config: top level must be an object");

  static const std::map<std::string, double Tolerances::*> tol_keys = {
      {"ode_analytic", &Tolerances::ode_analytic},
      {"ode_numeric", &Tolerances::ode_numeric},
      {"commutator", &Tolerances::commutator},
      {"commutator_control", &Tolerances::commutator_control},
      {"eigen_elementary", &Tolerances::eigen_elementary},
      {"eigen_special", &Tolerances::eigen_special},
      {"carleman_closed_form", &Tolerances::carleman_closed_form},
      {"normalization", &Tolerances::normalization},
      {"discrete_eigenvalue", &Tolerances::discrete_eigenvalue},
      {"orthogonality", &Tolerances::orthogonality},
      {"discrete_continuum", &Tolerances::discrete_continuum},
      {"finite_rank", &Tolerances::finite_rank},
      {"finite_rank_vectors", &Tolerances::finite_rank_vectors},
      {"subspace", &Tolerances::subspace},
      {"sl_eigenvalue", &Tolerances::sl_eigenvalue},
      {"sl_order", &Tolerances::sl_order},
      {"sl_orthonormality", &Tolerances::sl_orthonormality},
      {"sl_truncation", &Tolerances::sl_truncation},
      {"compact", &Tolerances::compact},
      {"tail_slope", &Tolerances::tail_slope},
      {"left_bc", &Tolerances::left_bc},
      {"diagonalization", &Tolerances::diagonalization},
      {"parseval", &Tolerances::parseval},
      {"containment", &Tolerances::containment},
      {"outlier", &Tolerances::outlier},
  };
  static const std::map<std::string, std::vector<double> Config::*> grid_keys = {
      {"k_grid", &Config::k_grid},
      {"x_grid", &Config::x_grid},
      {"normalization_k", &Config::normalization_k},
      {"carleman_k", &Config::carleman_k},
      {"subspace_k", &Config::subspace_k},
      {"whittaker_betas", &Config::whittaker_betas},
      {"discrete_betas", &Config::discrete_betas},
      {"compact_betas", &Config::compact_betas},
  };

  for (const auto &[key, val] : j.items()) {
    if (key == "tolerances") {
      if (!val.is_object())
        throw ConfigError("config: tolerances must be an object");
      for (const auto &[tk, tv] : val.items()) {
        const auto it = tol_keys.find(tk);
        if (it == tol_keys.end())
          throw ConfigError("config: unknown tolerance " + tk);
        cfg.tol.*(it->second) = as_number(tv, "tolerances." + tk);
      }
    } else if (auto g = grid_keys.find(key); g != grid_keys.end()) {
      cfg.*(g->second) = as_vector<double>(val, key);
    } else if (key == "ranks") {
      cfg.ranks = as_vector<int>(val, key);
    } else if (key == "quad") {
      if (!val.is_object())
        throw ConfigError("config: quad must be an object");
      for (const auto &[qk, qv] : val.items()) {
        if (qk == "rel_tol")
          cfg.quad.rel_tol = as_number(qv, "quad.rel_tol");
        else if (qk == "abs_tol")
          cfg.quad.abs_tol = as_number(qv, "quad.abs_tol");
        else if (qk == "max_subdivisions")
          cfg.quad.max_subdivisions = static_cast<int>(as_number(qv, "quad.max_subdivisions"));
        else
          throw ConfigError("config: unknown quad option " + qk);
      }
    } else if (key == "solver") {
      if (!val.is_object())
        throw ConfigError("config: solver must be an object");
      for (const auto &[sk, sv] : val.items()) {
        if (sk == "n_points")
          cfg.solver.n_points = static_cast<int>(as_number(sv, "solver.n_points"));
        else if (sk == "compact_eigs")
          cfg.solver.compact_eigs = static_cast<int>(as_number(sv, "solver.compact_eigs"));
        else if (sk == "nystrom_nodes")
          cfg.solver.nystrom_nodes = as_vector<int>(sv, "solver.nystrom_nodes");
        else if (sk == "finite_rank_nodes")
          cfg.solver.finite_rank_nodes =
              static_cast<int>(as_number(sv, "solver.finite_rank_nodes"));
        else if (sk == "parseval_points")
          cfg.solver.parseval_points = static_cast<int>(as_number(sv, "solver.parseval_points"));
        else
          throw ConfigError("config: unknown solver option " + sk);
      }
    } else if (key == "output") {
      if (!val.is_object())
        throw ConfigError("config: output must be an object");
      for (const auto &[ok, ov] : val.items()) {
        if (!ov.is_string())
          throw ConfigError("config: output." + ok + " must be a string");
        if (ok == "path")
          cfg.out = ov.get<std::string>();
        else if (ok == "format")
          cfg.format = ov.get<std::string>();
        else if (ok == "plot_data")
          cfg.plot_data = ov.get<std::string>();
        else
          throw ConfigError("config: unknown output option " + ok);
      }
    } else {
      throw ConfigError("config: unknown key " + key);
    }
  }
}

void merge_config_file(Config &cfg, const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  merge_config_json(cfg, ss.str());
}

Config load_config() {
  Config cfg;
  if (const char *env = std::getenv("HANKEL_CONFIG"); env && *env)
    merge_config_file(cfg, env);
  return cfg;
}

Suite parse_suite(const std::string &name) {
  static const std::map<std::string, Suite> names = {
      {"ode", Suite::ode},           {"commutator", Suite::commutator},
      {"eigen", Suite::eigen},       {"discrete", Suite::discrete},
      {"finite-rank", Suite::finite_rank}, {"finite_rank", Suite::finite_rank},
      {"compact", Suite::compact},   {"transform", Suite::transform},
      {"all", Suite::all}};
  const auto it = names.find(name);
  if (it == names.end())
    throw ConfigError("unknown suite: " + name);
  return it->second;
}

std::string suite_name(Suite s) {
  switch (s) {
  case Suite::ode: return "ode";
  case Suite::commutator: return "commutator";
  case Suite::eigen: return "eigen";
  case Suite::discrete: return "discrete";
  case Suite::finite_rank: return "finite-rank";
  case Suite::compact: return "compact";
  case Suite::transform: return "transform";
  case Suite::all: return "all";
  }
  return "";
}

std::vector<VerificationReport> run_suite(Suite suite, const Config &cfg,
                                          std::vector<PlotRow> *plot) {
  cfg.validate();
  Runner run(cfg, plot);
  const bool all = suite == Suite::all;
  if (all || suite == Suite::ode)
    ode_suite(run);
  if (all || suite == Suite::commutator)
    commutator_suite(run);
  if (all || suite == Suite::eigen)
    eigen_suite(run);
  if (all || suite == Suite::discrete)
    discrete_suite(run);
  if (all || suite == Suite::finite_rank)
    finite_rank_suite(run);
  if (all || suite == Suite::compact)
    compact_suite(run);
  if (all || suite == Suite::transform)
    transform_suite(run);
  // reports pushed from inside a check bypass the runner's timing and filter
  std::vector<VerificationReport> out;
  for (VerificationReport &r : run.out)
    if (run.wanted(r.case_id)) {
      if (!cfg.timing)
        r.runtime_ms = 0;
      out.push_back(std::move(r));
    }
  sort_reports(out);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw std::invalid_argument("log_grid: requires 0 < lo < hi and n >= 2");
  std::vector<double> g;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i)
    g.push_back(i == n - 1 ? hi : std::exp(a + (b - a) * i / (n - 1)));
  return g;
}

} // namespace hankel
