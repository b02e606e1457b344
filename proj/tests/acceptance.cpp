#include "hankel/sl_solver.hpp"
#include "hankel/spectral.hpp"
#include "hankel/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace hankel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Reports = std::vector<VerificationReport>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// all reports whose check id is in ids must pass; returns the worst error seen
Outcome require(const Reports &rs, const std::set<std::string> &ids, bool relative = true) {
  Outcome o;
  double worst = 0.0;
  int n = 0;
  for (const auto &r : rs) {
    const std::string base = r.check_id.substr(0, r.check_id.find(':'));
    if (!ids.count(base) && !ids.count(r.check_id))
      continue;
    ++n;
    const double e = relative ? r.max_rel_err : r.max_abs_err;
    worst = std::isnan(e) ? e : std::max(worst, e);
    if (!r.pass) {
      o.pass = false;
      if (o.detail.empty())
        o.detail = "first failure " + r.case_id + " " + r.check_id +
                   (r.diagnostic.empty() ? "" : " (" + r.diagnostic + ")");
    }
  }
  if (n == 0) {
    o.pass = false;
    o.detail = "no reports";
  }
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d checks, worst %.3g", n, worst);
    o.detail = buf;
  }
  return o;
}

Outcome identity_grid(const std::vector<EigenFamily> &fams, const std::vector<double> &xs,
                      double tol) {
  Reports rs;
  for (const auto &f : fams)
    for (double k : {0.25, 0.5, 1.0, 2.0}) {
      IdentityOpts io;
      io.tolerance = tol;
      rs.push_back(verify_continuum_identity(f, k, xs, io));
    }
  return require(rs, {"continuum_identity"});
}

Outcome with_budget(Outcome o, double secs, double budget) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1f s of %.0f s", secs, budget);
  o.detail += buf;
  if (secs > budget)
    o.pass = false;
  return o;
}

} // namespace

int main() {
  const Config cfg;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel ODE residuals for the catalog",
       [&] {
         const auto t0 = std::chrono::steady_clock::now();
         const Reports rs = run_suite(Suite::ode, cfg);
         std::set<std::string> families;
         for (const auto &r : rs)
           families.insert(r.case_id.substr(0, r.case_id.find('(')));
         const double secs = seconds_since(t0);
         Outcome o = require(rs, {"ode_analytic", "ode_numeric"});
         if (families.size() != 7) {
           o.pass = false;
           o.detail = "expected 7 kernel families";
         }
         return with_budget(o, secs, 10.0);
       }},
      {"commutator vanishes for Mehler, control detected",
       [&] {
         const auto t0 = std::chrono::steady_clock::now();
         const Reports rs = run_suite(Suite::commutator, cfg);
         return with_budget(require(rs, {"commutator", "commutator_control"}), seconds_since(t0), 60.0);
       }},
      {"Mehler continuum identity",
       [] { return identity_grid({EigenFamily::mehler()}, {0.0, 0.5, 1.0, 5.0, 20.0}, 1e-8); }},
      {"Whittaker continuum identity",
       [] {
         return identity_grid({EigenFamily::whittaker(0.0), EigenFamily::whittaker(0.5),
                               EigenFamily::whittaker(1.0)},
                              {0.1, 1.0, 5.0}, 1e-6);
       }},
      {"MacDonald continuum identity",
       [] { return identity_grid({EigenFamily::macdonald()}, {0.1, 1.0, 5.0}, 1e-6); }},
      {"Carleman closed form",
       [] {
         Reports rs;
         for (double k : {0.25, 0.5, 1.0, 2.0, 4.0})
           rs.push_back(verify_carleman_closed_form(k, 1e-10));
         return require(rs, {"mellin_closed_form"});
       }},
      {"discrete eigenvalues and orthogonality",
       [&] { return require(run_suite(Suite::discrete, cfg), {"discrete_eigenvalue", "discrete_orthogonality"}); }},
      {"finite rank spectrum and kernel subspace",
       [&] {
         return require(run_suite(Suite::finite_rank, cfg),
                        {"nystrom_rank", "nystrom_eigenvalues", "kernel_subspace"}, false);
       }},
      {"normalization identities",
       [] {
         Reports rs;
         for (const auto &f : {EigenFamily::mehler(), EigenFamily::whittaker(0.0),
                               EigenFamily::whittaker(0.5), EigenFamily::whittaker(1.0),
                               EigenFamily::macdonald()})
           for (double k : {0.1, 0.5, 1.0, 2.0})
             rs.push_back(normalization_identity(f, k, 1e-10));
         return require(rs, {"normalization"});
       }},
      {"Sturm-Liouville bound state at -3/4",
       [] {
         const RichardsonResult r = richardson(line_problem(LParams{0.25, -1.5, 0.0}, -0.75), 1);
         const double err = std::abs(r.mu_4n[0] + 0.75);
         Outcome o;
         o.pass = std::abs(r.order[0] - 2.0) <= 0.2 && err <= 1e-6;
         char buf[128];
         std::snprintf(buf, sizeof buf, "order %.4f, finest-grid error %.3g, extrapolated error %.3g",
                       r.order[0], err, std::abs(r.extrapolated[0] + 0.75));
         o.detail = buf;
         return o;
       }},
      {"compact cases: residual and Rayleigh agreement",
       [&] {
         const auto t0 = std::chrono::steady_clock::now();
         const Reports rs = run_suite(Suite::compact, cfg);
         return with_budget(require(rs, {"pss_residual", "pss_vs_rayleigh"}), seconds_since(t0), 300.0);
       }},
      {"diagonalization and Parseval",
       [&] { return require(run_suite(Suite::transform, cfg), {"diagonalization", "parseval"}); }},
      {"Nystrom spectrum containment",
       [&] { return require(run_suite(Suite::eigen, cfg), {"nystrom_containment"}, false); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
