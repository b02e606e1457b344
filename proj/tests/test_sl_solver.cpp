#include "hankel/nystrom.hpp"
#include "hankel/sl_solver.hpp"

#include "doctest.h"

#include <cmath>

using namespace hankel;

TEST_CASE("whole-line problem recovers the bound state at -3/4") {
  const SLProblem pb = line_problem(LParams{0.25, -1.5, 0.0}, -0.75);
  const RichardsonResult r = richardson(pb, 1);
  CHECK(std::abs(r.order[0] - 2.0) < 0.2);
  CHECK(std::abs(r.mu_4n[0] + 0.75) < 1e-6);
  CHECK(std::abs(r.extrapolated[0] + 0.75) < 1e-8);
}

TEST_CASE("two bound states for beta = -2.3") {
  const SLProblem pb = line_problem(LParams{0.25, -2.3, 0.0}, 0.25 - 0.8 * 0.8);
  const auto pairs = solve(pb, 2);
  REQUIRE(pairs.size() == 2);
  CHECK(std::abs(pairs[0].mu - (0.25 - 1.8 * 1.8)) < 1e-4);
  CHECK(std::abs(pairs[1].mu - (0.25 - 0.8 * 0.8)) < 1e-4);
  const RichardsonResult r = richardson(pb, 2);
  CHECK(std::abs(r.extrapolated[0] - (0.25 - 1.8 * 1.8)) < 1e-6);
  CHECK(std::abs(r.extrapolated[1] - (0.25 - 0.8 * 0.8)) < 1e-6);
  CHECK(orthonormality_defect(pairs) < 1e-8);
  CHECK(truncation_sensitivity(pb, 2) < 1e-8);
}

TEST_CASE("computed bound state matches the closed form") {
  const auto p = solve(line_problem(LParams{0.25, -1.5, 0.0}, -0.75), 1)[0];
  // ψ = x^{1/2} e^{-x/2}, ‖ψ‖² = 1
  for (double x : {0.3, 1.0, 3.0})
    CHECK(std::abs(p.psi(x) - std::sqrt(x) * std::exp(-x / 2)) < 1e-4);
}

TEST_CASE("solver errors") {
  SLProblem pb = line_problem(LParams{0.25, -1.5, 0.0}, -0.75);
  pb.t_min = -2.0;
  try {
    solve(pb, 1);
    FAIL("expected domain_too_small");
  } catch (const SLError &e) {
    CHECK(e.kind() == SLError::Kind::domain_too_small);
  }
  SLProblem bad = pb;
  bad.t_max = bad.t_min;
  CHECK_THROWS_AS(solve(bad, 1), SLError);
  CHECK_THROWS_AS(line_problem(LParams{0.0, 1.0, 0.0}, 0.0), SLError);
}

TEST_CASE("regular boundary condition at the origin") {
  const CompactSpec c{CompactCase::regular_whittaker, 0.0};
  const auto pairs = solve_compact(c, 3);
  for (const auto &p : pairs)
    CHECK(left_bc_residual(p) < 1e-3);
}

TEST_CASE("semiclassical tails") {
  const EndBehavior w = semiclassical_tail({CompactCase::regular_whittaker, 0.5}, 3.0);
  CHECK(w.power == doctest::Approx(-1.5));
  CHECK(w.rate == doctest::Approx(0.5));
  CHECK(w.stretch == doctest::Approx(1.0));
  const EndBehavior m = semiclassical_tail({CompactCase::regular_macdonald, 0.0}, 3.0);
  CHECK(m.power == doctest::Approx(-0.75));
  CHECK(m.rate == doctest::Approx(std::sqrt(8.0)));
  CHECK(m.stretch == doctest::Approx(0.5));
}

TEST_CASE("compact case: tail-normalized eigenvalue against two other routes") {
  for (const CompactSpec c : {CompactSpec{CompactCase::regular_whittaker, 0.0},
                              CompactSpec{CompactCase::regular_macdonald, 0.0}}) {
    const SLProblem pb = compact_problem(c, 1);
    SLProblem fine = pb;
    fine.n_points *= 2;
    const auto p1 = solve(pb, 1), p2 = solve(fine, 1);
    const auto q = compact_quadrature(c, p1, &p2);
    const double lam = compact_case_lambda(c, p2[0]);
    const double rq = rayleigh_quotient(q, 0);
    CHECK(std::abs(lam - rq) < 1e-3 * std::abs(rq));
    CHECK(eigen_residual(q, 0, lam) < 1e-3);
    const auto nys = nystrom::eigenvalues(
        nystrom::build(c.kernel(), 200, nystrom::NodeMap::algebraic_map));
    CHECK(std::abs(nys[0] - lam) < 1e-3 * std::abs(lam));
    CHECK(std::abs(tail_slope(c, p1[0]) - 1.0) < 0.02);
  }
}

TEST_CASE("leading-coefficient prefactors of 1 and sqrt(2 pi) are inconsistent") {
  for (const CompactSpec c : {CompactSpec{CompactCase::regular_whittaker, 0.0},
                              CompactSpec{CompactCase::regular_macdonald, 0.0}}) {
    const auto pairs = solve_compact(c, 1);
    const auto q = compact_quadrature(c, pairs);
    const double lit = compact_case_lambda_literal(c, pairs[0]);
    CHECK(std::abs(lit / rayleigh_quotient(q, 0) - 1.0) > 0.5);
  }
}

TEST_CASE("regular whittaker ground state value") {
  // reference from the Nyström route at 400 nodes
  const CompactSpec c{CompactCase::regular_whittaker, 0.0};
  const auto p = solve_compact(c, 1, 8000);
  CHECK(std::abs(compact_case_lambda(c, p[0]) - 0.10657087901) < 1e-6);
}
