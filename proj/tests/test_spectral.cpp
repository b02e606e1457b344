#include "hankel/quad.hpp"
#include "hankel/spectral.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace hankel;
using std::numbers::pi;

TEST_CASE("closed-form normalizations") {
  for (double k : {0.1, 0.5, 1.0, 2.0}) {
    CHECK(EigenFamily::mehler().normalization(k) ==
          doctest::Approx(std::sqrt(k * std::tanh(pi * k))).epsilon(1e-14));
    CHECK(EigenFamily::macdonald().normalization(k) ==
          doctest::Approx(2.0 / pi * std::sqrt(k * std::sinh(2 * pi * k))).epsilon(1e-14));
    // β = 1/2: |Γ(1-ik)|² = πk / sinh πk
    const double g = std::sqrt(pi * k / std::sinh(pi * k));
    CHECK(EigenFamily::whittaker(0.5).normalization(k) ==
          doctest::Approx(std::sqrt(k * std::sinh(2 * pi * k)) * g / pi).epsilon(1e-12));
  }
}

TEST_CASE("normalization identities against complex gamma") {
  CHECK(normalization_identity(EigenFamily::mehler(), 1.0).pass);
  CHECK(normalization_identity(EigenFamily::whittaker(1.0), 0.5).pass);
  CHECK(normalization_identity(EigenFamily::macdonald(), 1.0).pass);
  CHECK_THROWS(normalization_identity(EigenFamily::carleman(), 1.0));
}

TEST_CASE("Mehler eigenfunction at the origin") {
  for (double k : {0.25, 1.0, 2.0})
    CHECK(EigenFamily::mehler().psi(k, 0.0) ==
          doctest::Approx(std::sqrt(k * std::tanh(pi * k))).epsilon(1e-12));
}

TEST_CASE("Whittaker eigenfunction near the singular end") {
  const double k = 1.0, x = 1e-6;
  const EigenFamily fam = EigenFamily::whittaker(0.0);
  const Complex m = specfun::gamma({0.0, -2.0 * k}) / specfun::gamma({0.5, -k});
  const double lead =
      2.0 * fam.normalization(k) * (m * std::pow(Complex(x, 0.0), Complex(-0.5, k))).real();
  CHECK(std::abs(fam.psi(k, x) - lead) < 1e-4 * std::abs(fam.normalization(k) * std::abs(m) / std::sqrt(x)));
}

TEST_CASE("MacDonald eigenfunction decay") {
  const EigenFamily fam = EigenFamily::macdonald();
  auto env = [](double x) { return std::pow(x, -0.75) * std::exp(-std::sqrt(8.0 * x)); };
  const double r1 = fam.psi(0.5, 200.0) / env(200.0);
  const double r2 = fam.psi(0.5, 800.0) / env(800.0);
  CHECK(std::abs(r1 / r2 - 1.0) < 0.05);
}

TEST_CASE("continuum identities") {
  CHECK(verify_continuum_identity(EigenFamily::mehler(), 0.5, {1.0}, {{}, 1e-8}).pass);
  CHECK(verify_continuum_identity(EigenFamily::whittaker(0.0), 1.0, {0.1, 1.0, 5.0}, {{}, 1e-6}).pass);
  CHECK(verify_continuum_identity(EigenFamily::carleman(), 1.0, {0.5, 2.0}, {{}, 1e-8}).pass);
}

TEST_CASE("Carleman closed form") {
  const auto r = verify_carleman_closed_form(1.0);
  CHECK(r.pass);
  CHECK(r.max_rel_err < 1e-10);
}

TEST_CASE("point spectrum for beta = -3/2") {
  const auto d = discrete_spectrum(-1.5);
  REQUIRE(d.size() == 1);
  CHECK(d[0].p == doctest::Approx(1.0));
  CHECK(d[0].mu == doctest::Approx(-0.75));
  CHECK(d[0].lambda == doctest::Approx(-pi).epsilon(1e-14));
  for (double x : {0.2, 1.0, 6.0})
    CHECK(d[0].psi(x) == doctest::Approx(std::exp(-x / 2) * std::sqrt(x)).epsilon(1e-14));
  CHECK(verify_discrete_eigenvalue(KernelSpec::whittaker(-1.5), d[0], {0.1, 0.5, 1.0, 5.0, 20.0}).pass);
}

TEST_CASE("point spectrum for beta = -2.3") {
  const auto d = discrete_spectrum(-2.3);
  REQUIRE(d.size() == 2);
  CHECK(d[0].p == doctest::Approx(1.8));
  CHECK(d[1].p == doctest::Approx(0.8));
  for (const auto &pr : d) {
    CHECK(pr.lambda == doctest::Approx((pr.n % 2 ? -1.0 : 1.0) * pi / std::sin(-2.3 * pi)).epsilon(1e-14));
    CHECK(pr.mu == doctest::Approx(0.25 - pr.p * pr.p));
    const double q = inner_product([&](double x) { return pr.psi(x); }, [&](double x) { return pr.psi(x); })
                         .value;
    CHECK(q == doctest::Approx(pr.norm2()).epsilon(1e-10));
  }
  CHECK(discrete_orthogonality("whittaker(-2.3)", d).pass);
}

TEST_CASE("no point spectrum above -1/2, poles rejected") {
  CHECK(discrete_spectrum(-0.4).empty());
  CHECK(discrete_spectrum(0.5).empty());
  CHECK_THROWS_AS(discrete_spectrum(-2.0), SpecFunError);
}

TEST_CASE("finite rank eigenpairs") {
  const auto one = finite_rank_spectrum(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lambda == 1.0);
  CHECK(one[0].psi(1.3) == doctest::Approx(std::exp(-0.65)).epsilon(1e-15));

  const auto two = finite_rank_spectrum(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].lambda == -1.0);
  CHECK(two[1].lambda == 1.0);
  for (double x : {0.4, 2.5}) {
    CHECK(two[0].psi(x) == doctest::Approx(x * std::exp(-x / 2)).epsilon(1e-14));
    CHECK(two[1].psi(x) == doctest::Approx((2.0 - x) * std::exp(-x / 2)).epsilon(1e-14));
  }
  const auto three = finite_rank_spectrum(3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].lambda == 1.0);
  CHECK(three[1].lambda == -1.0);
  CHECK(three[2].lambda == 1.0);
}

TEST_CASE("continuum of the rank-l kernel is annihilated") {
  CHECK(kernel_subspace_check(1, 1.0, {1.0}).pass);
  CHECK(kernel_subspace_check(2, 0.5, {0.5, 1.0, 5.0}).pass);
  const auto bad = kernel_subspace_check(KernelSpec::whittaker(-1.9), 2, 0.5, {0.5, 1.0, 5.0});
  CHECK(bad.max_rel_err > 1e-4);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("discrete and continuum eigenfunctions are orthogonal") {
  CHECK(discrete_continuum_orthogonality(EigenFamily::whittaker(-1.5), {0.5, 1.0}).pass);
}

TEST_CASE("transform diagonalizes and preserves the norm") {
  const auto tfs = default_test_functions();
  REQUIRE(tfs.size() == 2);
  CHECK(verify_diagonalization(EigenFamily::mehler(), tfs[0], {0.5, 1.0}).pass);
  const auto p = verify_parseval(EigenFamily::whittaker(-1.5), tfs[0]);
  CHECK(p.pass);
  CHECK(p.max_rel_err < 1e-4);
}

TEST_CASE("Parseval cutoff") {
  const double k = parseval_k_max();
  CHECK(1.0 / std::cosh(pi * k) == doctest::Approx(1e-8).epsilon(1e-10));
}
