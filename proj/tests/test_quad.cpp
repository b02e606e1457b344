#include "hankel/kernels.hpp"
#include "hankel/quad.hpp"
#include "hankel/specfun.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace hankel;
using std::numbers::pi;

TEST_CASE("finite interval") {
  const auto r = integrate_interval([](double x) { return std::sin(x); }, 0.0, pi);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.nodes_used > 0);
}

TEST_CASE("Stieltjes-type integral with endpoint singularity") {
  QuadOpts o;
  o.singular_at_zero = true;
  const auto r = integrate_semi_infinite(
      [](double t) { return 1.0 / ((1.0 + t) * std::sqrt(t)); }, o);
  CHECK(std::abs(r.value - pi) < 1e-9 * pi);
}

TEST_CASE("Laguerre moment") {
  // 1! ∫ e^{-y} y L³₁(y) dy = Γ(3)
  const auto r = integrate_semi_infinite(
      [](double y) { return std::exp(-y) * y * specfun::laguerre(1, 3.0, y); });
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Carleman operator on an exponential") {
  // ∫ e^{-y}/(1+y) dy = e E₁(1)
  QuadOpts o;
  const auto r = apply_hankel(KernelSpec::carleman(), [](double y) { return std::exp(-y); }, 1.0, o);
  CHECK(std::abs(r.value - 0.59634736232319407434) < 1e-10);
}

TEST_CASE("tighter tolerance does not worsen the error") {
  const double exact = 0.59634736232319407434;
  double prev = INFINITY;
  for (double tol : {1e-6, 5e-7, 2.5e-7, 1e-8, 1e-10}) {
    QuadOpts o;
    o.rel_tol = tol;
    const double err = std::abs(
        apply_hankel(KernelSpec::carleman(), [](double y) { return std::exp(-y); }, 1.0, o).value -
        exact);
    CHECK(err <= std::max(prev, 1e-15));
    CHECK(err <= 10.0 * tol * exact);
    prev = err;
  }
}

TEST_CASE("square-root singularity: log map and y = u² substitution agree") {
  QuadOpts o;
  o.singular_at_zero = true;
  o.rel_tol = 1e-11;
  const double a =
      integrate_semi_infinite([](double y) { return y < 1.0 ? std::cos(y) / std::sqrt(y) : 0.0; }, o)
          .value;
  const double b = integrate_interval([](double u) { return 2.0 * std::cos(u * u); }, 0.0, 1.0).value;
  CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
}

TEST_CASE("inner products of Laguerre-type functions") {
  const auto e = [](double x) { return std::exp(-x / 2); };
  CHECK(inner_product(e, e).value == doctest::Approx(1.0).epsilon(1e-12));
  const double v = inner_product([](double x) { return x * std::exp(-x / 2); },
                                 [](double x) { return (2.0 - x) * std::exp(-x / 2); })
                       .value;
  CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("invalid options and non-finite integrands") {
  QuadOpts o;
  o.rel_tol = 0.0;
  CHECK_THROWS(o.validate());
  CHECK_THROWS_AS(integrate_interval([](double) { return NAN; }, 0.0, 1.0), QuadError);
}
