#include "hankel/specfun.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace hankel;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

// reference values below were computed with mpmath at 25 digits

TEST_CASE("gamma matches high-precision values") {
  const Complex g1 = specfun::gamma({0.5, 0.3});
  CHECK(std::abs(g1 - Complex(1.260992786396576933, -0.731759505691833595)) < 1e-12 * std::abs(g1));
  const Complex g2 = specfun::gamma({-1.3, 2.0});
  CHECK(std::abs(g2 - Complex(-0.013608922285906142, 0.021854940282708204)) <
        1e-12 * std::abs(g2));
  CHECK(rel(specfun::gamma({5.0, 0.0}).real(), 24.0) < 1e-13);
}

TEST_CASE("modulus of gamma on the imaginary axis") {
  const double want = std::sqrt(pi / std::sinh(pi));
  CHECK(rel(std::abs(specfun::gamma({0.0, 1.0})), want) < 1e-12);
  CHECK(std::abs(want - 0.521564) < 1e-6);
}

TEST_CASE("log gamma at large argument") {
  const Complex lg = specfun::log_gamma({30.0, 40.0});
  CHECK(std::abs(lg.real() - 49.23280849407029882) < 1e-10);
  // imaginary part agrees modulo 2π
  const double d = std::remainder(lg.imag() - 143.8347958226648246, 2.0 * pi);
  CHECK(std::abs(d) < 1e-10);
}

TEST_CASE("gamma poles throw") {
  CHECK_THROWS_AS(specfun::gamma({-2.0, 0.0}), SpecFunError);
  CHECK_THROWS_AS(specfun::gamma({0.0, 0.0}), SpecFunError);
}

TEST_CASE("conical function") {
  CHECK(specfun::legendre_conical(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel(specfun::legendre_conical(0.5, 0.3), 0.93134905067548300572) < 1e-10);
  CHECK(rel(specfun::legendre_conical(1.0, 2.0), 0.31549987815043839785) < 1e-10);
  CHECK(rel(specfun::legendre_conical(2.0, 10.0), 0.098580815163537051442) < 1e-10);
  CHECK(rel(specfun::legendre_conical(0.25, 0.9), 0.88734866629353798407) < 1e-10);
  CHECK(rel(specfun::legendre_conical(0.0005, 1.0), 0.90128620326779648862) < 1e-10);
}

TEST_CASE("conical function at k = 0 matches the Mehler-Dirichlet integral") {
  CHECK(rel(specfun::legendre_conical(0.0, std::cosh(1.0) - 1.0), 0.94086215924934982) < 1e-10);
}

TEST_CASE("conical function large-argument asymptotics") {
  // P_{-1/2+ik}(z) ≈ 2 Re(Γ(ik)/(√π Γ(1/2+ik)) (2z)^{-1/2+ik}), z = x + 1
  const double k = 1.0, x = 1e4, z = x + 1.0;
  const Complex lead = specfun::gamma({0.0, k}) / (std::sqrt(pi) * specfun::gamma({0.5, k})) *
                       std::pow(Complex(2.0 * z, 0.0), Complex(-0.5, k));
  CHECK(std::abs(specfun::legendre_conical(k, x) - 2.0 * lead.real()) < 10.0 * std::pow(x, -1.5));
}

TEST_CASE("Whittaker W special cases") {
  for (double x : {0.1, 1.0, 7.5})
    CHECK(rel(specfun::whittaker_w(0.0, Order::real(0.5), x), std::exp(-x / 2)) < 1e-10);
  for (double x : {0.1, 1.0, 7.5})
    CHECK(rel(specfun::whittaker_w(-1.0, Order::real(0.5), x), x * std::exp(-x / 2)) < 1e-10);
}

TEST_CASE("Whittaker W against high-precision values") {
  CHECK(rel(specfun::whittaker_w(0.5, Order::imag(1.0), 2.0), 0.13421471508619793506) < 1e-9);
  CHECK(rel(specfun::whittaker_w(-0.3, Order::real(0.25), 0.7), 0.64575551866143148063) < 1e-9);
  CHECK(rel(specfun::whittaker_w(1.0, Order::imag(0.5), 30.0), 9.4281071268280695100e-9) < 1e-9);
  CHECK(rel(specfun::whittaker_w(0.0, Order::imag(2.0), 0.05), 0.0048935597388996920818) < 1e-9);
  CHECK(rel(specfun::whittaker_w(-2.3, Order::real(0.8), 1.5), -0.88021843593813331515) < 1e-9);
}

TEST_CASE("Whittaker W small-x behaviour") {
  const double beta = 1.0, k = 1.0, x = 1e-3;
  // W_{-β,ik}(x) ≈ 2 Re(Γ(-2ik)/Γ(1/2-ik+β) x^{1/2+ik})
  const Complex m = specfun::gamma({0.0, -2.0 * k}) / specfun::gamma({0.5 + beta, -k});
  const double lead = 2.0 * (m * std::pow(Complex(x, 0.0), Complex(0.5, k))).real();
  CHECK(std::abs(specfun::whittaker_w(beta, Order::imag(k), x) - lead) < 50.0 * std::pow(x, 1.5));
}

TEST_CASE("cached Whittaker agrees with one-off evaluation and its own ODE") {
  const WhittakerW w(0.5, Order::imag(0.75));
  for (double x : {0.01, 0.3, 2.0, 12.0}) {
    CHECK(rel(w(x), specfun::whittaker_w(0.5, Order::imag(0.75), x)) < 1e-10);
    const double h = 1e-3 * x;
    const double d2 = (w(x + h) - 2.0 * w(x) + w(x - h)) / (h * h);
    // W'' = (1/4 + β/x - (1/4 + k²)/x²) W for index ik
    const double rhs = (0.25 + 0.5 / x - (0.25 + 0.5625) / (x * x)) * w(x);
    CHECK(std::abs(d2 - rhs) < 1e-5 * (std::abs(rhs) + std::abs(w(x)) / (x * x)));
    CHECK(std::abs(w.derivative(x) - (w(x + h) - w(x - h)) / (2 * h)) <
          1e-5 * (std::abs(w.derivative(x)) + std::abs(w(x)) / x));
  }
}

TEST_CASE("MacDonald function") {
  CHECK(rel(specfun::macdonald_k(Order::imag(2.0), 0.5), 0.016502018949481442656) < 1e-9);
  CHECK(rel(specfun::macdonald_k(Order::real(0.0), 1.0), 0.42102443824070833334) < 1e-10);
  CHECK(rel(specfun::macdonald_k(Order::real(1.0), 3.0), 0.040156431128194184377) < 1e-10);
  CHECK(rel(specfun::macdonald_k(Order::imag(0.5), 10.0), 1.7569107704141347831e-5) < 1e-9);
}

TEST_CASE("MacDonald small-argument structure") {
  // K_{2i}(z) ≈ Re(Γ(2i)(z/2)^{-2i}) as z → 0
  const double z = std::sqrt(8e-4);
  const double lead = (specfun::gamma({0.0, 2.0}) * std::pow(Complex(z / 2, 0.0), Complex(0.0, -2.0))).real();
  CHECK(std::abs(specfun::macdonald_k(Order::imag(2.0), z) - lead) < 10.0 * z * z);
}

TEST_CASE("Laguerre polynomials") {
  for (double x : {0.0, 0.7, 3.0})
    CHECK(specfun::laguerre(1, 1.0, x) == doctest::Approx(2.0 - x).epsilon(1e-14));
  // leading coefficient of L^2_2 is (-1)²/2!
  const double c = (specfun::laguerre(2, 2.0, 10.0) - 2.0 * specfun::laguerre(2, 2.0, 5.0) +
                    specfun::laguerre(2, 2.0, 0.0)) /
                   50.0;
  CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rel(specfun::laguerre(3, 2.5, 1.7), 0.52866666666666666667) < 1e-13);
}

TEST_CASE("spectral maps") {
  const auto s = specfun::spectral_maps(1.0);
  CHECK(s.mu == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(rel(s.lambda, pi / std::cosh(pi)) < 1e-15);
  CHECK(std::abs(s.lambda - 0.271007) < 1e-5);
}
