#include "hankel/nystrom.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hankel;
using std::numbers::pi;

TEST_CASE("finite rank kernels have exact rank") {
  CHECK(nystrom::rank_check(nystrom::build(KernelSpec::finite_rank(1), 100), 1e-6) == 1);
  for (int l : {1, 2, 3})
    CHECK(nystrom::rank_check(nystrom::build(KernelSpec::finite_rank(l), 200), 1e-6) == l);
}

TEST_CASE("finite rank eigenvalues are +-1") {
  auto v = nystrom::eigenvalues(nystrom::build(KernelSpec::finite_rank(2), 200));
  std::vector<double> top(v.begin(), v.begin() + 2);
  std::sort(top.begin(), top.end());
  CHECK(std::abs(top[0] + 1.0) < 1e-8);
  CHECK(std::abs(top[1] - 1.0) < 1e-8);
  for (std::size_t i = 2; i < v.size(); ++i)
    CHECK(std::abs(v[i]) < 1e-8);

  v = nystrom::eigenvalues(nystrom::build(KernelSpec::finite_rank(3), 200));
  top.assign(v.begin(), v.begin() + 3);
  std::sort(top.begin(), top.end());
  CHECK(std::abs(top[0] + 1.0) < 1e-8);
  CHECK(std::abs(top[1] - 1.0) < 1e-8);
  CHECK(std::abs(top[2] - 1.0) < 1e-8);
}

TEST_CASE("node doubling leaves the finite rank spectrum fixed") {
  const auto a = nystrom::eigenvalues(nystrom::build(KernelSpec::finite_rank(2), 100));
  const auto b = nystrom::eigenvalues(nystrom::build(KernelSpec::finite_rank(2), 200));
  CHECK(std::abs(*std::max_element(a.begin(), a.end()) - 1.0) < 1e-10);
  CHECK(std::abs(*std::max_element(b.begin(), b.end()) - 1.0) < 1e-10);
}

TEST_CASE("rank one eigenvector samples the exponential") {
  const auto m = nystrom::build(KernelSpec::finite_rank(1), 100);
  const auto es = nystrom::eigensystem(m);
  const auto f = nystrom::eigenfunction_samples(m, es, 0);
  const double s = f[0] / std::exp(-m.nodes[0] / 2);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(f[i] - s * std::exp(-m.nodes[i] / 2)) < 1e-8 * std::abs(s));
}

TEST_CASE("Mehler spectrum lies in [0, pi]") {
  const auto v = nystrom::eigenvalues(nystrom::build(KernelSpec::mehler(), 400));
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  CHECK(*lo >= -1e-6);
  CHECK(*hi <= pi + 1e-6);
}

TEST_CASE("bound state of whittaker(-1.5) appears near -pi") {
  const auto v = nystrom::eigenvalues(nystrom::build(KernelSpec::whittaker(-1.5), 400));
  CHECK(std::count_if(v.begin(), v.end(), [](double x) { return x < -pi + 1e-2; }) == 1);
}

TEST_CASE("Carleman count near pi grows with the grid") {
  int prev = -1;
  for (int n : {100, 200, 400}) {
    const int c = nystrom::rank_check(nystrom::build(KernelSpec::carleman(), n), pi - 0.1);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("node maps and truncation") {
  CHECK(nystrom::default_map(KernelSpec::carleman()) == nystrom::NodeMap::exp_map);
  CHECK(nystrom::default_map(KernelSpec::finite_rank(2)) == nystrom::NodeMap::algebraic_map);
  CHECK_THROWS_AS(nystrom::truncation_length(KernelSpec::carleman()), std::invalid_argument);
  const double X = nystrom::truncation_length(KernelSpec::finite_rank(1));
  CHECK(X * std::exp(-X / 2) < 1e-12);
  CHECK_THROWS(nystrom::build(KernelSpec::finite_rank(1), 30, nystrom::NodeMap::algebraic_map));
}
