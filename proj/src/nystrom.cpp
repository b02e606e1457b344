#include "hankel/nystrom.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hankel::nystrom {
namespace {

constexpr double exp_step = 0.5;

// Composite 20-point Gauss–Legendre on [0, X] with n nodes in total.
void gauss_nodes(double X, int n, std::vector<double> &x, std::vector<double> &w) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto &xa = GL::abscissa();
  const auto &wa = GL::weights();
  if (n % 20 != 0)
    throw std::invalid_argument("nystrom: algebraic_map needs a multiple of 20 nodes");
  const int panels = n / 20;
  const double pw = X / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * pw;
    for (std::size_t i = 0; i < xa.size(); ++i)
      for (double sgn : {-1.0, 1.0}) {
        x.push_back(mid + sgn * 0.5 * pw * xa[i]);
        w.push_back(0.5 * pw * wa[i]);
      }
  }
}

} // namespace

NodeMap default_map(const KernelSpec &spec) {
  return spec.singular_at_zero() || spec.singular_at_infinity() ? NodeMap::exp_map
                                                                : NodeMap::algebraic_map;
}

double truncation_length(const KernelSpec &spec) {
  const EndBehavior inf = kernel_asymptotics(spec).at_infinity;
  if (!(inf.rate > 0.0))
    throw std::invalid_argument("truncation_length: kernel " + spec.name() +
                                " does not decay exponentially");
  double X = 1.0;
  while (std::abs(inf(X)) * X >= 1e-12)
    X *= 1.05;
  return X;
}

HankelMatrix build(const KernelSpec &spec, int n_nodes, NodeMap map) {
  if (n_nodes < 2)
    throw std::invalid_argument("nystrom::build: need at least two nodes");
  HankelMatrix m;
  if (map == NodeMap::algebraic_map) {
    gauss_nodes(truncation_length(spec), n_nodes, m.nodes, m.weights);
  } else {
    const double span = (n_nodes - 1) * exp_step;
    double s_min;
    if (spec.singular_at_zero() && spec.singular_at_infinity())
      s_min = -0.5 * span;
    else if (spec.singular_at_zero())
      s_min = std::log(truncation_length(spec)) - span;
    else
      s_min = -8.0;
    for (int i = 0; i < n_nodes; ++i) {
      const double x = std::exp(s_min + i * exp_step);
      m.nodes.push_back(x);
      m.weights.push_back(exp_step * x);
    }
  }
  const int n = static_cast<int>(m.nodes.size());
  m.entries.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v =
          std::sqrt(m.weights[i] * m.weights[j]) * spec(m.nodes[i] + m.nodes[j]);
      m.entries(i, j) = v;
      m.entries(j, i) = v;
    }
  return m;
}

HankelMatrix build(const KernelSpec &spec, int n_nodes) {
  return build(spec, n_nodes, default_map(spec));
}

Eigensystem eigensystem(const HankelMatrix &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("nystrom: eigensolver did not converge");
  const Eigen::Index n = m.entries.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto &ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(ev(a)) > std::abs(ev(b));
  });
  Eigensystem out;
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values.push_back(ev(order[static_cast<std::size_t>(j)]));
    out.vectors.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<double> eigenvalues(const HankelMatrix &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("nystrom: eigensolver did not converge");
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  return v;
}

int rank_check(const HankelMatrix &m, double threshold) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("rank_check: threshold must be positive");
  const auto v = eigenvalues(m);
  return static_cast<int>(
      std::count_if(v.begin(), v.end(), [&](double x) { return std::abs(x) > threshold; }));
}

std::vector<double> eigenfunction_samples(const HankelMatrix &m, const Eigensystem &es, int j) {
  std::vector<double> f(m.nodes.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = es.vectors(static_cast<Eigen::Index>(i), j) / std::sqrt(m.weights[i]);
  return f;
}

} // namespace hankel::nystrom
