#pragma once

#include "hankel/kernels.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hankel::nystrom {

enum class NodeMap {
  /// x = e^s on a uniform s-grid of step 1/2 with trapezoid weights
  exp_map,
  /// Gauss–Legendre on [0, X_max]
  algebraic_map
};

/// exp_map for kernels singular at either end, algebraic_map otherwise.
NodeMap default_map(const KernelSpec &spec);

/// M_ij = √w_i a(x_i + x_j) √w_j.
struct HankelMatrix {
  std::vector<double> nodes;
  std::vector<double> weights;
  Eigen::MatrixXd entries;
};

/// Smallest X with x·|a(x)| < 1e-12 beyond it, from the kernel's large-x law.
/// Throws std::invalid_argument for kernels without exponential decay.
double truncation_length(const KernelSpec &spec);

HankelMatrix build(const KernelSpec &spec, int n_nodes, NodeMap map);
HankelMatrix build(const KernelSpec &spec, int n_nodes);

struct Eigensystem {
  /// descending by |λ|
  std::vector<double> values;
  /// column j belongs to values[j]
  Eigen::MatrixXd vectors;
};

Eigensystem eigensystem(const HankelMatrix &m);
std::vector<double> eigenvalues(const HankelMatrix &m);

/// Number of eigenvalues with |λ| > threshold.
int rank_check(const HankelMatrix &m, double threshold);

/// Eigenvector j mapped back to function samples v_i / √w_i at the nodes.
std::vector<double> eigenfunction_samples(const HankelMatrix &m, const Eigensystem &es, int j);

} // namespace hankel::nystrom
