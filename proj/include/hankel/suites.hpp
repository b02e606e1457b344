#pragma once

#include "hankel/quad.hpp"
#include "hankel/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hankel {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double ode_analytic = 1e-6;
  double ode_numeric = 1e-4;
  double commutator = 1e-6;
  /// the negative control must exceed this residual
  double commutator_control = 1e-2;
  double eigen_elementary = 1e-8;
  double eigen_special = 1e-6;
  double carleman_closed_form = 1e-10;
  double normalization = 1e-10;
  double discrete_eigenvalue = 1e-8;
  double orthogonality = 1e-8;
  double discrete_continuum = 1e-4;
  double finite_rank = 1e-8;
  double finite_rank_vectors = 1e-4;
  double subspace = 1e-8;
  double sl_eigenvalue = 1e-6;
  double sl_order = 0.2;
  double sl_orthonormality = 1e-8;
  double sl_truncation = 1e-8;
  double compact = 1e-3;
  double tail_slope = 0.02;
  double left_bc = 1e-3;
  double diagonalization = 1e-3;
  double parseval = 1e-3;
  double containment = 1e-3;
  double outlier = 1e-2;
};

struct SolverOpts {
  int n_points = 4000;
  int compact_eigs = 5;
  std::vector<int> nystrom_nodes = {100, 200, 400};
  int finite_rank_nodes = 200;
  int parseval_points = 400;
};

struct Config {
  Tolerances tol;
  std::vector<double> k_grid = {0.25, 0.5, 1.0, 2.0};
  /// 0 is used only for kernels regular at the origin
  std::vector<double> x_grid = {0.0, 0.1, 0.5, 1.0, 5.0, 20.0};
  std::vector<double> normalization_k = {0.1, 0.5, 1.0, 2.0};
  std::vector<double> carleman_k = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> subspace_k = {0.5, 1.0};
  std::vector<double> whittaker_betas = {0.0, 0.5, 1.0};
  std::vector<double> discrete_betas = {-1.5, -2.3};
  std::vector<double> compact_betas = {0.0, 0.5, 1.0};
  std::vector<int> ranks = {1, 2, 3};
  QuadOpts quad = default_quad();
  SolverOpts solver;

  std::string out = "-";
  std::string format = "json";
  std::string plot_data;
  /// keep only cases whose id starts with this prefix
  std::string case_filter;
  /// record wall time in runtime_ms; off by default so output is reproducible
  bool timing = false;

  void validate() const;
  static QuadOpts default_quad();
};

/// Overlays the keys present in a JSON document on cfg. Unknown keys are errors.
void merge_config_json(Config &cfg, const std::string &json_text);
/// Reads and merges a JSON file.
void merge_config_file(Config &cfg, const std::string &path);
/// Defaults, then the file named by HANKEL_CONFIG when set.
Config load_config();

enum class Suite { ode, commutator, eigen, discrete, finite_rank, compact, transform, all };

Suite parse_suite(const std::string &name);
std::string suite_name(Suite s);

/// Runs one suite. Numeric failures become failed reports carrying a diagnostic.
/// Continuum identity samples are appended to plot when it is non-null.
std::vector<VerificationReport> run_suite(Suite suite, const Config &cfg,
                                          std::vector<PlotRow> *plot = nullptr);

/// Log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

} // namespace hankel
