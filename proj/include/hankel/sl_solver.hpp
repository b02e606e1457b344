#pragma once

#include "hankel/kernels.hpp"
#include "hankel/report.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hankel {

class SLError : public std::runtime_error {
public:
  enum class Kind { domain_too_small, tail_normalization, solver, parameter };
  SLError(Kind k, const std::string &what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

enum class LeftBC {
  /// f̃(t) ~ t^{1/2} at t = 0; the -1/(4t²) term is absorbed by f̃ = t^{1/2} g
  regular_sqrt,
  /// whole-line problem truncated on the left with f̃ = 0
  decaying
};

/// How x and t are related: t = ln x (γ = 0) or t = 2 asinh √(x/2) (γ = 2).
enum class LiouvilleMap { log, asinh };

/// -f̃'' + (q̃(t) + shift) f̃ = μ f̃ on (t_min, t_max).
struct SLProblem {
  /// q̃ for LeftBC::decaying; q̃ + 1/(4t²) for LeftBC::regular_sqrt
  std::function<double(double)> potential;
  double shift = 0.25;
  double t_min = 0.0;
  double t_max = 0.0;
  LeftBC left_bc = LeftBC::decaying;
  LiouvilleMap map = LiouvilleMap::log;
  /// number of grid intervals (decaying) or cells (regular_sqrt)
  int n_points = 4000;

  void validate() const;
  double step() const { return (t_max - t_min) / n_points; }
};

struct SLEigenpair {
  double mu = 0.0;
  LiouvilleMap map = LiouvilleMap::log;
  double h = 0.0;
  std::vector<double> t;
  /// h Σ f̃_i² = 1
  std::vector<double> tilde_psi;

  /// f̃ at t by linear interpolation, zero outside the grid.
  double tilde_at(double t) const;
  /// f(x) = ω'(x)^{1/2} f̃(ω(x)).
  double psi(double x) const;
};

/// Lowest n_eigs eigenpairs, ascending. Throws SLError::domain_too_small when an
/// eigenfunction carries more than 1e-8 of its mass on the outer 10 points of a truncated end.
std::vector<SLEigenpair> solve(const SLProblem &problem, int n_eigs);

/// γ = 0 problem with q̃ = α e^{2t} + β e^t. Requires α > 0 and μ_target < 1/4;
/// t_min satisfies √(1/4 - μ_target)|t_min| = 20; t_max has q̃(t_max) ≥ μ_target + 40 and
/// WKB action ∫√(q̃ + 1/4 - μ_target) ≥ 20 beyond the turning point.
SLProblem line_problem(const LParams &p, double mu_target, int n_points = 4000);

/// γ = 2 problem with q̃ = -1/(4 sinh² t) + α η² + β η, η = cosh t - 1. Requires α > 0
/// or (α = 0, β > 0). t_max as for line_problem.
SLProblem regular_problem(const LParams &p, double mu_target, int n_points = 4000);

struct RichardsonResult {
  std::vector<double> mu_n, mu_2n, mu_4n;
  std::vector<double> order;
  std::vector<double> extrapolated;
};

/// Eigenvalues on n, 2n and 4n grids; order = log2((μ_n - μ_2n)/(μ_2n - μ_4n)).
RichardsonResult richardson(const SLProblem &problem, int n_eigs);

/// max |Δμ| when t_max (and for the whole line also t_min) is doubled at fixed step.
double truncation_sensitivity(const SLProblem &problem, int n_eigs);

/// max |⟨f̃_i, f̃_j⟩ - δ_ij| in the discrete inner product.
double orthonormality_defect(const std::vector<SLEigenpair> &pairs);

/// Relative residual of fitting f̃/t^{1/2} by a + b t² on the first 10 grid points.
double left_bc_residual(const SLEigenpair &pair);

enum class CompactCase { regular_whittaker, regular_macdonald };

struct CompactSpec {
  CompactCase kind = CompactCase::regular_whittaker;
  /// Whittaker index of the kernel; L uses β + 1/2
  double beta = 0.0;

  KernelSpec kernel() const;
  LParams params() const;
  std::string name() const;
};

/// Leading large-x law of ψ_μ with unit coefficient.
EndBehavior semiclassical_tail(const CompactSpec &c, double mu);

/// Regular problem for the compact case with t_max enlarged until the top of the
/// n_eigs lowest eigenvalues is covered.
SLProblem compact_problem(const CompactSpec &c, int n_eigs, int n_points = 4000);
std::vector<SLEigenpair> solve_compact(const CompactSpec &c, int n_eigs, int n_points = 4000);

/// c with ψ_computed = c · ψ_μ, ψ_μ the solution with unit tail coefficient. Obtained by
/// summing the asymptotic series at large x, integrating inward and matching beyond the
/// last turning point.
double tail_coefficient(const CompactSpec &c, const SLEigenpair &pair);

/// λ_μ from the tail-normalized eigenfunction: c_a ∫e^{-y/2}ψ_μ (Whittaker) or
/// c_a ∫ψ_μ (MacDonald), c_a the leading coefficient of the kernel at infinity.
double compact_case_lambda(const CompactSpec &c, const SLEigenpair &pair);

/// Same integral with prefactor 1 (Whittaker) or √(2π) (MacDonald).
double compact_case_lambda_literal(const CompactSpec &c, const SLEigenpair &pair);

/// Least-squares slope of log|f̃| against the log of the WKB solution
/// (q̃ + 1/4 - μ)^{-1/4} exp(-∫(q̃ + 1/4 - μ)^{1/2}) over the resolved tail; 1 when they agree.
double tail_slope(const CompactSpec &c, const SLEigenpair &pair);

struct CompactQuadrature {
  std::vector<double> x, w;
  std::vector<std::vector<double>> psi;
  std::vector<std::vector<double>> a_psi;
};

/// Samples each ψ on Gauss–Legendre nodes in t and applies A by the same rule. With
/// `refined` (the same pairs on a grid of half the step) the samples are Richardson
/// combinations (4ψ_{h/2} - ψ_h)/3.
CompactQuadrature compact_quadrature(const CompactSpec &c, const std::vector<SLEigenpair> &pairs,
                                     const std::vector<SLEigenpair> *refined = nullptr);

/// ⟨Aψ,ψ⟩/⟨ψ,ψ⟩ for pair i.
double rayleigh_quotient(const CompactQuadrature &q, std::size_t i);
/// ‖Aψ - λψ‖ / (|λ| ‖ψ‖) for pair i.
double eigen_residual(const CompactQuadrature &q, std::size_t i, double lambda);

} // namespace hankel
