#pragma once

#include "hankel/kernels.hpp"
#include "hankel/quad.hpp"
#include "hankel/report.hpp"
#include "hankel/specfun.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hankel {

enum class FamilyCase { mehler, carleman, whittaker, macdonald };

/// Eigenpair of the point spectrum: ψ_n(x) = e^{-x/2} x^{p-1/2} L^{2p}_{n-1}(x).
struct DiscretePair {
  int n = 0;
  double p = 0.0;
  double mu = 0.0;
  double lambda = 0.0;

  double psi(double x) const;
  /// ‖ψ_n‖² = Γ(2p+n) / ((n-1)! 2p)
  double norm2() const;
};

/// Continuum eigenfunctions of one exactly solvable case.
class EigenFamily {
public:
  static EigenFamily mehler();
  static EigenFamily carleman();
  static EigenFamily whittaker(double beta);
  static EigenFamily macdonald();
  static EigenFamily from_name(const std::string &id, double beta = 0.0);

  FamilyCase kind() const noexcept { return kind_; }
  const std::string &name() const noexcept { return kernel_.name(); }
  const KernelSpec &kernel() const noexcept { return kernel_; }
  double beta() const noexcept { return beta_; }
  /// 2 for the Carleman case (cos and sin of k ln x), 1 otherwise.
  int branches() const noexcept { return kind_ == FamilyCase::carleman ? 2 : 1; }

  double lambda(double k) const { return specfun::spectral_maps(k).lambda; }
  double mu(double k) const { return specfun::spectral_maps(k).mu; }

  /// Closed-form normalization n(k) multiplying the bare solution.
  double normalization(double k) const;
  /// Bare solution u_k(x) ~ 2 Re(m(k) x^{-1/2+ik}) at the singular end.
  Complex m(double k) const;

  /// Normalized ψ_k as a reusable callable; cheap to evaluate repeatedly.
  std::function<double(double)> eigenfunction(double k, int branch = 0) const;
  double psi(double k, double x, int branch = 0) const { return eigenfunction(k, branch)(x); }

  const std::vector<DiscretePair> &discrete() const noexcept { return discrete_; }

private:
  EigenFamily(FamilyCase c, KernelSpec k, double beta);

  FamilyCase kind_;
  KernelSpec kernel_;
  double beta_ = 0.0;
  std::vector<DiscretePair> discrete_;
};

/// Point spectrum for β < -1/2: all n >= 1 with n < |β| + 1/2.
/// Throws SpecFunError::parameter where sin πβ = 0.
std::vector<DiscretePair> discrete_spectrum(double beta);

/// The l nonzero eigenpairs of the rank-l kernel: λ_n = (-1)^{n-l}, p = l + 1/2 - n.
std::vector<DiscretePair> finite_rank_spectrum(int l);

struct IdentityOpts {
  QuadOpts quad;
  double tolerance = 1e-6;
  /// filled with (x, Aψ, λψ) samples when non-null
  std::vector<PlotRow> *plot = nullptr;
};

/// Compares (2π)^{-1/2}|m(k)|^{-1}, computed from complex Γ, with n(k).
VerificationReport normalization_identity(const EigenFamily &fam, double k, double tolerance = 1e-10);

/// max over x of |Aψ_k - λψ_k| / (|λψ_k(x)| + λ max_grid|ψ_k|).
VerificationReport verify_continuum_identity(const EigenFamily &fam, double k,
                                             const std::vector<double> &x_grid,
                                             const IdentityOpts &opts = {});

/// ∫₀^∞ (1+t)^{-1} t^{-1/2} cos(k ln t) dt against π/cosh πk.
VerificationReport verify_carleman_closed_form(double k, double tolerance = 1e-10);

/// Recovers λ_n from ∫a(x+y)ψ_n(y)dy = λ_n ψ_n(x) on x_grid and compares with
/// (-1)^n π / sin πβ (whittaker kernel) or (-1)^{n-l} (finite rank kernel).
VerificationReport verify_discrete_eigenvalue(const KernelSpec &kernel, const DiscretePair &pair,
                                              const std::vector<double> &x_grid,
                                              const IdentityOpts &opts = {});

/// max |⟨ψ_m, ψ_n⟩| / (‖ψ_m‖‖ψ_n‖) over m ≠ n.
VerificationReport discrete_orthogonality(const std::string &case_id,
                                          const std::vector<DiscretePair> &pairs,
                                          double tolerance = 1e-8);

/// max |⟨ψ_n, ψ_k⟩| / ∫|ψ_n ψ_k| over pairs and k.
VerificationReport discrete_continuum_orthogonality(const EigenFamily &fam,
                                                    const std::vector<double> &k_grid,
                                                    double tolerance = 1e-4);

/// A(x^{-1}W_{l,ik}) for the rank-l kernel, relative to ∫|a(x+y) x^{-1}W_{l,ik}(y)| dy.
/// Passing a different kernel gives the negative control.
VerificationReport kernel_subspace_check(int l, double k, const std::vector<double> &x_grid,
                                         double tolerance = 1e-8);
VerificationReport kernel_subspace_check(const KernelSpec &kernel, int l, double k,
                                         const std::vector<double> &x_grid,
                                         double tolerance = 1e-8);

/// (Uf)(k) = ∫ψ_k f dx on k_grid.
std::vector<double> forward_transform(const EigenFamily &fam, const Integrand &f,
                                      const std::vector<double> &k_grid, int branch = 0,
                                      const QuadOpts &opts = {});

struct TestFunction {
  std::string name;
  Integrand f;
};

/// x² e^{-x} and x³ e^{-x}.
std::vector<TestFunction> default_test_functions();

/// max_k |U(Af)(k) - λ(k)(Uf)(k)| / max_k |λ(k)(Uf)(k)|.
VerificationReport verify_diagonalization(const EigenFamily &fam, const TestFunction &tf,
                                          const std::vector<double> &k_grid,
                                          double tolerance = 1e-3);

/// |∫|Uf|²dk + Σ⟨ψ_n,f⟩²/‖ψ_n‖² - ‖f‖²| / ‖f‖², trapezoid with n_k points on
/// [0, k_max], k_max where λ(k) = 1e-8 π.
VerificationReport verify_parseval(const EigenFamily &fam, const TestFunction &tf,
                                   int n_k = 400, double tolerance = 1e-3);

/// k at which π/cosh πk falls to cutoff·π.
double parseval_k_max(double cutoff = 1e-8);

} // namespace hankel
