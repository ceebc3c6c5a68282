#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oblong/discretize.hpp"
#include "oblong/metric.hpp"

namespace oblong {

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// lambda, via the LDL^T pivot-sign recurrence. Tiny pivots are replaced by
/// -pivmin (LAPACK-style), which keeps the count well defined.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag,
                double lambda);

/// The `count` smallest eigenvalues, each bracketed by bisection on
/// sturm_count until the bracket width is <= abs_tol. Deterministic.
std::vector<double> smallest_eigenvalues(const std::vector<double>& diag,
                                         const std::vector<double>& offdiag, int count,
                                         double abs_tol);

/// Inertia of the tridiagonal pencil A - lambda W from its LDL^T
/// factorization: the count of eigenvalues of A f = mu W f with mu < lambda.
int pencil_inertia(const TridiagonalPencil& pencil, double lambda);

enum class Parity { even, odd, none };

struct SpectrumEntry {
  double value = 0.0;
  int k = 0;             // Fourier mode
  int multiplicity = 1;  // 1 for k = 0, 2 for k >= 1 (cos and sin sectors)
  int sector_index = 0;  // position within the mode-k spectrum
  Parity parity = Parity::none;
};

struct SolverOptions {
  int n = 4000;             // interior grid points per mode
  double T = 0.0;           // truncation half-width; 0 means family default
  double abs_tol = 1e-8;    // eigenvalue bisection tolerance
  std::optional<Boundary> bc_override;  // applied to every mode when set
  int k_max = -1;           // explicit mode cap; required when alpha < 0
};

struct SpectrumNumerics {
  double T = 0.0;
  int n = 0;
  double abs_tol = 0.0;
  int mode_cutoff = 0;          // first mode NOT solved
  std::string bc_k0 = "neumann";
  std::string bc_k_positive = "dirichlet";
};

/// Global spectrum of -Laplace + alpha K merged across Fourier modes.
/// `entries` is sorted ascending with a fixed tie-break (value, then k, then
/// sector index); each k >= 1 entry stands for a cos/sin pair and is listed
/// once per copy, so entries.size() == number of eigenvalues counted with
/// multiplicity. lambda1 is the second entry of that expanded list.
struct SpectrumResult {
  std::vector<SpectrumEntry> entries;
  double lambda0 = 0.0;
  double lambda1 = 0.0;  // NaN when only one value was requested
  SpectrumNumerics numerics;
  std::vector<std::string> flags;

  bool flagged() const { return !flags.empty(); }
};

/// Solves mode problems k = 0, 1, 2, ... and merges the num_values smallest
/// eigenvalues. For alpha >= 0 the mode loop stops at the first k whose lower
/// bound k^2 min_t(e^{2 psi}/c) + alpha min_t K exceeds the current
/// num_values-th candidate; for alpha < 0 that bound is invalid and an
/// explicit opts.k_max is required.
SpectrumResult global_spectrum(const Metric& metric, double alpha, int num_values,
                               const SolverOptions& opts = {});

/// lambda_1^alpha of the area-normalized oblong metric, computed by exact
/// rescaling: lambda_1^alpha(unit scale) * area_closed_form(L) / (4 pi).
/// Agrees with running global_spectrum on the normalized metric directly.
double lambda1_normalized(double L, double alpha, const SolverOptions& opts = {});

}  // namespace oblong
