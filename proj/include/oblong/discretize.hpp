#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oblong/metric.hpp"

namespace oblong {

enum class Boundary { dirichlet, neumann };

/// One Fourier sector of the eigenproblem for -Laplace + alpha K: after the
/// separation u = f(t) {cos k theta, sin k theta} the problem reduces to
///   -f'' + (k^2 + alpha psi'') f = lambda (c e^{-2 psi}) f   on [-T, T].
struct ModeProblem {
  int k = 0;
  double alpha = 0.0;
  double T = 0.0;  // truncation half-width
  int n = 0;       // interior grid points, uniform step h = 2T/(n+1)
  Boundary bc = Boundary::dirichlet;

  /// Defaults: Neumann for k = 0 (eigenfunctions tend to constants at the
  /// poles), Dirichlet for k >= 1 (decay like e^{-k|t|}); T from
  /// Metric::default_truncation().
  static ModeProblem with_defaults(const Metric& metric, int k, double alpha, int n = 4000);
};

/// Symmetric tridiagonal generalized eigenproblem A f = lambda W f with
/// positive diagonal mass W.
struct TridiagonalPencil {
  std::vector<double> diag;     // n
  std::vector<double> offdiag;  // n - 1
  std::vector<double> weight;   // n, strictly positive

  struct Meta {
    int k = 0;
    double alpha = 0.0;
    double T = 0.0;
    int n = 0;
    Boundary bc = Boundary::dirichlet;
    std::string metric;
  } meta;

  double grid_step() const { return 2.0 * meta.T / (meta.n + 1); }
  double grid_point(int i) const { return -meta.T + (i + 1) * grid_step(); }
};

/// Plain symmetric tridiagonal matrix (standard eigenproblem).
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

/// Potential q(t) = k^2 + alpha psi''(t) and weight w(t) = c e^{-2 psi(t)}
/// of the separated mode-k problem. The metric scale multiplies w only:
/// both the Laplacian and K carry 1/c.
struct ModeCoefficients {
  std::function<double(double)> q;
  std::function<double(double)> w;
};
ModeCoefficients separate_mode(const Metric& metric, int k, double alpha);

/// Second-order central differences on the uniform interior grid:
/// diag[i] = 2/h^2 + q(t_i), offdiag[i] = -1/h^2. Neumann ends use a mirror
/// ghost point, so the boundary rows carry 1/h^2 + q. Pencil eigenvalues
/// approximate the continuum mode-k eigenvalues with O(h^2) error.
TridiagonalPencil build_pencil(const Metric& metric, const ModeProblem& problem);

/// Congruence by W^{-1/2}: diag'[i] = diag[i]/w[i],
/// offdiag'[i] = offdiag[i]/sqrt(w[i] w[i+1]). Spectrum is preserved exactly.
/// Throws on a nonpositive weight entry.
SymmetricTridiagonal reduce_to_standard(const TridiagonalPencil& pencil);

}  // namespace oblong
