#pragma once

#include <functional>
#include <limits>
#include <string>

#include "oblong/metric.hpp"

namespace oblong {

/// Piecewise-C^1 test function u(t) with an analytically supplied derivative
/// (never differentiated numerically; cutoff functions have kinks at the
/// support edges). Outside [support_a, support_b] the function is identically
/// zero; an infinite support means "decays fast enough to truncate at the
/// metric's default window".
struct TestFunction {
  std::function<double(double)> u;
  std::function<double(double)> du;
  double support_a = -std::numeric_limits<double>::infinity();
  double support_b = std::numeric_limits<double>::infinity();
  std::string description;
};

/// The odd cutoff sine: u(t) = sin(pi t / L) for |t| <= L, 0 outside.
/// On an even metric it is L^2-orthogonal to the even ground state, so its
/// quotient is an upper bound for lambda_1.
TestFunction cutoff_sine(double L);

/// u(t) = tanh t: the first nontrivial eigenfunction of the round sphere in
/// cylinder coordinates (quotient exactly 2 + alpha there), and a generic odd
/// test function for other even metrics.
TestFunction tanh_profile();

/// The three quadratic-form integrals of -Delta + alpha K at a
/// theta-independent test function, reduced to the t-line:
///   dirichlet_energy = Int |grad u|^2 dmu = 2 pi Int (u')^2 dt
///   curvature_term   = Int K u^2 dmu     = 2 pi Int psi'' u^2 dt
///   mass_term        = Int u^2 dmu       = 2 pi Int weight u^2 dt
/// The energy is conformally invariant (weight cancels); the curvature term
/// is scale-free (K dmu = psi'' dt dtheta); the mass term scales linearly in
/// the metric scale, so the quotient scales as 1/scale.
struct RayleighReport {
  double dirichlet_energy = 0.0;
  double curvature_term = 0.0;
  double mass_term = 0.0;
  double quotient = 0.0;  // (dirichlet_energy + alpha * curvature_term) / mass_term
  double alpha = 0.0;
  double L = std::numeric_limits<double>::quiet_NaN();  // oblong half-length when applicable
  std::string metric;
  std::string test_function;
};

/// Evaluates the report by adaptive quadrature (relative error rel_tol per
/// integral; support edges and the metric's transition points are quadrature
/// splits). Throws NumericsError on quadrature failure or vanishing mass.
RayleighReport rayleigh_quotient(const Metric& metric, double alpha, const TestFunction& u,
                                 double rel_tol = 1e-10);

/// Rayleigh upper bound for lambda_1 on an even metric: the quotient of the
/// canonical odd test function (the cutoff sine at the half-length for the
/// oblong family, tanh t otherwise). Rigorous up to quadrature error.
/// Throws InvalidArgument for metrics without even symmetry (the
/// orthogonality argument needs the ground state to be even).
RayleighReport upper_bound_report(const Metric& metric, double alpha, double rel_tol = 1e-10);

/// Convenience: upper_bound_report(...).quotient.
double upper_bound_lambda1(const Metric& metric, double alpha, double rel_tol = 1e-10);

}  // namespace oblong
