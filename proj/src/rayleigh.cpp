#include "oblong/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oblong/errors.hpp"
#include "oblong/quadrature.hpp"

namespace oblong {

TestFunction cutoff_sine(double L) {
  if (!(L > 0.0)) throw InvalidArgument("cutoff_sine: L must be positive");
  TestFunction tf;
  const double omega = M_PI / L;
  tf.u = [L, omega](double t) { return std::abs(t) <= L ? std::sin(omega * t) : 0.0; };
  tf.du = [L, omega](double t) { return std::abs(t) <= L ? omega * std::cos(omega * t) : 0.0; };
  tf.support_a = -L;
  tf.support_b = L;
  std::ostringstream os;
  os << "cutoff_sine(L=" << L << ")";
  tf.description = os.str();
  return tf;
}

TestFunction tanh_profile() {
  TestFunction tf;
  tf.u = [](double t) { return std::tanh(t); };
  tf.du = [](double t) {
    const double c = std::cosh(t);
    const double s = 1.0 / c;
    return s * s;
  };
  tf.description = "tanh";
  return tf;
}

RayleighReport rayleigh_quotient(const Metric& metric, double alpha, const TestFunction& tf,
                                 double rel_tol) {
  if (!tf.u || !tf.du) throw InvalidArgument("rayleigh_quotient: test function callables unset");
  if (!(rel_tol > 0.0)) throw InvalidArgument("rayleigh_quotient: rel_tol must be positive");
  if (!(tf.support_a < tf.support_b))
    throw InvalidArgument("rayleigh_quotient: empty test function support");

  // Integration window: the support, truncated to the metric's default window
  // when the support is unbounded (the built-in weights decay like e^{-2|t|},
  // so the truncation error is far below rel_tol there).
  const double T = metric.default_truncation();
  const double a = std::max(tf.support_a, -T);
  const double b = std::min(tf.support_b, T);
  if (!(a < b)) throw InvalidArgument("rayleigh_quotient: support does not meet the window");

  std::vector<double> splits = {0.0};
  if (metric.family() == Family::oblong) {
    const double L = metric.half_length();
    splits.push_back(-L);
    splits.push_back(L);
  }

  QuadratureOptions opts;
  opts.rel_tol = rel_tol;

  RayleighReport report;
  report.alpha = alpha;
  report.metric = metric.describe();
  report.test_function = tf.description;
  if (metric.family() == Family::oblong) report.L = metric.half_length();

  const double two_pi = 2.0 * M_PI;
  report.dirichlet_energy = two_pi * integrate(
                                         [&tf](double t) {
                                           const double d = tf.du(t);
                                           return d * d;
                                         },
                                         a, b, opts, splits);
  report.curvature_term = two_pi * integrate(
                                       [&](double t) {
                                         const double v = tf.u(t);
                                         return metric.d2psi(t) * v * v;
                                       },
                                       a, b, opts, splits);
  report.mass_term = two_pi * integrate(
                                  [&](double t) {
                                    const double v = tf.u(t);
                                    return metric.weight(t) * v * v;
                                  },
                                  a, b, opts, splits);
  if (!(report.mass_term > 0.0))
    throw NumericsError("rayleigh_quotient: nonpositive mass term (degenerate test function)");
  report.quotient = (report.dirichlet_energy + alpha * report.curvature_term) / report.mass_term;
  return report;
}

RayleighReport upper_bound_report(const Metric& metric, double alpha, double rel_tol) {
  if (!metric.even())
    throw InvalidArgument(
        "upper_bound_lambda1: metric must be even in t (odd test functions are "
        "orthogonal to the ground state only then)");
  const TestFunction tf = metric.family() == Family::oblong
                              ? cutoff_sine(metric.half_length())
                              : tanh_profile();
  return rayleigh_quotient(metric, alpha, tf, rel_tol);
}

double upper_bound_lambda1(const Metric& metric, double alpha, double rel_tol) {
  return upper_bound_report(metric, alpha, rel_tol).quotient;
}

}  // namespace oblong
