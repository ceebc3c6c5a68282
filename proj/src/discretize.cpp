#include "oblong/discretize.hpp"

#include <cmath>

#include "oblong/errors.hpp"

namespace oblong {

ModeProblem ModeProblem::with_defaults(const Metric& metric, int k, double alpha, int n) {
  if (k < 0) throw InvalidArgument("mode index k must be nonnegative");
  ModeProblem p;
  p.k = k;
  p.alpha = alpha;
  p.T = metric.default_truncation();
  p.n = n;
  p.bc = (k == 0) ? Boundary::neumann : Boundary::dirichlet;
  return p;
}

ModeCoefficients separate_mode(const Metric& metric, int k, double alpha) {
  if (k < 0) throw InvalidArgument("mode index k must be nonnegative");
  const double k2 = static_cast<double>(k) * k;
  ModeCoefficients coeffs;
  coeffs.q = [metric, k2, alpha](double t) { return k2 + alpha * metric.d2psi(t); };
  coeffs.w = [metric](double t) { return metric.weight(t); };
  return coeffs;
}

TridiagonalPencil build_pencil(const Metric& metric, const ModeProblem& problem) {
  if (problem.n < 3) throw InvalidArgument("build_pencil: need n >= 3 interior points");
  if (!(problem.T > 0.0)) throw InvalidArgument("build_pencil: truncation T must be positive");
  if (problem.k < 0) throw InvalidArgument("build_pencil: mode index k must be nonnegative");

  const auto coeffs = separate_mode(metric, problem.k, problem.alpha);
  const int n = problem.n;
  const double h = 2.0 * problem.T / (n + 1);
  const double inv_h2 = 1.0 / (h * h);

  TridiagonalPencil pencil;
  pencil.diag.resize(n);
  pencil.offdiag.assign(n - 1, -inv_h2);
  pencil.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = -problem.T + (i + 1) * h;
    pencil.diag[i] = 2.0 * inv_h2 + coeffs.q(t);
    pencil.weight[i] = coeffs.w(t);
    if (!(pencil.weight[i] > 0.0))
      throw NumericsError("build_pencil: nonpositive weight entry (grid exceeds the metric's support?)");
  }
  if (problem.bc == Boundary::neumann) {
    // Mirror ghost point: reflecting f across each end turns 2/h^2 into 1/h^2.
    pencil.diag.front() -= inv_h2;
    pencil.diag.back() -= inv_h2;
  }

  pencil.meta = {problem.k, problem.alpha, problem.T, n, problem.bc, metric.describe()};
  return pencil;
}

SymmetricTridiagonal reduce_to_standard(const TridiagonalPencil& pencil) {
  const size_t n = pencil.diag.size();
  for (double w : pencil.weight)
    if (!(w > 0.0)) throw NumericsError("reduce_to_standard: nonpositive weight entry");

  SymmetricTridiagonal out;
  out.diag.resize(n);
  out.offdiag.resize(n > 0 ? n - 1 : 0);
  for (size_t i = 0; i < n; ++i) out.diag[i] = pencil.diag[i] / pencil.weight[i];
  for (size_t i = 0; i + 1 < n; ++i)
    out.offdiag[i] = pencil.offdiag[i] / std::sqrt(pencil.weight[i] * pencil.weight[i + 1]);
  return out;
}

}  // namespace oblong
