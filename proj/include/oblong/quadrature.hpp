#pragma once

#include <functional>
#include <vector>

namespace oblong {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the cached n-point Gauss-Legendre rule (nodes via Newton iteration
/// on the Legendre polynomial). Thread-safe.
const GaussRule& gauss_legendre(int order);

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_floor = 0.0;        // per-integral absolute error floor
  double max_panel_width = 1.0;  // initial composite panel size
  int order = 16;
  int max_doublings = 12;
};

/// Composite Gauss-Legendre on [a, b]: each smooth segment is covered by
/// panels of at most max_panel_width, and panel counts are doubled until the
/// change between refinement levels meets the tolerance. `splits` lists
/// interior points where the integrand loses smoothness (they become segment
/// boundaries; points outside (a, b) are ignored).
///
/// Throws NumericsError if the tolerance is not met within max_doublings.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {},
                 std::vector<double> splits = {});

}  // namespace oblong
