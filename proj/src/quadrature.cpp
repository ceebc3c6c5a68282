#include "oblong/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "oblong/errors.hpp"

namespace oblong {

namespace {

GaussRule compute_rule(int order) {
  // Roots of P_n by Newton iteration from the Chebyshev-like initial guess;
  // weights w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
      double p0 = 1.0, p1 = x;
      for (int j = 1; j < order; ++j) {
        const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 2 || order > 128) throw InvalidArgument("gauss_legendre: order out of range");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

namespace {

double panel_sum(const std::function<double(double)>& f, double a, double b,
                 int panels, const GaussRule& rule) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts, std::vector<double> splits) {
  if (!f) throw InvalidArgument("integrate: integrand must be callable");
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw InvalidArgument("integrate: requires a <= b");
  }
  if (!(opts.rel_tol > 0.0) || opts.rel_tol > 1e-2)
    throw InvalidArgument("integrate: rel_tol must lie in (0, 1e-2]");

  const GaussRule& rule = gauss_legendre(opts.order);

  std::vector<double> edges{a, b};
  for (double s : splits)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const size_t nseg = edges.size() - 1;

  // Coarse pass fixes the magnitude used for relative-tolerance scaling.
  std::vector<int> base(nseg);
  std::vector<double> coarse(nseg);
  double coarse_total = 0.0;
  for (size_t s = 0; s < nseg; ++s) {
    const double w = edges[s + 1] - edges[s];
    base[s] = std::max(1, static_cast<int>(std::ceil(w / opts.max_panel_width)));
    coarse[s] = panel_sum(f, edges[s], edges[s + 1], base[s], rule);
    coarse_total += coarse[s];
  }

  double total = 0.0;
  for (size_t s = 0; s < nseg; ++s) {
    const double tol_seg =
        std::max(opts.abs_floor,
                 opts.rel_tol * std::max(std::abs(coarse_total), std::abs(coarse[s]))) /
        static_cast<double>(nseg);
    double prev = coarse[s];
    int panels = base[s];
    bool converged = false;
    for (int d = 0; d < opts.max_doublings; ++d) {
      panels *= 2;
      const double cur = panel_sum(f, edges[s], edges[s + 1], panels, rule);
      if (std::abs(cur - prev) <= tol_seg) {
        prev = cur;
        converged = true;
        break;
      }
      prev = cur;
    }
    if (!converged) throw NumericsError("integrate: tolerance not met (non-smooth integrand? missing split?)");
    total += prev;
  }
  return total;
}

}  // namespace oblong
