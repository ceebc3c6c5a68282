#include "oblong/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oblong/errors.hpp"

namespace oblong {

namespace {

// Smallest safe pivot magnitude: scaled from the largest off-diagonal square
// so that b^2 / pivmin cannot overflow.
double pivot_floor(const std::vector<double>& offdiag) {
  double bmax2 = std::numeric_limits<double>::min();
  for (double b : offdiag) bmax2 = std::max(bmax2, b * b);
  return std::numeric_limits<double>::min() * std::max(1.0, bmax2) * 1e4;
}

int count_below(const std::vector<double>& diag, const std::vector<double>& offdiag,
                double lambda, double pivmin) {
  int count = 0;
  double d = diag[0] - lambda;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (size_t i = 1; i < diag.size(); ++i) {
    d = diag[i] - lambda - offdiag[i - 1] * offdiag[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace

int sturm_count(const std::vector<double>& diag, const std::vector<double>& offdiag,
                double lambda) {
  if (diag.empty()) return 0;
  if (offdiag.size() + 1 != diag.size())
    throw InvalidArgument("sturm_count: offdiag must have n-1 entries");
  return count_below(diag, offdiag, lambda, pivot_floor(offdiag));
}

std::vector<double> smallest_eigenvalues(const std::vector<double>& diag,
                                         const std::vector<double>& offdiag, int count,
                                         double abs_tol) {
  const int n = static_cast<int>(diag.size());
  if (count < 1 || count > n) throw InvalidArgument("smallest_eigenvalues: count out of range");
  if (offdiag.size() + 1 != diag.size())
    throw InvalidArgument("smallest_eigenvalues: offdiag must have n-1 entries");
  if (!(abs_tol > 0.0)) throw InvalidArgument("smallest_eigenvalues: abs_tol must be positive");

  // Gershgorin bracket for the whole spectrum.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  lo -= 1e-12 * std::max(1.0, std::abs(lo)) + 1e-300;
  hi += 1e-12 * std::max(1.0, std::abs(hi)) + 1e-300;

  const double pivmin = pivot_floor(offdiag);
  std::vector<double> values(count);
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    // Invariant: count_below(a) <= j < count_below(b).
    while (b - a > abs_tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;  // bracket at rounding resolution
      if (count_below(diag, offdiag, mid, pivmin) > j)
        b = mid;
      else
        a = mid;
    }
    values[j] = 0.5 * (a + b);
  }
  return values;
}

int pencil_inertia(const TridiagonalPencil& pencil, double lambda) {
  const size_t n = pencil.diag.size();
  if (n == 0) return 0;
  double pivmin = std::numeric_limits<double>::min();
  for (double b : pencil.offdiag) pivmin = std::max(pivmin, b * b);
  pivmin = std::numeric_limits<double>::min() * std::max(1.0, pivmin) * 1e4;

  int count = 0;
  double d = pencil.diag[0] - lambda * pencil.weight[0];
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (size_t i = 1; i < n; ++i) {
    d = pencil.diag[i] - lambda * pencil.weight[i] -
        pencil.offdiag[i - 1] * pencil.offdiag[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

struct ModeSpectrum {
  int k = 0;
  std::vector<double> values;
};

Boundary mode_bc(int k, const SolverOptions& opts) {
  if (opts.bc_override) return *opts.bc_override;
  return k == 0 ? Boundary::neumann : Boundary::dirichlet;
}

ModeSpectrum solve_mode(const Metric& metric, int k, double alpha, int count,
                        double T, const SolverOptions& opts) {
  ModeProblem problem;
  problem.k = k;
  problem.alpha = alpha;
  problem.T = T;
  problem.n = opts.n;
  problem.bc = mode_bc(k, opts);
  const TridiagonalPencil pencil = build_pencil(metric, problem);
  const SymmetricTridiagonal reduced = reduce_to_standard(pencil);
  ModeSpectrum out;
  out.k = k;
  out.values = smallest_eigenvalues(reduced.diag, reduced.offdiag,
                                    std::min(count, opts.n), opts.abs_tol);
  return out;
}

}  // namespace

SpectrumResult global_spectrum(const Metric& metric, double alpha, int num_values,
                               const SolverOptions& opts) {
  if (num_values < 1) throw InvalidArgument("global_spectrum: num_values must be >= 1");
  if (opts.n < 3) throw InvalidArgument("global_spectrum: n must be >= 3");
  if (!(opts.abs_tol > 0.0)) throw InvalidArgument("global_spectrum: abs_tol must be positive");
  if (alpha < 0.0 && opts.k_max < 0)
    throw InvalidArgument(
        "global_spectrum: alpha < 0 invalidates the mode-cutoff bound; set an explicit k_max");

  const double T = opts.T > 0.0 ? opts.T : metric.default_truncation();

  // Lower bound on every mode-k eigenvalue, valid for alpha >= 0 and K > 0:
  // k^2 min_t(e^{2 psi}/c) + alpha min_t K.
  const double inv_weight_min = 1.0 / metric.max_weight();
  const double curvature_min = metric.min_curvature();

  std::vector<SpectrumEntry> pool;
  const auto expanded_value = [&pool](int idx) -> double {
    int seen = 0;
    for (const auto& e : pool) {
      seen += e.multiplicity;
      if (seen > idx) return e.value;
    }
    return std::numeric_limits<double>::infinity();
  };

  int k = 0;
  for (;; ++k) {
    if (opts.k_max >= 0) {
      // An explicit k_max overrides the automatic cutoff: scan exactly k = 0..k_max.
      if (k > opts.k_max) break;
    } else if (k > 0) {
      // Automatic cutoff (alpha >= 0 only): every mode-k eigenvalue is at least
      // k^2 min_t(e^{2 psi}/c) + alpha min_t K, so once that exceeds the current
      // num_values-th candidate no higher mode can contribute.
      const double mode_lower_bound =
          static_cast<double>(k) * k * inv_weight_min + alpha * curvature_min;
      if (mode_lower_bound > expanded_value(num_values - 1)) break;
    }
    const ModeSpectrum mode = solve_mode(metric, k, alpha, num_values, T, opts);
    for (size_t j = 0; j < mode.values.size(); ++j) {
      SpectrumEntry entry;
      entry.value = mode.values[j];
      entry.k = k;
      entry.multiplicity = (k == 0) ? 1 : 2;
      entry.sector_index = static_cast<int>(j);
      // On an even metric the mode-k Sturm-Liouville eigenfunctions alternate
      // even/odd with the sector index.
      entry.parity = metric.even() ? (j % 2 == 0 ? Parity::even : Parity::odd) : Parity::none;
      pool.push_back(entry);
    }
    std::sort(pool.begin(), pool.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
      if (a.value != b.value) return a.value < b.value;
      if (a.k != b.k) return a.k < b.k;
      return a.sector_index < b.sector_index;
    });
  }

  SpectrumResult result;
  result.numerics.T = T;
  result.numerics.n = opts.n;
  result.numerics.abs_tol = opts.abs_tol;
  result.numerics.mode_cutoff = k;
  result.numerics.bc_k0 = mode_bc(0, opts) == Boundary::neumann ? "neumann" : "dirichlet";
  result.numerics.bc_k_positive = mode_bc(1, opts) == Boundary::neumann ? "neumann" : "dirichlet";

  // Expand multiplicities into the reported list.
  for (const auto& e : pool) {
    for (int copy = 0; copy < e.multiplicity && static_cast<int>(result.entries.size()) < num_values;
         ++copy)
      result.entries.push_back(e);
    if (static_cast<int>(result.entries.size()) >= num_values) break;
  }
  if (static_cast<int>(result.entries.size()) < num_values)
    throw NumericsError("global_spectrum: mode scan exhausted before num_values eigenvalues");

  result.lambda0 = result.entries[0].value;
  result.lambda1 = num_values >= 2 ? result.entries[1].value
                                   : std::numeric_limits<double>::quiet_NaN();

  if (metric.family() == Family::oblong && T < metric.half_length() + 10.0)
    result.flags.push_back("short-truncation");
  if (num_values >= 2 && result.lambda1 - result.lambda0 < 10.0 * opts.abs_tol)
    result.flags.push_back("degenerate-gap");
  return result;
}

double lambda1_normalized(double L, double alpha, const SolverOptions& opts) {
  const Metric hat = Metric::oblong(L);
  const SpectrumResult spec = global_spectrum(hat, alpha, 2, opts);
  if (spec.flagged())
    throw NumericsError("lambda1_normalized: flagged spectrum (" + spec.flags.front() + ")");
  return spec.lambda1 * area_closed_form(L) / (4.0 * M_PI);
}

}  // namespace oblong
