#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace oblong {

/// Grid and tolerance bundle shared by every check.
struct NumericsConfig {
  int n = 4000;                 // interior grid points per Fourier mode
  double eigen_abs_tol = 1e-8;  // eigenvalue bisection tolerance
  double quad_rel_tol = 1e-10;  // quadrature relative tolerance
};

/// Closed interval for fitted-exponent acceptance bands.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Sweep definition plus the frozen engineering tolerances around the
/// asymptotic claims. Everything is overridable through the JSON config.
struct ClaimConfig {
  std::vector<double> L_values{1, 2, 5, 10, 20, 40, 80};  // strictly increasing
  std::vector<double> alpha_values{0, 1, 2};              // nonnegative
  double adm_mass = 1.0;
  NumericsConfig numerics;

  Band slope_lambda1_hat{-2.3, -1.8};          // lambda_1 at unit scale ~ L^-2
  Band slope_lambda1_normalized{-1.25, -0.8};  // lambda_1 at area 4 pi ~ L^-1
  Band slope_dirichlet_energy{-1.1, -0.9};     // exactly 2 pi^3 / L
  Band slope_curvature_term{-2.4, -1.6};       // O(L^-2)
  Band slope_mass_term{0.9, 1.1};              // grows like c L
  double mass_floor_coeff = 1.0;    // mass_term >= coeff * L for swept L >= 5
  /// |area(L) - 4 pi (L-1)| <= coeff * 4 pi L e^{-2L} + 1e-12 * 4 pi L.
  /// The additive term is a floating-point noise floor: beyond L ~ 20 the
  /// true remainder drops below one ulp of the area itself.
  double area_remainder_coeff = 4.0;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
  /// Parses the JSON document shape produced by to_json(); every key is
  /// optional and defaults apply, unknown keys are rejected.
  static ClaimConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// One verified claim. `margin` is the smallest slack across the record's
/// subchecks (in the subcheck's own scale); it is nonnegative exactly when
/// the record passes, except for advisory records, which always pass and
/// report violations through `flags`.
struct ClaimRecord {
  std::string id;
  nlohmann::ordered_json inputs;  // parameters the check ranged over
  nlohmann::ordered_json values;  // computed quantities backing the verdict
  std::string target;             // the inequality/identity being checked
  double margin = 0.0;
  bool pass = false;
  std::vector<std::string> flags;
  nlohmann::ordered_json to_json() const;
};

/// Serialized as {version, config, claims, environment}; key order is fixed,
/// floats carry 17 significant digits, and the timestamp is confined to the
/// environment block so that data sections are byte-identical across runs.
struct ClaimReport {
  std::string version;
  ClaimConfig config;
  std::vector<ClaimRecord> claims;
  std::string timestamp;  // ISO 8601 UTC
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_json_string() const;
};

/// Least-squares slope of log(value) against log(L) over the largest three
/// L, and the maximum absolute log-residual of those points from the fit.
/// Throws InvalidArgument on mismatched sizes, fewer than three points, or
/// nonpositive values.
std::pair<double, double> fit_decay_exponent(const std::vector<double>& L_values,
                                             const std::vector<double>& values);

enum class Inequality { eq1, eq3 };

// Stand-alone checks (each runs its own sweep; full_report shares one).
ClaimRecord check_curvature_positivity(const ClaimConfig& config);
ClaimRecord check_area_normalization(const ClaimConfig& config);
ClaimRecord check_gauss_bonnet(const ClaimConfig& config);
ClaimRecord check_ms_hypothesis(const ClaimConfig& config);
ClaimRecord check_hersch_elsoufi(const ClaimConfig& config);

/// Smallest swept L whose mass threshold exceeds adm_mass, per alpha:
/// Inequality::eq1 tests sqrt(1 / (2 lambda_1)) > adm_mass and
/// Inequality::eq3 tests sqrt((2 + alpha) / (4 lambda_1)) > adm_mass, with
/// lambda_1 on the area-normalized metric. A missing witness is a failing
/// record, not an exception.
ClaimRecord check_counterexample(const ClaimConfig& config, Inequality which);

/// Runs every check — positivity, normalization, Gauss-Bonnet, the spectral
/// hypothesis and bounds, the integral estimates, the exponent fits, the
/// monotonicity properties, both counterexample searches, and a direct-scale
/// spot check — on one shared sweep. Deterministic given the config, up to
/// the environment timestamp.
ClaimReport full_report(const ClaimConfig& config);

/// One row of the machine-readable sweep: unit-scale spectral data plus the
/// derived normalized quantities and inequality thresholds.
struct SweepRow {
  double L = 0.0;
  double alpha = 0.0;
  double area_hat = 0.0;            // closed-form area at unit scale
  double lambda0_hat = 0.0;
  double lambda1_hat = 0.0;
  double lambda1_normalized = 0.0;  // exact rescale to area 4 pi
  double rhs_eq1 = 0.0;             // sqrt(1 / (2 lambda1_normalized))
  double rhs_eq3 = 0.0;             // sqrt((2 + alpha) / (4 lambda1_normalized))
  double hersch_ratio = 0.0;        // lambda1_normalized / (2 + alpha)
};

/// L-major, then alpha, in config order.
std::vector<SweepRow> sweep_rows(const ClaimConfig& config);

/// CSV (header + rows), 17-significant-digit floats, LF line endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace oblong
