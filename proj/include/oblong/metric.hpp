#pragma once

#include <functional>
#include <optional>
#include <string>

namespace oblong {

/// Conformal metrics c * e^{-2 psi(t)} (dt^2 + dtheta^2) on the cylinder
/// R x [0, 2pi], compactifying to S^2 when e^{-2 psi} decays like e^{-2|t|}.
enum class Family { oblong, sphere, custom };

/// Exponential decay bound  weight(t) <= coeff * e^{-rate * |t|}  valid for
/// |t| >= from. Needed to truncate whole-line integrals for custom profiles.
struct TailBound {
  double coeff = 1.0;
  double rate = 2.0;
  double from = 0.0;
};

/// User-supplied conformal factor. psi'' must be analytic: curvature is
/// evaluated as e^{2 psi} psi'' and no numerical differentiation happens in
/// the core.
struct CustomProfile {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(double)> d2psi;
  bool even = false;                 // psi(t) == psi(-t)
  std::optional<TailBound> tail;     // decay of e^{-2 psi}; required by area()
};

/// Exact area of the oblong family member with half-length L (unit scale):
/// 4 pi (L coth L - 1) / (1 - e^{-2L})^2.
double area_closed_form(double L);

class Metric {
 public:
  /// Oblong family: psi_L(t) = log(1+e^{t-L}) + log(1+e^{-t-L}).
  /// With normalized=true the metric is rescaled to area 4 pi.
  static Metric oblong(double L, bool normalized = false);

  /// Unit round sphere in cylinder coordinates: psi(t) = log cosh t.
  static Metric sphere();

  static Metric custom(CustomProfile profile, double scale = 1.0);

  // Unscaled conformal factor and derivatives. Stable for |t| up to ~700.
  double psi(double t) const;
  double dpsi(double t) const;
  double d2psi(double t) const;

  /// Gauss curvature of the scaled metric, K/c relative to the unit-scale
  /// metric. Closed form for the built-in families, e^{2 psi} psi'' / c
  /// for custom profiles.
  double curvature(double t) const;

  /// Area density relative to dt dtheta: c * e^{-2 psi(t)}. Strictly positive.
  double weight(double t) const;

  /// 2 pi c Int e^{-2 psi} dt by quadrature over a truncated interval sized
  /// from the family's analytic tail bound. Relative error <= rel_tol.
  /// Throws NumericsError for custom profiles without a tail bound.
  double area(double rel_tol = 1e-10) const;

  Family family() const { return family_; }
  double scale() const { return scale_; }
  /// Half-length L of the oblong family (throws for other families).
  double half_length() const;
  bool even() const { return even_; }
  bool normalized() const { return normalized_; }

  /// Default truncation half-width for mode problems: L + 25 for the oblong
  /// family, 25 otherwise.
  double default_truncation() const;

  /// max_t weight(t). Exact (t = 0) for the built-in even families, sampled
  /// for custom profiles.
  double max_weight() const;

  /// min_t curvature(t) over the compactified surface, same convention.
  double min_curvature() const;

  /// Short human-readable descriptor, e.g. "oblong(L=10)".
  std::string describe() const;

 private:
  Metric(Family family, double length, double scale, bool normalized, CustomProfile profile);

  Family family_;
  double length_ = 0.0;  // L for the oblong family
  double scale_ = 1.0;
  bool normalized_ = false;
  bool even_ = true;
  CustomProfile profile_;
};

}  // namespace oblong
