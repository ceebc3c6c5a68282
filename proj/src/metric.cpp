#include "oblong/metric.hpp"

#include <cmath>

#include "oblong/errors.hpp"
#include "oblong/quadrature.hpp"

namespace oblong {

namespace {

// log(1 + e^x) without overflow: max(x, 0) + log1p(e^{-|x|}).
double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

// Logistic sigma(x) = 1 / (1 + e^{-x}).
double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// sigma'(x) = e^{-|x|} / (1 + e^{-|x|})^2.
double logistic_deriv(double x) {
  const double e = std::exp(-std::abs(x));
  const double d = 1.0 + e;
  return e / (d * d);
}

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive and finite");
  return v;
}

}  // namespace

double area_closed_form(double L) {
  require_positive(L, "L");
  // 4 pi (L coth L - 1) / (1 - e^{-2L})^2; coth L = (1 + e^{-2L}) / (1 - e^{-2L}).
  const double em = std::exp(-2.0 * L);
  const double denom = 1.0 - em;
  return 4.0 * M_PI * (L * (1.0 + em) / denom - 1.0) / (denom * denom);
}

Metric::Metric(Family family, double length, double scale, bool normalized, CustomProfile profile)
    : family_(family),
      length_(length),
      scale_(scale),
      normalized_(normalized),
      profile_(std::move(profile)) {
  even_ = (family_ == Family::custom) ? profile_.even : true;
}

Metric Metric::oblong(double L, bool normalized) {
  require_positive(L, "L");
  const double scale = normalized ? 4.0 * M_PI / area_closed_form(L) : 1.0;
  return Metric(Family::oblong, L, scale, normalized, {});
}

Metric Metric::sphere() { return Metric(Family::sphere, 0.0, 1.0, false, {}); }

Metric Metric::custom(CustomProfile profile, double scale) {
  require_positive(scale, "scale");
  if (!profile.psi || !profile.dpsi || !profile.d2psi)
    throw InvalidArgument("custom metric requires psi, psi', psi'' evaluators");
  return Metric(Family::custom, 0.0, scale, false, std::move(profile));
}

double Metric::half_length() const {
  if (family_ != Family::oblong) throw InvalidArgument("half_length: not an oblong-family metric");
  return length_;
}

double Metric::psi(double t) const {
  switch (family_) {
    case Family::oblong:
      return softplus(t - length_) + softplus(-t - length_);
    case Family::sphere:
      // log cosh t = |t| - log 2 + log1p(e^{-2|t|})
      return std::abs(t) - M_LN2 + std::log1p(std::exp(-2.0 * std::abs(t)));
    case Family::custom:
      return profile_.psi(t);
  }
  return 0.0;
}

double Metric::dpsi(double t) const {
  switch (family_) {
    case Family::oblong:
      return logistic(t - length_) - logistic(-t - length_);
    case Family::sphere:
      return std::tanh(t);
    case Family::custom:
      return profile_.dpsi(t);
  }
  return 0.0;
}

double Metric::d2psi(double t) const {
  switch (family_) {
    case Family::oblong:
      // (1 + cosh t cosh L) / (cosh t + cosh L)^2 in logistic form.
      return logistic_deriv(t - length_) + logistic_deriv(-t - length_);
    case Family::sphere: {
      // sech^2 t
      const double e = std::exp(-std::abs(t));
      const double s = 2.0 * e / (1.0 + e * e);
      return s * s;
    }
    case Family::custom:
      return profile_.d2psi(t);
  }
  return 0.0;
}

double Metric::curvature(double t) const {
  switch (family_) {
    case Family::oblong: {
      // 4 e^{-2L}(1 + cosh L cosh t) = 4 e^{-2L} + (1 + e^{-2L})(e^{t-L} + e^{-t-L}),
      // which avoids cosh overflow until |t| - L approaches ~700.
      const double em = std::exp(-2.0 * length_);
      const double k = 4.0 * em + (1.0 + em) * (std::exp(t - length_) + std::exp(-t - length_));
      return k / scale_;
    }
    case Family::sphere:
      return 1.0 / scale_;
    case Family::custom:
      return std::exp(2.0 * profile_.psi(t)) * profile_.d2psi(t) / scale_;
  }
  return 0.0;
}

double Metric::weight(double t) const {
  switch (family_) {
    case Family::oblong: {
      // e^{-psi} = 1 / (1 + e^{-2L} + e^{t-L} + e^{-t-L}); squares to the
      // cosh identity e^{2L} / (4 (cosh t + cosh L)^2). An overflowing exp
      // drives the reciprocal to 0, which is the correct limit.
      const double r = 1.0 / (1.0 + std::exp(-2.0 * length_) + std::exp(t - length_) +
                              std::exp(-t - length_));
      return scale_ * r * r;
    }
    case Family::sphere: {
      const double e = std::exp(-std::abs(t));
      const double s = 2.0 * e / (1.0 + e * e);
      return scale_ * s * s;
    }
    case Family::custom:
      return scale_ * std::exp(-2.0 * profile_.psi(t));
  }
  return 0.0;
}

double Metric::area(double rel_tol) const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-2)
    throw InvalidArgument("area: rel_tol must lie in (0, 1e-2]");

  // Tail bound per family: weight(t) <= bound_coeff * e^{-bound_rate * |t|}.
  double bound_coeff = 0.0, bound_rate = 0.0, tail_from = 0.0;
  switch (family_) {
    case Family::oblong:
      // weight <= c e^{2L} e^{-2|t|}
      bound_coeff = scale_ * std::exp(2.0 * length_);
      bound_rate = 2.0;
      tail_from = length_;
      break;
    case Family::sphere:
      // sech^2 t <= 4 e^{-2|t|}
      bound_coeff = 4.0 * scale_;
      bound_rate = 2.0;
      tail_from = 0.0;
      break;
    case Family::custom:
      if (!profile_.tail)
        throw NumericsError("area: custom profile has no tail bound; cannot certify truncation");
      bound_coeff = scale_ * profile_.tail->coeff;
      bound_rate = require_positive(profile_.tail->rate, "tail rate");
      tail_from = profile_.tail->from;
      break;
  }

  // Rough magnitude from a coarse pass over the bulk, then pick T* so that
  // the analytic tail 2 pi * 2 * bound_coeff e^{-rate T} / rate stays below
  // a quarter of the requested relative error.
  const double bulk = std::max(tail_from + 2.0, 4.0);
  QuadratureOptions coarse;
  coarse.rel_tol = 1e-2;
  const auto w = [this](double t) { return weight(t); };
  const double prelim = std::max(2.0 * M_PI * integrate(w, -bulk, bulk, coarse),
                                 1e-300);
  const double target = 0.25 * rel_tol * prelim;
  const double T =
      std::max(bulk, std::log(4.0 * M_PI * bound_coeff / (bound_rate * target)) / bound_rate);

  QuadratureOptions opts;
  opts.rel_tol = 0.25 * rel_tol;
  std::vector<double> splits;
  if (family_ == Family::oblong) splits = {-length_, 0.0, length_};
  return 2.0 * M_PI * integrate(w, -T, T, opts, splits);
}

double Metric::default_truncation() const {
  return family_ == Family::oblong ? length_ + 25.0 : 25.0;
}

double Metric::max_weight() const {
  if (family_ != Family::custom) return weight(0.0);  // both built-ins peak at t = 0
  const double T = default_truncation();
  double m = 0.0;
  for (int i = 0; i <= 4000; ++i) m = std::max(m, weight(-T + i * (2.0 * T / 4000)));
  return m;
}

double Metric::min_curvature() const {
  if (family_ != Family::custom) return curvature(0.0);  // minimum at t = 0
  const double T = default_truncation();
  double m = curvature(0.0);
  for (int i = 0; i <= 4000; ++i) m = std::min(m, curvature(-T + i * (2.0 * T / 4000)));
  return m;
}

std::string Metric::describe() const {
  switch (family_) {
    case Family::oblong: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "oblong(L=%g%s)", length_, normalized_ ? ",normalized" : "");
      return buf;
    }
    case Family::sphere:
      return "sphere";
    case Family::custom: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "custom(scale=%g)", scale_);
      return buf;
    }
  }
  return "?";
}

}  // namespace oblong
