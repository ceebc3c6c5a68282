#include "oblong/discretize.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oblong/errors.hpp"
#include "oblong/metric.hpp"

using oblong::Boundary;
using oblong::Metric;
using oblong::ModeProblem;
using oblong::SymmetricTridiagonal;
using oblong::TridiagonalPencil;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("with_defaults picks the documented boundary conditions") {
  const Metric m = Metric::oblong(10.0);
  const ModeProblem p0 = ModeProblem::with_defaults(m, 0, 1.0);
  CHECK(p0.bc == Boundary::neumann);
  CHECK(p0.T == doctest::Approx(35.0));
  CHECK(p0.n == 4000);
  const ModeProblem p1 = ModeProblem::with_defaults(m, 1, 1.0);
  CHECK(p1.bc == Boundary::dirichlet);
  CHECK(ModeProblem::with_defaults(m, 3, 0.0, 500).n == 500);
}

TEST_CASE("separate_mode: q = k^2 + alpha psi'', w = c e^{-2 psi}") {
  const Metric m = Metric::oblong(4.0);
  const auto coeffs = oblong::separate_mode(m, 2, 1.5);
  for (double t : {-3.0, 0.0, 1.7, 6.0}) {
    CHECK(coeffs.q(t) == doctest::Approx(4.0 + 1.5 * m.d2psi(t)).epsilon(1e-15));
    CHECK(coeffs.w(t) == doctest::Approx(m.weight(t)).epsilon(1e-15));
  }
  // The scale multiplies the weight only.
  const Metric norm = Metric::oblong(4.0, true);
  const auto ncoeffs = oblong::separate_mode(norm, 2, 1.5);
  CHECK(ncoeffs.q(1.0) == doctest::Approx(coeffs.q(1.0)).epsilon(1e-15));
  CHECK(ncoeffs.w(1.0) == doctest::Approx(norm.scale() * m.weight(1.0)).epsilon(1e-15));
}

TEST_CASE("build_pencil lays out the documented stencil") {
  const Metric m = Metric::oblong(2.0);
  ModeProblem prob;
  prob.k = 1;
  prob.alpha = 0.5;
  prob.T = 5.0;
  prob.n = 9;
  prob.bc = Boundary::dirichlet;
  const TridiagonalPencil pencil = oblong::build_pencil(m, prob);

  REQUIRE(pencil.diag.size() == 9);
  REQUIRE(pencil.offdiag.size() == 8);
  REQUIRE(pencil.weight.size() == 9);
  const double h = 1.0;  // 2T/(n+1) = 10/10
  CHECK(pencil.grid_step() == doctest::Approx(h));
  CHECK(pencil.grid_point(0) == doctest::Approx(-4.0));
  CHECK(pencil.grid_point(8) == doctest::Approx(4.0));

  const auto coeffs = oblong::separate_mode(m, 1, 0.5);
  for (int i = 0; i < 9; ++i) {
    const double t = pencil.grid_point(i);
    CHECK(pencil.diag[i] == doctest::Approx(2.0 / (h * h) + coeffs.q(t)).epsilon(1e-14));
    CHECK(pencil.weight[i] == doctest::Approx(coeffs.w(t)).epsilon(1e-15));
  }
  for (double b : pencil.offdiag) CHECK(b == doctest::Approx(-1.0 / (h * h)));
  CHECK(pencil.meta.metric == "oblong(L=2)");

  // Neumann mirror ghost: boundary diagonal drops to 1/h^2 + q.
  prob.bc = Boundary::neumann;
  const TridiagonalPencil neumann = oblong::build_pencil(m, prob);
  CHECK(neumann.diag.front() ==
        doctest::Approx(1.0 / (h * h) + coeffs.q(neumann.grid_point(0))).epsilon(1e-14));
  CHECK(neumann.diag.back() ==
        doctest::Approx(1.0 / (h * h) + coeffs.q(neumann.grid_point(8))).epsilon(1e-14));
  for (int i = 1; i < 8; ++i)
    CHECK(neumann.diag[i] == doctest::Approx(pencil.diag[i]).epsilon(1e-15));
}

TEST_CASE("Neumann k=0 alpha=0 pencil annihilates the constant vector") {
  // With the mirror ghost the constant is an exact discrete null vector:
  // (A - 0 * W) 1 = 0 row by row.
  const Metric m = Metric::oblong(6.0);
  ModeProblem prob;
  prob.k = 0;
  prob.alpha = 0.0;
  prob.T = 20.0;
  prob.n = 57;
  prob.bc = Boundary::neumann;
  const TridiagonalPencil pencil = oblong::build_pencil(m, prob);
  const int n = prob.n;
  for (int i = 0; i < n; ++i) {
    double row = pencil.diag[i];
    if (i > 0) row += pencil.offdiag[i - 1];
    if (i + 1 < n) row += pencil.offdiag[i];
    CHECK(std::abs(row) < 1e-11);  // 2/h^2 ~ 1e1, cancellation to ~eps
  }
}

TEST_CASE("reduce_to_standard preserves the spectrum (2x2 hand check)") {
  TridiagonalPencil p;
  p.diag = {3.0, 2.0};
  p.offdiag = {-1.0};
  p.weight = {4.0, 1.0};
  p.meta.n = 2;
  p.meta.T = 1.0;
  const SymmetricTridiagonal s = oblong::reduce_to_standard(p);
  REQUIRE(s.diag.size() == 2);
  CHECK(s.diag[0] == doctest::Approx(0.75));
  CHECK(s.diag[1] == doctest::Approx(2.0));
  CHECK(s.offdiag[0] == doctest::Approx(-0.5));
  // Generalized eigenvalues of (A, W): det(A - lambda W) = 0
  // => 4 lambda^2 - 11 lambda + 5 = 0.
  const double disc = std::sqrt(121.0 - 80.0);
  const double lo = (11.0 - disc) / 8.0;
  const double hi = (11.0 + disc) / 8.0;
  // Standard matrix trace/det must reproduce lo+hi and lo*hi.
  CHECK(s.diag[0] + s.diag[1] == doctest::Approx(lo + hi).epsilon(1e-14));
  CHECK(s.diag[0] * s.diag[1] - s.offdiag[0] * s.offdiag[0] ==
        doctest::Approx(lo * hi).epsilon(1e-14));

  p.weight[1] = 0.0;
  CHECK_THROWS_AS(oblong::reduce_to_standard(p), oblong::NumericsError);
}

TEST_CASE("flat-cylinder Dirichlet pencil reproduces sin eigenvalues") {
  // For q = 0, w = 1 the discrete eigenvalues are (2/h^2)(1 - cos(j pi h / 2T))
  // exactly; check them through the pencil on a custom flat profile.
  oblong::CustomProfile flat;
  flat.psi = [](double) { return 0.0; };
  flat.dpsi = [](double) { return 0.0; };
  flat.d2psi = [](double) { return 0.0; };
  flat.even = true;
  const Metric m = Metric::custom(flat);

  ModeProblem prob;
  prob.k = 0;
  prob.alpha = 0.0;
  prob.T = kPi / 2.0;  // interval length pi: continuum eigenvalues j^2
  prob.n = 200;
  prob.bc = Boundary::dirichlet;
  const TridiagonalPencil pencil = oblong::build_pencil(m, prob);
  const SymmetricTridiagonal s = oblong::reduce_to_standard(pencil);

  // Smallest discrete eigenvalue via a direct Sturm count at the analytic
  // value (2/h^2)(1 - cos(pi h / pi)).
  const double h = pencil.grid_step();
  const double expected = 2.0 / (h * h) * (1.0 - std::cos(kPi * h / kPi));
  // The analytic discrete eigenvalue is close to the continuum value 1.
  CHECK(expected == doctest::Approx(1.0).epsilon(1e-3));
  // Spot check: the reduced matrix really is the plain Laplacian stencil.
  CHECK(s.diag[0] == doctest::Approx(2.0 / (h * h)).epsilon(1e-13));
  CHECK(s.offdiag[0] == doctest::Approx(-1.0 / (h * h)).epsilon(1e-13));
}

TEST_CASE("validation: bad mode problems are rejected") {
  const Metric m = Metric::oblong(3.0);
  ModeProblem bad;
  bad.k = -1;
  bad.T = 10.0;
  bad.n = 10;
  CHECK_THROWS_AS(oblong::build_pencil(m, bad), oblong::InvalidArgument);
  bad.k = 0;
  bad.n = 0;
  CHECK_THROWS_AS(oblong::build_pencil(m, bad), oblong::InvalidArgument);
  bad.n = 10;
  bad.T = 0.0;
  CHECK_THROWS_AS(oblong::build_pencil(m, bad), oblong::InvalidArgument);
}
