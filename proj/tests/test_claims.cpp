#include "oblong/claims.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <string>
#include <vector>

#include "doctest.h"
#include "oblong/errors.hpp"
#include "oblong/metric.hpp"

using oblong::Band;
using oblong::ClaimConfig;
using oblong::ClaimRecord;
using oblong::ClaimReport;
using oblong::Inequality;
using oblong::SweepRow;

namespace {
constexpr double kPi = std::numbers::pi;

ClaimConfig small_config() {
  ClaimConfig cfg;
  cfg.L_values = {2, 5, 10, 20};
  cfg.alpha_values = {0, 1};
  cfg.numerics.n = 1200;
  return cfg;
}

std::string strip_timestamp(std::string s) {
  static const std::regex ts("\"timestamp\": \"[^\"]*\"");
  return std::regex_replace(s, ts, "\"timestamp\": \"X\"");
}
}  // namespace

TEST_CASE("fit_decay_exponent recovers exact power laws") {
  const std::vector<double> L{10, 20, 40, 80};
  std::vector<double> quadratic, linear;
  for (double l : L) {
    quadratic.push_back(7.3 / (l * l));
    linear.push_back(0.4 / l);
  }
  auto [slope2, resid2] = oblong::fit_decay_exponent(L, quadratic);
  CHECK(slope2 == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(resid2 < 1e-12);
  auto [slope1, resid1] = oblong::fit_decay_exponent(L, linear);
  CHECK(slope1 == doctest::Approx(-1.0).epsilon(1e-12));

  // Only the largest three L matter: poison the smallest point.
  std::vector<double> poisoned = quadratic;
  poisoned[0] *= 100.0;
  auto [slope_p, resid_p] = oblong::fit_decay_exponent(L, poisoned);
  CHECK(slope_p == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(resid_p < 1e-12);

  CHECK_THROWS_AS(oblong::fit_decay_exponent({10, 20}, {1.0, 2.0}), oblong::InvalidArgument);
  CHECK_THROWS_AS(oblong::fit_decay_exponent(L, {1, 2, 3}), oblong::InvalidArgument);
  CHECK_THROWS_AS(oblong::fit_decay_exponent({10, 20, 40}, {1.0, -2.0, 3.0}),
                  oblong::InvalidArgument);
}

TEST_CASE("config validation and JSON round trip") {
  ClaimConfig cfg;  // defaults
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.L_values == std::vector<double>{1, 2, 5, 10, 20, 40, 80});
  CHECK(cfg.alpha_values == std::vector<double>{0, 1, 2});
  CHECK(cfg.adm_mass == 1.0);
  CHECK(cfg.numerics.n == 4000);

  const ClaimConfig back = ClaimConfig::from_json(cfg.to_json());
  CHECK(back.L_values == cfg.L_values);
  CHECK(back.alpha_values == cfg.alpha_values);
  CHECK(back.numerics.eigen_abs_tol == cfg.numerics.eigen_abs_tol);
  CHECK(back.slope_lambda1_hat.lo == cfg.slope_lambda1_hat.lo);
  CHECK(back.mass_floor_coeff == cfg.mass_floor_coeff);

  // Partial documents pick up defaults; unknown keys are an error.
  const ClaimConfig partial = ClaimConfig::from_json(nlohmann::json{{"L_values", {3, 6}}});
  CHECK(partial.L_values == std::vector<double>{3, 6});
  CHECK(partial.numerics.n == 4000);
  CHECK_THROWS_AS(ClaimConfig::from_json(nlohmann::json{{"L_valuess", {3, 6}}}),
                  oblong::InvalidArgument);
  CHECK_THROWS_AS(ClaimConfig::from_json(nlohmann::json::array({1, 2})),
                  oblong::InvalidArgument);

  ClaimConfig bad = cfg;
  bad.L_values = {};
  CHECK_THROWS_AS(bad.validate(), oblong::InvalidArgument);
  bad = cfg;
  bad.L_values = {5, 2};
  CHECK_THROWS_AS(bad.validate(), oblong::InvalidArgument);
  bad = cfg;
  bad.numerics.n = 2;
  CHECK_THROWS_AS(bad.validate(), oblong::InvalidArgument);
  bad = cfg;
  bad.alpha_values = {-0.5};
  CHECK_THROWS_AS(bad.validate(), oblong::InvalidArgument);
}

TEST_CASE("sweep rows: layout and cross-field identities") {
  const ClaimConfig cfg = small_config();
  const std::vector<SweepRow> rows = oblong::sweep_rows(cfg);
  REQUIRE(rows.size() == cfg.L_values.size() * cfg.alpha_values.size());

  std::size_t i = 0;
  for (double L : cfg.L_values) {
    for (double alpha : cfg.alpha_values) {
      const SweepRow& r = rows[i++];
      CAPTURE(L);
      CAPTURE(alpha);
      CHECK(r.L == L);
      CHECK(r.alpha == alpha);
      CHECK(r.area_hat == doctest::Approx(oblong::area_closed_form(L)).epsilon(1e-14));
      const double factor = r.area_hat / (4.0 * kPi);
      CHECK(r.lambda1_normalized == doctest::Approx(r.lambda1_hat * factor).epsilon(1e-12));
      CHECK(r.rhs_eq1 ==
            doctest::Approx(std::sqrt(1.0 / (2.0 * r.lambda1_normalized))).epsilon(1e-12));
      CHECK(r.rhs_eq3 ==
            doctest::Approx(std::sqrt((2.0 + alpha) / (4.0 * r.lambda1_normalized)))
                .epsilon(1e-12));
      CHECK(r.hersch_ratio ==
            doctest::Approx(r.lambda1_normalized / (2.0 + alpha)).epsilon(1e-12));
      CHECK(r.lambda0_hat < r.lambda1_hat);
    }
  }
}

TEST_CASE("sweep CSV: exact header, shape, determinism") {
  const ClaimConfig cfg = small_config();
  const std::string csv = oblong::sweep_csv(oblong::sweep_rows(cfg));
  const std::string header =
      "L,alpha,area_hat,lambda0_hat,lambda1_hat,lambda1_normalized,rhs_eq1,rhs_eq3,"
      "hersch_ratio\n";
  REQUIRE(csv.size() > header.size());
  CHECK(csv.substr(0, header.size()) == header);
  CHECK(csv.find('\r') == std::string::npos);
  const std::size_t lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(lines == 1 + cfg.L_values.size() * cfg.alpha_values.size());
  CHECK(csv == oblong::sweep_csv(oblong::sweep_rows(cfg)));
}

TEST_CASE("full report on the default config: all claims pass") {
  const ClaimConfig cfg;  // defaults, n = 4000
  const ClaimReport report = oblong::full_report(cfg);
  CHECK(report.version == std::string("0.1.0"));
  REQUIRE(report.claims.size() == 15);

  const char* expected_order[15] = {
      "curvature-positivity", "area-normalization",  "gauss-bonnet",
      "ms-hypothesis",        "hersch-elsoufi",      "rayleigh-integrals",
      "rayleigh-upper-bound", "decay-lambda1-hat",   "decay-lambda1-normalized",
      "alpha-monotonicity",   "L-monotonicity",      "counterexample-eq1",
      "counterexample-eq3",   "eq1-implies-eq3",     "scale-covariance"};
  for (int i = 0; i < 15; ++i) {
    CAPTURE(i);
    CHECK(report.claims[i].id == expected_order[i]);
    CHECK(report.claims[i].pass);
    CHECK(report.claims[i].margin >= 0.0);
    CHECK_FALSE(report.claims[i].target.empty());
  }
  CHECK(report.all_pass());

  // Counterexample witnesses land where the asymptotics say they must.
  auto witness = [&](const std::string& id, double alpha) {
    for (const ClaimRecord& record : report.claims)
      if (record.id == id)
        for (const auto& entry : record.values.at("per_alpha"))
          if (entry.at("alpha").get<double>() == alpha) return entry.at("witness_L").get<double>();
    return -1.0;
  };
  CHECK(witness("counterexample-eq1", 0.0) == 10.0);
  CHECK(witness("counterexample-eq1", 1.0) == 40.0);
  CHECK(witness("counterexample-eq1", 2.0) == 40.0);
  CHECK(witness("counterexample-eq3", 0.0) == 10.0);
  CHECK(witness("counterexample-eq3", 1.0) == 20.0);
  CHECK(witness("counterexample-eq3", 2.0) == 20.0);
}

TEST_CASE("report JSON: schema, key order, and determinism up to timestamp") {
  ClaimConfig cfg = small_config();
  cfg.L_values = {5, 10, 20, 40};  // three large points for the fits
  const ClaimReport report = oblong::full_report(cfg);
  const nlohmann::ordered_json doc = report.to_json();

  std::vector<std::string> top;
  for (const auto& item : doc.items()) top.push_back(item.key());
  CHECK(top == std::vector<std::string>{"version", "config", "claims", "environment"});

  std::vector<std::string> claim_keys;
  for (const auto& item : doc.at("claims").at(0).items()) claim_keys.push_back(item.key());
  CHECK(claim_keys ==
        std::vector<std::string>{"id", "inputs", "values", "target", "margin", "pass", "flags"});

  CHECK(doc.at("environment").contains("timestamp"));
  CHECK(doc.at("environment").at("numerics").at("n") == cfg.numerics.n);

  // Serialized floats carry 17 significant digits.
  const std::string text = report.to_json_string();
  CHECK(text.find("0.1.0") != std::string::npos);
  CHECK(text.back() == '\n');

  const ClaimReport again = oblong::full_report(cfg);
  CHECK(strip_timestamp(report.to_json_string()) == strip_timestamp(again.to_json_string()));
}

TEST_CASE("counterexample absence on a short sweep fails without throwing") {
  ClaimConfig cfg;
  cfg.L_values = {1, 2};
  cfg.alpha_values = {0};
  cfg.numerics.n = 1200;
  const ClaimRecord record = oblong::check_counterexample(cfg, Inequality::eq1);
  CHECK_FALSE(record.pass);
  CHECK(record.margin < 0.0);
  for (const auto& entry : record.values.at("per_alpha"))
    CHECK(entry.at("witness_L").is_null());
}

TEST_CASE("ms-hypothesis works even when alpha=1 is not in the sweep") {
  ClaimConfig cfg;
  cfg.L_values = {2, 10};
  cfg.alpha_values = {0, 2};
  cfg.numerics.n = 1500;
  const ClaimRecord record = oblong::check_ms_hypothesis(cfg);
  CHECK(record.pass);
  CHECK(record.margin > 0.0);
}

TEST_CASE("stand-alone geometric checks pass on a small sweep") {
  const ClaimConfig cfg = small_config();
  CHECK(oblong::check_curvature_positivity(cfg).pass);
  CHECK(oblong::check_area_normalization(cfg).pass);
  CHECK(oblong::check_gauss_bonnet(cfg).pass);
}
