#include "oblong.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "oblong/claims.hpp"
#include "oblong/eigensolve.hpp"
#include "oblong/errors.hpp"
#include "oblong/metric.hpp"
#include "oblong/rayleigh.hpp"
#include "oblong/version.hpp"

struct oblong_metric {
  oblong::Metric impl;
};

struct oblong_spectrum {
  oblong::SpectrumResult impl;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
oblong_status wrap(F&& f) noexcept {
  try {
    f();
    return OBLONG_OK;
  } catch (const oblong::InvalidArgument& e) {
    g_last_error = e.what();
    return OBLONG_INVALID_ARGUMENT;
  } catch (const oblong::NumericsError& e) {
    g_last_error = e.what();
    return OBLONG_NUMERICS;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OBLONG_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OBLONG_INTERNAL;
  }
}

void require_arg(bool ok, const char* msg) {
  if (!ok) throw oblong::InvalidArgument(msg);
}

oblong::SolverOptions convert(const oblong_solver_options* o) {
  oblong::SolverOptions s;
  if (!o) return s;
  s.n = o->n;
  s.T = o->T;
  s.abs_tol = o->abs_tol;
  if (o->bc == 1)
    s.bc_override = oblong::Boundary::dirichlet;
  else if (o->bc == 2)
    s.bc_override = oblong::Boundary::neumann;
  else
    require_arg(o->bc == 0, "solver options: bc must be 0, 1, or 2");
  s.k_max = o->k_max;
  return s;
}

oblong::ClaimConfig parse_config(const char* config_json) {
  if (!config_json || config_json[0] == '\0') return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw oblong::InvalidArgument(std::string("config: ") + e.what());
  }
  return oblong::ClaimConfig::from_json(doc);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* oblong_version(void) { return oblong::kVersion; }

const char* oblong_status_name(oblong_status status) {
  switch (status) {
    case OBLONG_OK: return "OBLONG_OK";
    case OBLONG_INVALID_ARGUMENT: return "OBLONG_INVALID_ARGUMENT";
    case OBLONG_NUMERICS: return "OBLONG_NUMERICS";
    case OBLONG_INTERNAL: return "OBLONG_INTERNAL";
  }
  return "OBLONG_UNKNOWN";
}

const char* oblong_last_error(void) { return g_last_error.c_str(); }

oblong_status oblong_metric_oblong(double L, int normalized, oblong_metric** out) {
  return wrap([&] {
    require_arg(out != nullptr, "oblong_metric_oblong: out is NULL");
    *out = new oblong_metric{oblong::Metric::oblong(L, normalized != 0)};
  });
}

oblong_status oblong_metric_sphere(oblong_metric** out) {
  return wrap([&] {
    require_arg(out != nullptr, "oblong_metric_sphere: out is NULL");
    *out = new oblong_metric{oblong::Metric::sphere()};
  });
}

void oblong_metric_free(oblong_metric* metric) { delete metric; }

oblong_status oblong_metric_area(const oblong_metric* metric, double rel_tol, double* out) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_metric_area: metric is NULL");
    require_arg(out != nullptr, "oblong_metric_area: out is NULL");
    *out = metric->impl.area(rel_tol > 0.0 ? rel_tol : 1e-10);
  });
}

oblong_status oblong_metric_curvature(const oblong_metric* metric, double t, double* out) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_metric_curvature: metric is NULL");
    require_arg(out != nullptr, "oblong_metric_curvature: out is NULL");
    *out = metric->impl.curvature(t);
  });
}

oblong_status oblong_metric_weight(const oblong_metric* metric, double t, double* out) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_metric_weight: metric is NULL");
    require_arg(out != nullptr, "oblong_metric_weight: out is NULL");
    *out = metric->impl.weight(t);
  });
}

oblong_status oblong_metric_describe(const oblong_metric* metric, char* buf, size_t cap,
                                     size_t* len) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_metric_describe: metric is NULL");
    require_arg(buf != nullptr || cap == 0, "oblong_metric_describe: buf is NULL");
    const std::string s = metric->impl.describe();
    if (len) *len = s.size();
    if (cap > 0) {
      const size_t n = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
  });
}

double oblong_area_closed_form(double L) {
  if (!(L > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return oblong::area_closed_form(L);
}

void oblong_solver_options_default(oblong_solver_options* opts) {
  if (!opts) return;
  opts->n = 4000;
  opts->T = 0.0;
  opts->abs_tol = 1e-8;
  opts->bc = 0;
  opts->k_max = -1;
}

oblong_status oblong_global_spectrum(const oblong_metric* metric, double alpha, int num_values,
                                     const oblong_solver_options* opts, oblong_spectrum** out) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_global_spectrum: metric is NULL");
    require_arg(out != nullptr, "oblong_global_spectrum: out is NULL");
    *out = new oblong_spectrum{
        oblong::global_spectrum(metric->impl, alpha, num_values, convert(opts))};
  });
}

void oblong_spectrum_free(oblong_spectrum* spectrum) { delete spectrum; }

int oblong_spectrum_size(const oblong_spectrum* spectrum) {
  return spectrum ? static_cast<int>(spectrum->impl.entries.size()) : 0;
}

oblong_status oblong_spectrum_value(const oblong_spectrum* spectrum, int index, double* out) {
  return wrap([&] {
    require_arg(spectrum != nullptr, "oblong_spectrum_value: spectrum is NULL");
    require_arg(out != nullptr, "oblong_spectrum_value: out is NULL");
    require_arg(index >= 0 && index < oblong_spectrum_size(spectrum),
                "oblong_spectrum_value: index out of range");
    *out = spectrum->impl.entries[static_cast<size_t>(index)].value;
  });
}

oblong_status oblong_spectrum_entry(const oblong_spectrum* spectrum, int index, double* value,
                                    int* k, int* multiplicity, int* sector_index, int* parity) {
  return wrap([&] {
    require_arg(spectrum != nullptr, "oblong_spectrum_entry: spectrum is NULL");
    require_arg(index >= 0 && index < oblong_spectrum_size(spectrum),
                "oblong_spectrum_entry: index out of range");
    const auto& e = spectrum->impl.entries[static_cast<size_t>(index)];
    if (value) *value = e.value;
    if (k) *k = e.k;
    if (multiplicity) *multiplicity = e.multiplicity;
    if (sector_index) *sector_index = e.sector_index;
    if (parity)
      *parity = e.parity == oblong::Parity::even ? 0 : e.parity == oblong::Parity::odd ? 1 : -1;
  });
}

double oblong_spectrum_lambda0(const oblong_spectrum* spectrum) {
  return spectrum ? spectrum->impl.lambda0 : std::numeric_limits<double>::quiet_NaN();
}

double oblong_spectrum_lambda1(const oblong_spectrum* spectrum) {
  return spectrum ? spectrum->impl.lambda1 : std::numeric_limits<double>::quiet_NaN();
}

oblong_status oblong_spectrum_numerics(const oblong_spectrum* spectrum, double* T, int* n,
                                       double* abs_tol, int* mode_cutoff) {
  return wrap([&] {
    require_arg(spectrum != nullptr, "oblong_spectrum_numerics: spectrum is NULL");
    if (T) *T = spectrum->impl.numerics.T;
    if (n) *n = spectrum->impl.numerics.n;
    if (abs_tol) *abs_tol = spectrum->impl.numerics.abs_tol;
    if (mode_cutoff) *mode_cutoff = spectrum->impl.numerics.mode_cutoff;
  });
}

int oblong_spectrum_flag_count(const oblong_spectrum* spectrum) {
  return spectrum ? static_cast<int>(spectrum->impl.flags.size()) : 0;
}

const char* oblong_spectrum_flag(const oblong_spectrum* spectrum, int index) {
  if (!spectrum || index < 0 || index >= oblong_spectrum_flag_count(spectrum)) return nullptr;
  return spectrum->impl.flags[static_cast<size_t>(index)].c_str();
}

oblong_status oblong_lambda1_normalized(double L, double alpha,
                                        const oblong_solver_options* opts, double* out) {
  return wrap([&] {
    require_arg(out != nullptr, "oblong_lambda1_normalized: out is NULL");
    *out = oblong::lambda1_normalized(L, alpha, convert(opts));
  });
}

oblong_status oblong_upper_bound_lambda1(const oblong_metric* metric, double alpha,
                                         double rel_tol, oblong_rayleigh_report* out) {
  return wrap([&] {
    require_arg(metric != nullptr, "oblong_upper_bound_lambda1: metric is NULL");
    require_arg(out != nullptr, "oblong_upper_bound_lambda1: out is NULL");
    const oblong::RayleighReport r =
        oblong::upper_bound_report(metric->impl, alpha, rel_tol > 0.0 ? rel_tol : 1e-10);
    out->dirichlet_energy = r.dirichlet_energy;
    out->curvature_term = r.curvature_term;
    out->mass_term = r.mass_term;
    out->quotient = r.quotient;
    out->alpha = r.alpha;
    out->L = r.L;
  });
}

oblong_status oblong_sweep(const char* config_json, oblong_sweep_row** rows, size_t* count) {
  return wrap([&] {
    require_arg(rows != nullptr, "oblong_sweep: rows is NULL");
    require_arg(count != nullptr, "oblong_sweep: count is NULL");
    const auto data = oblong::sweep_rows(parse_config(config_json));
    auto* out =
        static_cast<oblong_sweep_row*>(std::malloc(sizeof(oblong_sweep_row) * data.size()));
    if (!out && !data.empty()) throw std::bad_alloc();
    for (size_t i = 0; i < data.size(); ++i) {
      const auto& r = data[i];
      out[i] = oblong_sweep_row{r.L,      r.alpha,   r.area_hat,           r.lambda0_hat,
                                r.lambda1_hat, r.lambda1_normalized, r.rhs_eq1, r.rhs_eq3,
                                r.hersch_ratio};
    }
    *rows = out;
    *count = data.size();
  });
}

void oblong_rows_free(oblong_sweep_row* rows) { std::free(rows); }

oblong_status oblong_sweep_csv(const char* config_json, char** csv) {
  return wrap([&] {
    require_arg(csv != nullptr, "oblong_sweep_csv: csv is NULL");
    *csv = dup_string(oblong::sweep_csv(oblong::sweep_rows(parse_config(config_json))));
  });
}

oblong_status oblong_verify_run(const char* config_json, char** report_json, int* all_pass) {
  return wrap([&] {
    const oblong::ClaimReport report = oblong::full_report(parse_config(config_json));
    if (report_json) *report_json = dup_string(report.to_json_string());
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

void oblong_string_free(char* s) { std::free(s); }

}  // extern "C"
