// Command-line front end. Talks to the toolkit exclusively through the C
// API (oblong.h); everything here is argument handling and output formatting.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "oblong.h"

namespace {

// ---- formatting helpers (17 significant digits, LF endings) ----

std::string jnum(double x) {
  if (!(x == x)) return "null";  // NaN; JSON has no non-finite numbers
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  const std::string s = buf;
  if (s == "inf" || s == "-inf") return "null";
  return s;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

void fail_status(const char* what, oblong_status st) {
  std::cerr << what << ": " << oblong_status_name(st) << ": " << oblong_last_error() << "\n";
}

int status_exit_code(oblong_status st) { return st == OBLONG_INVALID_ARGUMENT ? 2 : 1; }

// Relative --out paths honor the OBLONG_OUTPUT_DIR environment variable.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("OBLONG_OUTPUT_DIR");
  if (!dir || !*dir) return path;
  std::string d = dir;
  if (d.back() != '/') d += '/';
  return d + path;
}

// Writes to --out (resolved) or stdout when no path was given.
bool emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return true;
  }
  const std::string resolved = resolve_out(out_path);
  std::ofstream f(resolved, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << resolved << "\n";
    return false;
  }
  f << content;
  return static_cast<bool>(f);
}

// ---- spectrum ----

struct SpectrumArgs {
  std::string family = "oblong";
  double L = 0.0;
  bool L_set = false;
  double alpha = 0.0;
  int num = 2;
  int n = 4000;
  double T = 0.0;
  double abs_tol = 1e-8;
  std::string bc = "auto";
  int k_max = -1;
  bool normalized = false;
  bool normalized_set = false;
  std::string format = "json";
  std::string out;
};

const char* parity_name(int parity) {
  return parity == 0 ? "even" : parity == 1 ? "odd" : "none";
}

int run_spectrum(const SpectrumArgs& a) {
  const bool sphere = a.family == "sphere";
  if (!sphere && a.family != "oblong" && a.family != "paper") {
    std::cerr << "usage error: --family must be oblong or sphere\n";
    return 2;
  }
  if (sphere && a.L_set) {
    std::cerr << "usage error: --L applies to the oblong family only\n";
    return 2;
  }
  if (sphere && a.normalized_set) {
    std::cerr << "usage error: --normalized applies to the oblong family only\n";
    return 2;
  }
  if (!sphere && !(a.L > 0.0)) {
    std::cerr << "usage error: --L must be a positive real\n";
    return 2;
  }
  if (a.num < 1 || a.n < 3) {
    std::cerr << "usage error: --num must be >= 1 and --n >= 3\n";
    return 2;
  }
  int bc_code = 0;
  if (a.bc == "dirichlet")
    bc_code = 1;
  else if (a.bc == "neumann")
    bc_code = 2;
  else if (a.bc != "auto") {
    std::cerr << "usage error: --bc must be auto, dirichlet, or neumann\n";
    return 2;
  }
  if (a.format != "json" && a.format != "csv") {
    std::cerr << "usage error: --format must be json or csv\n";
    return 2;
  }

  oblong_metric* metric = nullptr;
  oblong_status st = sphere ? oblong_metric_sphere(&metric)
                            : oblong_metric_oblong(a.L, a.normalized ? 1 : 0, &metric);
  if (st != OBLONG_OK) {
    fail_status("spectrum", st);
    return status_exit_code(st);
  }

  oblong_solver_options opts;
  oblong_solver_options_default(&opts);
  opts.n = a.n;
  opts.T = a.T;
  opts.abs_tol = a.abs_tol;
  opts.bc = bc_code;
  opts.k_max = a.k_max;

  oblong_spectrum* spec = nullptr;
  st = oblong_global_spectrum(metric, a.alpha, a.num, &opts, &spec);
  if (st != OBLONG_OK) {
    fail_status("spectrum", st);
    oblong_metric_free(metric);
    return status_exit_code(st);
  }

  char describe[128];
  size_t describe_len = 0;
  oblong_metric_describe(metric, describe, sizeof(describe), &describe_len);

  double T_used = 0.0, tol_used = 0.0;
  int n_used = 0, mode_cutoff = 0;
  oblong_spectrum_numerics(spec, &T_used, &n_used, &tol_used, &mode_cutoff);
  const std::string bc_k0 = bc_code == 0 ? "neumann" : (bc_code == 1 ? "dirichlet" : "neumann");
  const std::string bc_k_pos =
      bc_code == 0 ? "dirichlet" : (bc_code == 1 ? "dirichlet" : "neumann");

  const int size = oblong_spectrum_size(spec);
  const int flag_count = oblong_spectrum_flag_count(spec);

  std::string outstr;
  if (a.format == "csv") {
    outstr = "index,value,k,multiplicity,sector_index,parity\n";
    for (int i = 0; i < size; ++i) {
      double value = 0.0;
      int k = 0, mult = 0, sector = 0, parity = -1;
      oblong_spectrum_entry(spec, i, &value, &k, &mult, &sector, &parity);
      outstr += std::to_string(i) + "," + jnum(value) + "," + std::to_string(k) + "," +
                std::to_string(mult) + "," + std::to_string(sector) + "," +
                parity_name(parity) + "\n";
    }
  } else {
    std::string s = "{\n";
    s += "  \"metric\": " + jstr(describe) + ",\n";
    s += "  \"alpha\": " + jnum(a.alpha) + ",\n";
    s += "  \"entries\": [\n";
    for (int i = 0; i < size; ++i) {
      double value = 0.0;
      int k = 0, mult = 0, sector = 0, parity = -1;
      oblong_spectrum_entry(spec, i, &value, &k, &mult, &sector, &parity);
      s += std::string("    {\"value\": ") + jnum(value) + ", \"k\": " + std::to_string(k) +
           ", \"multiplicity\": " + std::to_string(mult) +
           ", \"sector_index\": " + std::to_string(sector) + ", \"parity\": \"" +
           parity_name(parity) + "\"}";
      s += (i + 1 < size) ? ",\n" : "\n";
    }
    s += "  ],\n";
    s += "  \"lambda0\": " + jnum(oblong_spectrum_lambda0(spec)) + ",\n";
    s += "  \"lambda1\": " + jnum(oblong_spectrum_lambda1(spec)) + ",\n";
    s += "  \"numerics\": {\"T\": " + jnum(T_used) + ", \"n\": " + std::to_string(n_used) +
         ", \"abs_tol\": " + jnum(tol_used) + ", \"mode_cutoff\": " + std::to_string(mode_cutoff) +
         ", \"bc_k0\": \"" + bc_k0 + "\", \"bc_k_positive\": \"" + bc_k_pos + "\"},\n";
    s += "  \"flags\": [";
    for (int i = 0; i < flag_count; ++i) {
      s += jstr(oblong_spectrum_flag(spec, i));
      if (i + 1 < flag_count) s += ", ";
    }
    s += "]\n}\n";
    outstr = s;
  }

  const bool wrote = emit(outstr, a.out);
  oblong_spectrum_free(spec);
  oblong_metric_free(metric);
  if (!wrote) return 1;
  return flag_count > 0 ? 1 : 0;
}

// ---- sweep ----

struct SweepArgs {
  std::vector<double> L_list;
  std::vector<double> alpha_list;
  int n = 4000;
  double eigen_tol = 1e-8;
  double quad_tol = 1e-10;
  std::string format = "csv";
  std::string out;
};

std::string sweep_config_json(const std::vector<double>& L_list,
                              const std::vector<double>& alpha_list, int n, double eigen_tol,
                              double quad_tol) {
  nlohmann::json cfg;
  if (!L_list.empty()) cfg["L_values"] = L_list;
  if (!alpha_list.empty()) cfg["alpha_values"] = alpha_list;
  cfg["numerics"] = {{"n", n}, {"eigen_abs_tol", eigen_tol}, {"quad_rel_tol", quad_tol}};
  return cfg.dump();
}

int run_sweep(const SweepArgs& a) {
  if (a.format != "json" && a.format != "csv") {
    std::cerr << "usage error: --format must be json or csv\n";
    return 2;
  }
  const std::string cfg =
      sweep_config_json(a.L_list, a.alpha_list, a.n, a.eigen_tol, a.quad_tol);

  std::string outstr;
  if (a.format == "csv") {
    char* csv = nullptr;
    const oblong_status st = oblong_sweep_csv(cfg.c_str(), &csv);
    if (st != OBLONG_OK) {
      fail_status("sweep", st);
      return status_exit_code(st);
    }
    outstr = csv;
    oblong_string_free(csv);
  } else {
    oblong_sweep_row* rows = nullptr;
    size_t count = 0;
    const oblong_status st = oblong_sweep(cfg.c_str(), &rows, &count);
    if (st != OBLONG_OK) {
      fail_status("sweep", st);
      return status_exit_code(st);
    }
    std::string s = "[\n";
    for (size_t i = 0; i < count; ++i) {
      const oblong_sweep_row& r = rows[i];
      s += "  {\"L\": " + jnum(r.L) + ", \"alpha\": " + jnum(r.alpha) +
           ", \"area_hat\": " + jnum(r.area_hat) + ", \"lambda0_hat\": " + jnum(r.lambda0_hat) +
           ", \"lambda1_hat\": " + jnum(r.lambda1_hat) +
           ", \"lambda1_normalized\": " + jnum(r.lambda1_normalized) +
           ", \"rhs_eq1\": " + jnum(r.rhs_eq1) + ", \"rhs_eq3\": " + jnum(r.rhs_eq3) +
           ", \"hersch_ratio\": " + jnum(r.hersch_ratio) + "}";
      s += (i + 1 < count) ? ",\n" : "\n";
    }
    s += "]\n";
    oblong_rows_free(rows);
    outstr = s;
  }
  return emit(outstr, a.out) ? 0 : 1;
}

// ---- rayleigh ----

struct RayleighArgs {
  double L = 0.0;
  double alpha = 0.0;
  double rel_tol = 1e-10;
  int n = 4000;
  std::string out;
};

int run_rayleigh(const RayleighArgs& a) {
  if (!(a.L > 0.0)) {
    std::cerr << "usage error: --L must be a positive real\n";
    return 2;
  }
  oblong_metric* metric = nullptr;
  oblong_status st = oblong_metric_oblong(a.L, 0, &metric);
  if (st != OBLONG_OK) {
    fail_status("rayleigh", st);
    return status_exit_code(st);
  }

  oblong_rayleigh_report report;
  st = oblong_upper_bound_lambda1(metric, a.alpha, a.rel_tol, &report);
  if (st != OBLONG_OK) {
    fail_status("rayleigh", st);
    oblong_metric_free(metric);
    return status_exit_code(st);
  }

  oblong_solver_options opts;
  oblong_solver_options_default(&opts);
  opts.n = a.n;
  oblong_spectrum* spec = nullptr;
  st = oblong_global_spectrum(metric, a.alpha, 2, &opts, &spec);
  if (st != OBLONG_OK) {
    fail_status("rayleigh", st);
    oblong_metric_free(metric);
    return status_exit_code(st);
  }
  const double lambda1 = oblong_spectrum_lambda1(spec);

  std::string s = "{\n";
  s += "  \"metric\": " + jstr("oblong(L=" + jnum(a.L) + ")") + ",\n";
  s += "  \"L\": " + jnum(a.L) + ",\n";
  s += "  \"alpha\": " + jnum(a.alpha) + ",\n";
  s += "  \"dirichlet_energy\": " + jnum(report.dirichlet_energy) + ",\n";
  s += "  \"curvature_term\": " + jnum(report.curvature_term) + ",\n";
  s += "  \"mass_term\": " + jnum(report.mass_term) + ",\n";
  s += "  \"quotient\": " + jnum(report.quotient) + ",\n";
  s += "  \"lambda1_hat\": " + jnum(lambda1) + ",\n";
  s += "  \"quotient_minus_lambda1\": " + jnum(report.quotient - lambda1) + "\n";
  s += "}\n";

  const int flag_count = oblong_spectrum_flag_count(spec);
  oblong_spectrum_free(spec);
  oblong_metric_free(metric);
  if (!emit(s, a.out)) return 1;
  return flag_count > 0 ? 1 : 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string config_path;
  std::string out;
  std::vector<double> L_list;
  std::vector<double> alpha_list;
  int n = 0;            // 0 = keep config value
  double eigen_tol = 0.0;
  double quad_tol = 0.0;
  double adm_mass = 0.0;
};

int run_verify(const VerifyArgs& a) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!a.config_path.empty()) {
    std::ifstream f(a.config_path);
    if (!f) {
      std::cerr << "usage error: cannot open config file: " << a.config_path << "\n";
      return 2;
    }
    try {
      f >> cfg;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "usage error: config parse: " << e.what() << "\n";
      return 2;
    }
    if (!cfg.is_object()) {
      std::cerr << "usage error: config must be a JSON object\n";
      return 2;
    }
  }
  // Command-line overrides win over file values.
  if (!a.L_list.empty()) cfg["L_values"] = a.L_list;
  if (!a.alpha_list.empty()) cfg["alpha_values"] = a.alpha_list;
  if (a.adm_mass > 0.0) cfg["adm_mass"] = a.adm_mass;
  if (a.n > 0) cfg["numerics"]["n"] = a.n;
  if (a.eigen_tol > 0.0) cfg["numerics"]["eigen_abs_tol"] = a.eigen_tol;
  if (a.quad_tol > 0.0) cfg["numerics"]["quad_rel_tol"] = a.quad_tol;

  char* report_json = nullptr;
  int all_pass = 0;
  const oblong_status st = oblong_verify_run(cfg.dump().c_str(), &report_json, &all_pass);
  if (st != OBLONG_OK) {
    fail_status("verify", st);
    return status_exit_code(st);
  }
  const std::string report = report_json;
  oblong_string_free(report_json);

  // Human-readable verdict lines on stderr; the report itself goes to --out
  // (or stdout when no --out was given).
  try {
    const nlohmann::json doc = nlohmann::json::parse(report);
    for (const auto& claim : doc.at("claims"))
      std::cerr << (claim.at("pass").get<bool>() ? "PASS " : "FAIL ")
                << claim.at("id").get<std::string>() << "\n";
  } catch (const nlohmann::json::exception&) {
    // summary is best-effort; the report was still produced
  }

  if (!emit(report, a.out)) return 1;
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral verification toolkit for oblong conformal metrics on the 2-sphere"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  CLI::App* sp = app.add_subcommand("spectrum", "Low spectrum of -Laplace + alpha K");
  sp->add_option("--family", sa.family, "Metric family: oblong or sphere (default oblong)");
  CLI::Option* l_opt = sp->add_option("--L", sa.L, "Half-length of the oblong metric");
  CLI::Option* norm_opt =
      sp->add_option("--normalized", sa.normalized, "Rescale the metric to area 4pi (true/false)");
  sp->add_option("--alpha", sa.alpha, "Curvature coupling alpha (default 0)");
  sp->add_option("--num", sa.num, "Number of eigenvalues, counted with multiplicity (default 2)");
  sp->add_option("--n", sa.n, "Interior grid points per Fourier mode (default 4000)");
  sp->add_option("--T", sa.T, "Truncation half-width (default: family choice)");
  sp->add_option("--abs-tol", sa.abs_tol, "Eigenvalue bisection tolerance (default 1e-8)");
  sp->add_option("--bc", sa.bc, "Boundary conditions: auto, dirichlet, or neumann");
  sp->add_option("--k-max", sa.k_max, "Highest Fourier mode (-1 = automatic cutoff)");
  sp->add_option("--format", sa.format, "Output format: json or csv");
  sp->add_option("--out", sa.out, "Output file (default stdout)");

  SweepArgs wa;
  CLI::App* sw = app.add_subcommand("sweep", "Sweep (L, alpha) and tabulate spectral data");
  sw->add_option("--L-list", wa.L_list, "Comma-separated L values (ascending)")->delimiter(',');
  sw->add_option("--alpha-list", wa.alpha_list, "Comma-separated alpha values")->delimiter(',');
  sw->add_option("--n", wa.n, "Interior grid points per Fourier mode (default 4000)");
  sw->add_option("--eigen-tol", wa.eigen_tol, "Eigenvalue bisection tolerance (default 1e-8)");
  sw->add_option("--quad-tol", wa.quad_tol, "Quadrature relative tolerance (default 1e-10)");
  sw->add_option("--format", wa.format, "Output format: csv or json (default csv)");
  sw->add_option("--out", wa.out, "Output file (default stdout)");

  RayleighArgs ra;
  CLI::App* ry = app.add_subcommand("rayleigh", "Cutoff-sine Rayleigh quotient vs lambda1");
  ry->add_option("--L", ra.L, "Half-length of the oblong metric")->required();
  ry->add_option("--alpha", ra.alpha, "Curvature coupling alpha (default 0)");
  ry->add_option("--rel-tol", ra.rel_tol, "Quadrature relative tolerance (default 1e-10)");
  ry->add_option("--n", ra.n, "Grid points for the eigensolver comparison (default 4000)");
  ry->add_option("--out", ra.out, "Output file (default stdout)");

  VerifyArgs va;
  CLI::App* vf = app.add_subcommand("verify", "Run the full claim suite and write the report");
  vf->add_option("--config", va.config_path, "JSON config file (defaults when omitted)");
  vf->add_option("--out", va.out, "Report file (default stdout)");
  vf->add_option("--L-list", va.L_list, "Override: comma-separated L values")->delimiter(',');
  vf->add_option("--alpha-list", va.alpha_list, "Override: comma-separated alpha values")
      ->delimiter(',');
  vf->add_option("--n", va.n, "Override: grid points per mode");
  vf->add_option("--eigen-tol", va.eigen_tol, "Override: eigenvalue tolerance");
  vf->add_option("--quad-tol", va.quad_tol, "Override: quadrature tolerance");
  vf->add_option("--adm-mass", va.adm_mass, "Override: reference mass (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // anything but help/version is a usage error
  }

  sa.L_set = l_opt->count() > 0;
  sa.normalized_set = norm_opt->count() > 0;

  if (sp->parsed()) return run_spectrum(sa);
  if (sw->parsed()) return run_sweep(wa);
  if (ry->parsed()) return run_rayleigh(ra);
  if (vf->parsed()) return run_verify(va);
  return 2;
}
