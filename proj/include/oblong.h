/* C interface of the oblong spectral-geometry toolkit.
 *
 * Every fallible call returns an oblong_status; out-parameters are written
 * only on OBLONG_OK. Objects returned through ** out-parameters are owned by
 * the caller and released with the matching *_free function. All functions
 * are thread-safe as long as each handle is used from one thread at a time;
 * error messages are thread-local.
 */
#ifndef OBLONG_H
#define OBLONG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oblong_status {
  OBLONG_OK = 0,
  OBLONG_INVALID_ARGUMENT = 1, /* precondition violated; nothing was computed */
  OBLONG_NUMERICS = 2,         /* tolerance not met or numerical degeneracy */
  OBLONG_INTERNAL = 3          /* unexpected failure */
} oblong_status;

/* Toolkit version string, e.g. "0.1.0". */
const char* oblong_version(void);

/* Stable name of a status code, e.g. "OBLONG_NUMERICS". */
const char* oblong_status_name(oblong_status status);

/* Message of the most recent failure on the calling thread ("" when none).
 * The pointer stays valid until the next failing call on the same thread. */
const char* oblong_last_error(void);

/* ---------------------------------------------------------------- metrics */

typedef struct oblong_metric oblong_metric;

/* Member of the oblong conformal family with half-length L > 0, at unit
 * scale (normalized = 0) or rescaled to area 4 pi (normalized != 0). */
oblong_status oblong_metric_oblong(double L, int normalized, oblong_metric** out);

/* The unit round sphere in cylinder coordinates. */
oblong_status oblong_metric_sphere(oblong_metric** out);

void oblong_metric_free(oblong_metric* metric);

/* Area by adaptive quadrature, relative error <= rel_tol (rel_tol <= 0
 * selects the default 1e-10). */
oblong_status oblong_metric_area(const oblong_metric* metric, double rel_tol, double* out);

/* Gauss curvature at cylinder coordinate t. */
oblong_status oblong_metric_curvature(const oblong_metric* metric, double t, double* out);

/* Conformal area density c e^{-2 psi(t)}. */
oblong_status oblong_metric_weight(const oblong_metric* metric, double t, double* out);

/* Copies the human-readable descriptor (e.g. "oblong(L=10)") into buf
 * (NUL-terminated, truncated to cap). *len receives the full untruncated
 * length. buf may be NULL when cap is 0. */
oblong_status oblong_metric_describe(const oblong_metric* metric, char* buf, size_t cap,
                                     size_t* len);

/* Exact area of the unit-scale oblong metric:
 * 4 pi (L coth L - 1) / (1 - e^{-2L})^2. Returns NaN for L <= 0. */
double oblong_area_closed_form(double L);

/* ---------------------------------------------------------------- spectra */

typedef struct oblong_spectrum oblong_spectrum;

typedef struct oblong_solver_options {
  int n;          /* interior grid points per Fourier mode */
  double T;       /* truncation half-width; 0 = family default */
  double abs_tol; /* eigenvalue bisection tolerance */
  int bc;         /* 0 = per-mode defaults (Neumann k=0, Dirichlet k>=1),
                     1 = Dirichlet for every mode, 2 = Neumann for every mode */
  int k_max;      /* highest Fourier mode to scan; -1 = automatic cutoff
                     (automatic requires alpha >= 0) */
} oblong_solver_options;

/* Fills opts with the defaults: n=4000, T=0, abs_tol=1e-8, bc=0, k_max=-1. */
void oblong_solver_options_default(oblong_solver_options* opts);

/* The num_values smallest eigenvalues of -Laplace + alpha K on the metric,
 * merged across Fourier modes and expanded with multiplicity (each k >= 1
 * eigenvalue counts twice, for its cos and sin sectors). opts may be NULL
 * for defaults. */
oblong_status oblong_global_spectrum(const oblong_metric* metric, double alpha, int num_values,
                                     const oblong_solver_options* opts, oblong_spectrum** out);

void oblong_spectrum_free(oblong_spectrum* spectrum);

/* Number of reported eigenvalues (== num_values on success). */
int oblong_spectrum_size(const oblong_spectrum* spectrum);

oblong_status oblong_spectrum_value(const oblong_spectrum* spectrum, int index, double* out);

/* Full entry: eigenvalue, Fourier mode k, multiplicity (1 or 2), index
 * within the mode-k spectrum, and parity of the eigenfunction in t
 * (0 = even, 1 = odd, -1 = unknown). Any out-pointer may be NULL. */
oblong_status oblong_spectrum_entry(const oblong_spectrum* spectrum, int index, double* value,
                                    int* k, int* multiplicity, int* sector_index, int* parity);

double oblong_spectrum_lambda0(const oblong_spectrum* spectrum);

/* NaN when only one value was requested. */
double oblong_spectrum_lambda1(const oblong_spectrum* spectrum);

/* Numerics actually used: truncation, grid size, tolerance, and the first
 * Fourier mode that was NOT solved. Any out-pointer may be NULL. */
oblong_status oblong_spectrum_numerics(const oblong_spectrum* spectrum, double* T, int* n,
                                       double* abs_tol, int* mode_cutoff);

/* Diagnostic flags ("short-truncation", "degenerate-gap"). */
int oblong_spectrum_flag_count(const oblong_spectrum* spectrum);

/* NULL when index is out of range; valid while the spectrum lives. */
const char* oblong_spectrum_flag(const oblong_spectrum* spectrum, int index);

/* lambda_1^alpha of the area-normalized oblong metric via the exact rescale
 * of the unit-scale spectrum. Fails with OBLONG_NUMERICS when the underlying
 * spectrum is flagged. */
oblong_status oblong_lambda1_normalized(double L, double alpha,
                                        const oblong_solver_options* opts, double* out);

/* --------------------------------------------------------------- rayleigh */

typedef struct oblong_rayleigh_report {
  double dirichlet_energy; /* Int |grad u|^2 dmu = 2 pi Int (u')^2 dt */
  double curvature_term;   /* Int K u^2 dmu = 2 pi Int psi'' u^2 dt */
  double mass_term;        /* Int u^2 dmu */
  double quotient;         /* (dirichlet_energy + alpha curvature_term) / mass_term */
  double alpha;
  double L; /* oblong half-length; NaN for other families */
} oblong_rayleigh_report;

/* Variational upper bound for lambda_1 on an even metric: the Rayleigh
 * quotient of the canonical odd test function (the cutoff sine at the
 * half-length for the oblong family, tanh t otherwise). rel_tol <= 0 selects
 * the default 1e-10. */
oblong_status oblong_upper_bound_lambda1(const oblong_metric* metric, double alpha,
                                         double rel_tol, oblong_rayleigh_report* out);

/* --------------------------------------------------------- sweep / verify */

typedef struct oblong_sweep_row {
  double L;
  double alpha;
  double area_hat; /* closed-form area at unit scale */
  double lambda0_hat;
  double lambda1_hat;
  double lambda1_normalized;
  double rhs_eq1;      /* sqrt(1 / (2 lambda1_normalized)) */
  double rhs_eq3;      /* sqrt((2 + alpha) / (4 lambda1_normalized)) */
  double hersch_ratio; /* lambda1_normalized / (2 + alpha) */
} oblong_sweep_row;

/* Runs the (L, alpha) sweep described by the JSON config document (NULL or
 * "" = defaults; same schema as the verify config). *rows receives a
 * malloc'd array of *count rows, L-major then alpha; free with
 * oblong_rows_free. */
oblong_status oblong_sweep(const char* config_json, oblong_sweep_row** rows, size_t* count);

void oblong_rows_free(oblong_sweep_row* rows);

/* Same sweep serialized as CSV (header line, 17-significant-digit floats,
 * LF endings). Free with oblong_string_free. */
oblong_status oblong_sweep_csv(const char* config_json, char** csv);

/* Runs the full claim suite. *report_json receives the serialized report
 * (free with oblong_string_free); *all_pass receives 1 when every claim
 * passed, else 0. Either out-pointer may be NULL. */
oblong_status oblong_verify_run(const char* config_json, char** report_json, int* all_pass);

void oblong_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* OBLONG_H */
