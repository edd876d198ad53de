/* esfv: entropy stable finite volume solver for the compressible Euler
 * equations on the periodic unit torus, with stability, consistency, and
 * measure-valued convergence diagnostics.
 *
 * C interface of the shared library. All state lives behind opaque handles;
 * every fallible call returns an esfv_status and leaves a human-readable
 * message retrievable through esfv_last_error() on failure.
 */
#ifndef ESFV_H
#define ESFV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes in the bundled CLI. */
typedef enum esfv_status {
  ESFV_OK = 0,
  ESFV_ERR_CONFIG = 2,   /* configuration rejected */
  ESFV_ERR_RUNTIME = 3,  /* runtime admissibility failure (vacuum etc.) */
  ESFV_ERR_PROPERTY = 4, /* a property of the check suite failed */
  ESFV_ERR_IO = 5,       /* file system failure */
  ESFV_ERR_ARGUMENT = 6  /* null handle or malformed argument */
} esfv_status;

const char* esfv_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* esfv_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration: flat key=value store with dotted keys, validated when
 * a run or study is started. */
typedef struct esfv_config esfv_config;

esfv_config* esfv_config_new(void);
void esfv_config_free(esfv_config* cfg);

/* Merges keys parsed from a configuration file into cfg. */
esfv_status esfv_config_load(esfv_config* cfg, const char* path);
esfv_status esfv_config_set(esfv_config* cfg, const char* key, const char* value);

/* Returns the stored value or NULL when the key is unset. The pointer is
 * invalidated by the next mutation of cfg. */
const char* esfv_config_get(const esfv_config* cfg, const char* key);

/* ------------------------------------------------------------------ */
/* Orchestration. Artifacts are written under out_dir (series.csv,
 * summary.json, snap_<time>.dat/.csv, study_report.json); pass NULL to use
 * the config's output.dir. verbose != 0 prints progress tables to stdout. */
esfv_status esfv_run(const esfv_config* cfg, const char* out_dir, int verbose);
esfv_status esfv_convergence(const esfv_config* cfg, const char* out_dir, int verbose);
esfv_status esfv_dmv(const esfv_config* cfg, const char* out_dir, int verbose);

/* Runs the property suite of all modules; one pass/fail line per property
 * when verbose, JSON report at report_path unless NULL. Returns
 * ESFV_ERR_PROPERTY when any property fails. */
esfv_status esfv_check(const char* report_path, int verbose);

/* ------------------------------------------------------------------ */
/* Stepwise simulation handle for embedding. */
typedef struct esfv_sim esfv_sim;

/* Validates cfg, projects the initial data, verifies admissibility. NULL on
 * failure (see esfv_last_error). */
esfv_sim* esfv_sim_new(const esfv_config* cfg);
void esfv_sim_free(esfv_sim* sim);

double esfv_sim_time(const esfv_sim* sim);
long long esfv_sim_cells(const esfv_sim* sim);
int esfv_sim_components(const esfv_sim* sim);

/* Advances with CFL-limited explicit steps, landing exactly on t_target. */
esfv_status esfv_sim_advance(esfv_sim* sim, double t_target);

/* Copies the conservative cell values (lexicographic cell-major layout,
 * components contiguous per cell); len must equal cells * components. */
esfv_status esfv_sim_state(const esfv_sim* sim, double* buffer, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* ESFV_H */
