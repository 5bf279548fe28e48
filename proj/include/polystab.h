/* polystab: passivity-preserving discretization and stability diagnostics
 * for 1D wave systems coupled to heat conduction or boundary oscillators.
 *
 * All entry points return PS_OK (0) on success, PS_ERR_VALIDATION (1) for
 * invalid input, or PS_ERR_RUNTIME (2) for numerical/IO failures; on failure
 * ps_last_error() describes the problem (thread-local).  Objects are opaque
 * handles released with their ps_*_free function; strings returned through
 * char** out-parameters are released with ps_string_free.
 */
#ifndef POLYSTAB_H
#define POLYSTAB_H

#ifdef __cplusplus
extern "C" {
#endif

#define PS_OK 0
#define PS_ERR_VALIDATION 1
#define PS_ERR_RUNTIME 2

typedef struct ps_model ps_model;
typedef struct ps_trace ps_trace;
typedef struct ps_scan ps_scan;

const char* ps_version(void);
const char* ps_last_error(void);
void ps_string_free(char* s);

/* Model: built from a strict JSON config, e.g.
 *   {"model":"wave-heat","N":100,"rho":"1","T":"1","t_final":30}
 * Keys: model ("wave-heat"|"acoustic"), N, rho, T (expressions in x),
 * m, d, k, beta (oscillator), dt, t_final, snapshot_every, family
 * ("default"|"zero"), out_csv.  Unknown keys are rejected. */
int ps_model_create(const char* config_json, ps_model** out);
void ps_model_free(ps_model* m);
int ps_model_dim(const ps_model* m, long* out_dim);

/* Passivity certificate: per-block KYP residuals plus the largest eigenvalue
 * of sym(M_e A_e) for the coupled system; *out_pass is 1 when every residual
 * is within tolerance.  The JSON report is deterministic. */
int ps_model_passivity_report(const ps_model* m, int* out_pass, char** out_json);

/* Implicit-midpoint simulation using the config's dt, t_final, family and
 * snapshot_every; energies are recorded at every step. */
int ps_model_simulate(const ps_model* m, ps_trace** out);

/* Weighted resolvent-norm scan s -> ||M^{1/2} (isI - A_e)^{-1} M^{-1/2}||.
 * use_peak_scan != 0 sweeps with step pilot_ds and refines each resonance
 * peak (points is ignored); otherwise evaluates `points` grid points
 * (log-spaced for s0 > 0, linear from 0). */
int ps_model_resolvent_scan(const ps_model* m, double s0, double s_max, int points,
                            int use_peak_scan, double pilot_ds, ps_scan** out);

/* Closed-form Re P(is) of the coupling block selected by the config:
 * heat impedance for "wave-heat", oscillator impedance for "acoustic". */
int ps_transfer_scan(const char* config_json, double s0, double s_max, int points,
                     ps_scan** out);

/* Traces ------------------------------------------------------------------ */
int ps_trace_rows(const ps_trace* t, long* out_rows);
int ps_trace_get(const ps_trace* t, long row, double* out_t, double* out_e_total,
                 double* out_e_block1, double* out_e_block2);
int ps_trace_write_csv(const ps_trace* t, const char* path);
int ps_trace_read_csv(const char* path, ps_trace** out);
void ps_trace_free(ps_trace* t);

/* Log-log fit of E_total over t in [t1, t2]; JSON report
 * {"alpha":...,"constant":...,"window":[t1,t2],"r2":...}. */
int ps_trace_decay_fit(const ps_trace* t, double t1, double t2, char** out_json);

/* Scans -------------------------------------------------------------------- */
int ps_scan_len(const ps_scan* s, long* out_len);
int ps_scan_get(const ps_scan* s, long i, double* out_s, double* out_value);
int ps_scan_write_csv(const ps_scan* s, const char* path);
void ps_scan_free(ps_scan* s);

/* Log-log power-law fit over scan points with s in [w1, w2]. */
int ps_scan_fit_power(const ps_scan* s, double w1, double w2, char** out_json);

/* Certified lower bound: eta0 = min value*(1+s^alpha) over s >= s0. */
int ps_scan_fit_lower_bound(const ps_scan* s, double alpha, double s0, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* POLYSTAB_H */
