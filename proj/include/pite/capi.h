/*
 * Copyright 2026 The pite-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libpite.
 *
 * Handles are opaque and owned by the caller once returned; release them
 * with the matching *_destroy function (NULL is accepted). Every fallible
 * call returns a pite_status; on failure pite_last_error() describes the
 * problem until the next call on the same thread.
 *
 * Complex arrays are interleaved (re, im) doubles. Matrices are row-major.
 */
#ifndef PITE_CAPI_H
#define PITE_CAPI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PITE_API __declspec(dllexport)
#else
#define PITE_API __attribute__((visibility("default")))
#endif

typedef enum pite_status {
    PITE_OK = 0,
    PITE_ERR_INVALID_ARGUMENT = 1,
    PITE_ERR_CAPACITY = 2,
    PITE_ERR_NON_UNITARY = 3,
    PITE_ERR_ZERO_PROBABILITY = 4,
    PITE_ERR_SPECTRAL_BOUND = 5,
    PITE_ERR_DOMAIN = 6,
    PITE_ERR_CONFIG = 7,
    PITE_ERR_IO = 8,
    PITE_ERR_INTERNAL = 99
} pite_status;

typedef enum pite_circuit { PITE_CIRCUIT_EXACT = 0, PITE_CIRCUIT_APPROX = 1 } pite_circuit;

typedef struct pite_state pite_state;
typedef struct pite_hamiltonian pite_hamiltonian;

PITE_API const char *pite_version(void);
PITE_API const char *pite_last_error(void);
/* Command-line exit status for a status code: 0 ok, 1 I/O, 2 config, 3 numeric. */
PITE_API int pite_exit_status(pite_status status);

/* States */
PITE_API pite_status pite_state_create_basis(int n_qubits, uint64_t index, pite_state **out);
/* Normalizes the 2^n interleaved amplitudes. */
PITE_API pite_status pite_state_create(const double *amps, size_t dim, pite_state **out);
PITE_API void pite_state_destroy(pite_state *state);
PITE_API pite_status pite_state_qubits(const pite_state *state, int *n_qubits);
/* Copies `dim` interleaved amplitudes; dim must equal the state dimension. */
PITE_API pite_status pite_state_amplitudes(const pite_state *state, double *out, size_t dim);
PITE_API pite_status pite_state_fidelity(const pite_state *a, const pite_state *b, double *out);

/* Hamiltonians */
PITE_API pite_status pite_hamiltonian_create(const double *matrix, size_t dim,
                                             pite_hamiltonian **out);
/* kind 0: harmonic(omega, length, mass); kind 1: double well(length, d, delta, v0). */
PITE_API pite_status pite_hamiltonian_create_grid(int n_qubits, int kind, const double *params,
                                                  size_t n_params, pite_hamiltonian **out);
PITE_API void pite_hamiltonian_destroy(pite_hamiltonian *h);
PITE_API pite_status pite_hamiltonian_dimension(const pite_hamiltonian *h, size_t *dim);
/* Ascending eigenvalues, `dim` entries. */
PITE_API pite_status pite_hamiltonian_eigenvalues(const pite_hamiltonian *h, double *out,
                                                  size_t dim);
PITE_API pite_status pite_hamiltonian_eigenstate(const pite_hamiltonian *h, size_t index,
                                                 pite_state **out);
/* H - e0 I as a new handle. */
PITE_API pite_status pite_hamiltonian_shift(const pite_hamiltonian *h, double e0,
                                            pite_hamiltonian **out);

/* One PITE step. The approx circuit uses exact real-time evolution of h.
 * `success` receives the normalized success state and may be NULL. */
PITE_API pite_status pite_step(const pite_state *psi, const pite_hamiltonian *h, double m0,
                               double dtau, pite_circuit circuit, double *p_success,
                               pite_state **success);

PITE_API pite_status pite_survival_probability(const pite_state *psi, const pite_hamiltonian *h,
                                               double m0, double dtau, int n_steps,
                                               double *out);

/* Two-level closed forms. */
PITE_API pite_status pite_two_level_exact(double e_gs, double e_ex, double m0, double dtau,
                                          double w, double *p, double *w_next);
PITE_API pite_status pite_two_level_approx(double e_gs, double e_ex, double m0, double dtau,
                                           double w, double *p, double *w_next);

/* Gibbs preparation; rho may be NULL, otherwise dim*dim interleaved entries. */
PITE_API pite_status pite_gibbs_prepare(const pite_hamiltonian *h, double beta, double m0,
                                        double *success_probability, double *z_estimate,
                                        double *free_energy, double *rho, size_t dim);

PITE_API pite_status pite_kinetic_propagator(long ell, double lambda, size_t n_points,
                                             double *re, double *im);

/* Experiments */
/* One line per experiment, name and summary separated by a tab. Writes at
 * most `cap` bytes including the terminator and reports the required size
 * in `needed`. */
PITE_API pite_status pite_list_experiments(char *buf, size_t cap, size_t *needed);
/* Parses the config and checks every numeric precondition. */
PITE_API pite_status pite_config_validate(const char *config_path);
/* seed and mode may be NULL to keep the config values. */
PITE_API pite_status pite_run_experiment(const char *config_path, const char *out_dir,
                                         const uint64_t *seed, const char *mode);

#ifdef __cplusplus
}
#endif

#endif /* PITE_CAPI_H */
