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

/* Plain C client of the shared library. Usage: test_capi <config> <out_dir> <bad_config> */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "pite/capi.h"

static int failures = 0;

#define CHECK(cond)                                                                       \
    do {                                                                                  \
        if (!(cond)) {                                                                    \
            fprintf(stderr, "%s:%d: check failed: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    pite_last_error());                                                   \
            ++failures;                                                                   \
        }                                                                                 \
    } while (0)

static void test_two_level(void) {
    double p = 0.0, w = 0.0;
    CHECK(pite_two_level_exact(0.0, 1.0, 0.8, 0.1, 1.0, &p, &w) == PITE_OK);
    CHECK(fabs(p - 0.64 * (1.0 + exp(-0.2)) / 2.0) < 1e-14);
    CHECK(fabs(w - exp(-0.2)) < 1e-14);
    CHECK(pite_two_level_approx(0.0, 1.0, 0.8, 0.1, 0.0, &p, &w) == PITE_OK);
    CHECK(fabs(p - 0.64) < 1e-14);
    CHECK(pite_two_level_exact(0.0, 1.0, 0.8, 0.1, -1.0, &p, &w) == PITE_ERR_INVALID_ARGUMENT);
}

static void test_step(void) {
    /* H = diag(0, 1), psi = (|0> + |1>) / sqrt2. */
    const double h[8] = {0, 0, 0, 0, 0, 0, 1, 0};
    const double r = 1.0 / sqrt(2.0);
    const double amps[4] = {r, 0, r, 0};
    pite_hamiltonian *ham = NULL;
    pite_state *psi = NULL;
    pite_state *out = NULL;
    double p = 0.0, q[4];
    CHECK(pite_hamiltonian_create(h, 2, &ham) == PITE_OK);
    CHECK(pite_state_create(amps, 2, &psi) == PITE_OK);
    CHECK(pite_step(psi, ham, 0.8, 0.1, PITE_CIRCUIT_EXACT, &p, &out) == PITE_OK);
    CHECK(fabs(p - 0.64 * (1.0 + exp(-0.2)) / 2.0) < 1e-12);
    CHECK(pite_state_amplitudes(out, q, 2) == PITE_OK);
    /* Relative weight of |1> shrinks by e^{-2 dtau}. */
    CHECK(fabs((q[2] * q[2] + q[3] * q[3]) / (q[0] * q[0] + q[1] * q[1]) - exp(-0.2)) < 1e-12);
    CHECK(pite_survival_probability(psi, ham, 0.8, 0.1, 1, &p) == PITE_OK);
    CHECK(fabs(p - 0.64 * (1.0 + exp(-0.2)) / 2.0) < 1e-12);
    pite_state_destroy(out);
    pite_state_destroy(psi);
    pite_hamiltonian_destroy(ham);
}

static void test_errors(void) {
    const double bad[6] = {1, 0, 0, 0, 0, 0};
    const double neg[8] = {-5, 0, 0, 0, 0, 0, 0, 0};
    pite_state *s = NULL;
    pite_hamiltonian *h = NULL;
    double p = 0.0;
    CHECK(pite_state_create(bad, 3, &s) == PITE_ERR_INVALID_ARGUMENT);
    CHECK(strlen(pite_last_error()) > 0);
    CHECK(pite_state_create_basis(1, 0, NULL) == PITE_ERR_INVALID_ARGUMENT);
    CHECK(pite_hamiltonian_create(neg, 2, &h) == PITE_OK);
    CHECK(pite_state_create_basis(1, 0, &s) == PITE_OK);
    CHECK(pite_step(s, h, 0.9, 0.5, PITE_CIRCUIT_EXACT, &p, NULL) == PITE_ERR_SPECTRAL_BOUND);
    CHECK(pite_exit_status(PITE_ERR_SPECTRAL_BOUND) == 3);
    CHECK(pite_exit_status(PITE_ERR_CONFIG) == 2);
    CHECK(pite_exit_status(PITE_ERR_IO) == 1);
    pite_state_destroy(s);
    pite_hamiltonian_destroy(h);
}

static void test_grid_and_gibbs(void) {
    const double params[3] = {1.0, 10.0, 1.0};
    pite_hamiltonian *h = NULL;
    pite_hamiltonian *shifted = NULL;
    double e[16], z = 0.0, p = 0.0, f = 0.0, zsum = 0.0, re = 0.0, im = 0.0, sum = 0.0;
    size_t dim = 0;
    long l;
    int i;
    CHECK(pite_hamiltonian_create_grid(4, 0, params, 3, &h) == PITE_OK);
    CHECK(pite_hamiltonian_dimension(h, &dim) == PITE_OK && dim == 16);
    CHECK(pite_hamiltonian_eigenvalues(h, e, 16) == PITE_OK);
    /* Low harmonic levels sit near (k + 1/2) omega. */
    CHECK(fabs(e[0] - 0.5) < 1e-3 && fabs(e[1] - 1.5) < 1e-2);
    CHECK(pite_hamiltonian_shift(h, e[0], &shifted) == PITE_OK);
    CHECK(pite_gibbs_prepare(shifted, 1.0, 0.5, &p, &z, &f, NULL, 0) == PITE_OK);
    for (i = 0; i < 16; ++i) {
        zsum += exp(-(e[i] - e[0]));
    }
    CHECK(fabs(z - zsum) < 1e-9);
    CHECK(fabs(p - 0.25 * zsum / 16.0) < 1e-12);
    CHECK(fabs(f + log(zsum)) < 1e-9);
    for (l = 0; l < 32; ++l) {
        CHECK(pite_kinetic_propagator(l, 0.04, 32, &re, &im) == PITE_OK);
        sum += re;
    }
    CHECK(fabs(sum - 1.0) < 1e-12);
    CHECK(pite_kinetic_propagator(40, 0.04, 32, &re, &im) == PITE_ERR_INVALID_ARGUMENT);
    pite_hamiltonian_destroy(shifted);
    pite_hamiltonian_destroy(h);
}

static void test_harness(const char *config, const char *out_dir, const char *bad) {
    size_t needed = 0;
    char *buf;
    char path[4096];
    FILE *fp;
    const char *mode = "postselect";
    const uint64_t seed = 5;
    CHECK(pite_list_experiments(NULL, 0, &needed) == PITE_OK);
    CHECK(needed > 1);
    buf = malloc(needed);
    CHECK(pite_list_experiments(buf, needed, &needed) == PITE_OK);
    CHECK(strstr(buf, "two_level\t") != NULL);
    CHECK(strstr(buf, "nonhermitian\t") != NULL);
    free(buf);
    CHECK(pite_config_validate(config) == PITE_OK);
    CHECK(pite_config_validate(bad) == PITE_ERR_CONFIG);
    CHECK(pite_run_experiment(config, out_dir, &seed, mode) == PITE_OK);
    snprintf(path, sizeof path, "%s/trajectory.csv", out_dir);
    fp = fopen(path, "r");
    CHECK(fp != NULL);
    if (fp) {
        fclose(fp);
    }
    CHECK(pite_run_experiment(config, out_dir, NULL, "bogus") == PITE_ERR_CONFIG);
}

int main(int argc, char **argv) {
    if (argc != 4) {
        fprintf(stderr, "usage: test_capi <config> <out_dir> <bad_config>\n");
        return 2;
    }
    CHECK(pite_version() != NULL && strlen(pite_version()) > 0);
    test_two_level();
    test_step();
    test_errors();
    test_grid_and_gibbs();
    test_harness(argv[1], argv[2], argv[3]);
    if (failures) {
        fprintf(stderr, "%d checks failed\n", failures);
        return 1;
    }
    printf("all C API checks passed\n");
    return 0;
}
