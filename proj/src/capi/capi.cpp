// Copyright 2026 The pite-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pite/capi.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "pite/grid_dynamics.hpp"
#include "pite/harness.hpp"
#include "pite/pite.hpp"
#include "pite/thermal.hpp"
#include "pite/two_level.hpp"

struct pite_state {
    pite::StateVector value;
};

struct pite_hamiltonian {
    pite::HermitianOperator value;
};

namespace {

thread_local std::string g_last_error;

pite_status record(pite_status s, const char *what) {
    g_last_error = what;
    return s;
}

// Runs fn, translating exceptions into status codes.
template <class F> pite_status guarded(F &&fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return PITE_OK;
    } catch (const pite::Error &e) {
        return record(static_cast<pite_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return record(PITE_ERR_CAPACITY, "out of memory");
    } catch (const std::exception &e) {
        return record(PITE_ERR_INTERNAL, e.what());
    } catch (...) {
        return record(PITE_ERR_INTERNAL, "unknown error");
    }
}

void need(const void *p, const char *name) {
    if (p == nullptr) {
        pite::fail(pite::ErrorCode::InvalidArgument, std::string(name) + " is NULL");
    }
}

std::vector<pite::Complex> read_complex(const double *data, std::size_t count) {
    std::vector<pite::Complex> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = {data[2 * i], data[2 * i + 1]};
    }
    return out;
}

} // namespace

extern "C" {

const char *pite_version(void) { return "1.0.0"; }

const char *pite_last_error(void) { return g_last_error.c_str(); }

int pite_exit_status(pite_status status) {
    if (status == PITE_OK) {
        return 0;
    }
    if (status == PITE_ERR_INTERNAL) {
        return 1;
    }
    return pite::harness::exit_status(static_cast<pite::ErrorCode>(status));
}

pite_status pite_state_create_basis(int n_qubits, uint64_t index, pite_state **out) {
    return guarded([&] {
        need(out, "out");
        *out = new pite_state{pite::StateVector::basis(n_qubits, index)};
    });
}

pite_status pite_state_create(const double *amps, size_t dim, pite_state **out) {
    return guarded([&] {
        need(amps, "amps");
        need(out, "out");
        *out = new pite_state{pite::StateVector::from_amplitudes(read_complex(amps, dim))};
    });
}

void pite_state_destroy(pite_state *state) { delete state; }

pite_status pite_state_qubits(const pite_state *state, int *n_qubits) {
    return guarded([&] {
        need(state, "state");
        need(n_qubits, "n_qubits");
        *n_qubits = state->value.n_qubits();
    });
}

pite_status pite_state_amplitudes(const pite_state *state, double *out, size_t dim) {
    return guarded([&] {
        need(state, "state");
        need(out, "out");
        if (dim != state->value.dimension()) {
            pite::fail(pite::ErrorCode::InvalidArgument, "buffer size does not match the state");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            out[2 * i] = state->value.amplitude(i).real();
            out[2 * i + 1] = state->value.amplitude(i).imag();
        }
    });
}

pite_status pite_state_fidelity(const pite_state *a, const pite_state *b, double *out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = pite::fidelity(a->value, b->value);
    });
}

pite_status pite_hamiltonian_create(const double *matrix, size_t dim, pite_hamiltonian **out) {
    return guarded([&] {
        need(matrix, "matrix");
        need(out, "out");
        if (dim == 0 || dim > 4096) {
            pite::fail(pite::ErrorCode::InvalidArgument, "dimension must lie in [1, 4096]");
        }
        const auto n = static_cast<Eigen::Index>(dim);
        pite::Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto k = static_cast<std::size_t>(i * n + j);
                m(i, j) = {matrix[2 * k], matrix[2 * k + 1]};
            }
        }
        *out = new pite_hamiltonian{pite::HermitianOperator::from_matrix(m)};
    });
}

pite_status pite_hamiltonian_create_grid(int n_qubits, int kind, const double *params,
                                         size_t n_params, pite_hamiltonian **out) {
    return guarded([&] {
        need(out, "out");
        if (n_params > 0) {
            need(params, "params");
        }
        auto at = [&](std::size_t i, double fallback) {
            return i < n_params ? params[i] : fallback;
        };
        pite::PotentialSpec pot;
        double length = 0.0;
        double mass = 1.0;
        if (kind == 0) {
            pite::HarmonicPotential h{at(0, 1.0), at(1, 10.0), at(2, 1.0)};
            length = h.length;
            mass = h.mass;
            pot = h;
        } else if (kind == 1) {
            pite::DoubleWellPotential d{at(0, 18.0), at(1, 3.0), at(2, 0.25), at(3, 0.5)};
            length = d.length;
            pot = d;
        } else {
            pite::fail(pite::ErrorCode::InvalidArgument, "unknown potential kind");
        }
        const pite::Grid1D grid(n_qubits, length, mass);
        *out = new pite_hamiltonian{pite::build_grid_hamiltonian(grid, pot)};
    });
}

void pite_hamiltonian_destroy(pite_hamiltonian *h) { delete h; }

pite_status pite_hamiltonian_dimension(const pite_hamiltonian *h, size_t *dim) {
    return guarded([&] {
        need(h, "h");
        need(dim, "dim");
        *dim = static_cast<std::size_t>(h->value.dimension());
    });
}

pite_status pite_hamiltonian_eigenvalues(const pite_hamiltonian *h, double *out, size_t dim) {
    return guarded([&] {
        need(h, "h");
        need(out, "out");
        if (dim != static_cast<std::size_t>(h->value.dimension())) {
            pite::fail(pite::ErrorCode::InvalidArgument, "buffer size does not match");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            out[i] = h->value.eigenvalues()(static_cast<Eigen::Index>(i));
        }
    });
}

pite_status pite_hamiltonian_eigenstate(const pite_hamiltonian *h, size_t index,
                                        pite_state **out) {
    return guarded([&] {
        need(h, "h");
        need(out, "out");
        *out = new pite_state{h->value.eigenstate(static_cast<Eigen::Index>(index))};
    });
}

pite_status pite_hamiltonian_shift(const pite_hamiltonian *h, double e0, pite_hamiltonian **out) {
    return guarded([&] {
        need(h, "h");
        need(out, "out");
        *out = new pite_hamiltonian{pite::shift_energy(h->value, e0)};
    });
}

pite_status pite_step(const pite_state *psi, const pite_hamiltonian *h, double m0, double dtau,
                      pite_circuit circuit, double *p_success, pite_state **success) {
    return guarded([&] {
        need(psi, "psi");
        need(h, "h");
        pite::StepResult r = [&] {
            if (circuit == PITE_CIRCUIT_EXACT) {
                return pite::exact_pite_step(psi->value, h->value,
                                             pite::PiteConfig(m0, dtau, pite::CircuitKind::Exact));
            }
            if (circuit == PITE_CIRCUIT_APPROX) {
                const pite::SpectralRte rte(h->value);
                return pite::approx_pite_step(
                    psi->value, rte, pite::PiteConfig(m0, dtau, pite::CircuitKind::Approx));
            }
            pite::fail(pite::ErrorCode::InvalidArgument, "unknown circuit kind");
        }();
        if (p_success != nullptr) {
            *p_success = r.success_probability;
        }
        if (success != nullptr) {
            *success = new pite_state{std::move(r.success_state)};
        }
    });
}

pite_status pite_survival_probability(const pite_state *psi, const pite_hamiltonian *h, double m0,
                                      double dtau, int n_steps, double *out) {
    return guarded([&] {
        need(psi, "psi");
        need(h, "h");
        need(out, "out");
        *out = pite::survival_probability(psi->value, h->value, pite::PiteConfig(m0, dtau),
                                          n_steps);
    });
}

pite_status pite_two_level_exact(double e_gs, double e_ex, double m0, double dtau, double w,
                                 double *p, double *w_next) {
    return guarded([&] {
        const auto r = pite::two_level::exact_step(w, {e_gs, e_ex, m0, dtau});
        if (p != nullptr) {
            *p = r.probability;
        }
        if (w_next != nullptr) {
            *w_next = r.next_weight;
        }
    });
}

pite_status pite_two_level_approx(double e_gs, double e_ex, double m0, double dtau, double w,
                                  double *p, double *w_next) {
    return guarded([&] {
        const auto r = pite::two_level::approx_step(w, {e_gs, e_ex, m0, dtau});
        if (p != nullptr) {
            *p = r.probability;
        }
        if (w_next != nullptr) {
            *w_next = r.next_weight;
        }
    });
}

pite_status pite_gibbs_prepare(const pite_hamiltonian *h, double beta, double m0,
                               double *success_probability, double *z_estimate,
                               double *free_energy, double *rho, size_t dim) {
    return guarded([&] {
        need(h, "h");
        const pite::GibbsResult g = pite::gibbs_prepare(h->value, beta, m0);
        if (rho != nullptr) {
            const auto n = g.reduced_density.rows();
            if (dim != static_cast<std::size_t>(n)) {
                pite::fail(pite::ErrorCode::InvalidArgument, "density buffer size mismatch");
            }
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    const auto k = static_cast<std::size_t>(i * n + j);
                    rho[2 * k] = g.reduced_density(i, j).real();
                    rho[2 * k + 1] = g.reduced_density(i, j).imag();
                }
            }
        }
        if (success_probability != nullptr) {
            *success_probability = g.success_probability;
        }
        if (z_estimate != nullptr) {
            *z_estimate = g.z_estimate;
        }
        if (free_energy != nullptr) {
            *free_energy = g.free_energy;
        }
    });
}

pite_status pite_kinetic_propagator(long ell, double lambda, size_t n_points, double *re,
                                    double *im) {
    return guarded([&] {
        need(re, "re");
        need(im, "im");
        const pite::Complex j = pite::kinetic_propagator(ell, lambda, n_points);
        *re = j.real();
        *im = j.imag();
    });
}

pite_status pite_list_experiments(char *buf, size_t cap, size_t *needed) {
    return guarded([&] {
        std::string names;
        for (const auto &e : pite::harness::experiments()) {
            names += e.name + "\t" + e.summary + "\n";
        }
        if (needed != nullptr) {
            *needed = names.size() + 1;
        }
        if (buf != nullptr && cap > 0) {
            const std::size_t n = std::min(cap - 1, names.size());
            std::memcpy(buf, names.data(), n);
            buf[n] = '\0';
        }
    });
}

pite_status pite_config_validate(const char *config_path) {
    return guarded([&] {
        need(config_path, "config_path");
        pite::harness::check_preconditions(pite::harness::load_config(config_path));
    });
}

pite_status pite_run_experiment(const char *config_path, const char *out_dir,
                                const uint64_t *seed, const char *mode) {
    return guarded([&] {
        need(config_path, "config_path");
        need(out_dir, "out_dir");
        pite::harness::RunConfig cfg = pite::harness::load_config(config_path);
        if (seed != nullptr) {
            cfg.seed = *seed;
        }
        if (mode != nullptr) {
            cfg.mode = pite::harness::parse_mode(mode);
        }
        (void)pite::harness::run_experiment(cfg, out_dir);
    });
}

} // extern "C"
