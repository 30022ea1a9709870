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

/**
 * @file
 * Gibbs-state preparation by imaginary-time evolution of one half of a
 * maximally entangled pair of registers.
 *
 * Register layout for n system qubits: environment qubits [0, n), system
 * qubits [n, 2n), PITE ancilla 2n. The environment is traced out.
 */
#pragma once

#include <cstdint>

#include "pite/hamiltonian.hpp"
#include "pite/statevector.hpp"

namespace pite {

/// 2^{-n/2} sum_j |j>_env |j>_sys, built with Hadamards on the environment
/// followed by CNOT env_i -> sys_i.
[[nodiscard]] StateVector max_entangled_state(int n);

struct GibbsResult {
    /// Reduced system state in the success branch.
    Matrix reduced_density;
    double success_probability = 0.0;
    /// 2^n P / m0^{2 slices}.
    double z_estimate = 0.0;
    /// -ln(z_estimate) / beta.
    double free_energy = 0.0;
};

/// One exact PITE step with dtau = beta / 2 on the system half. `slices` > 1
/// splits beta into equal steps (experimental).
[[nodiscard]] GibbsResult gibbs_prepare(const HermitianOperator &h, double beta, double m0,
                                        int slices = 1);

struct PartitionEstimate {
    double z_hat = 0.0;
    double stderr_z = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t shots = 0;
};

/// Samples the ancilla `shots` times and converts the success frequency to
/// Z. Deterministic for a given seed.
[[nodiscard]] PartitionEstimate estimate_partition_sampled(const HermitianOperator &h, double beta,
                                                           double m0, std::uint64_t shots,
                                                           std::uint64_t seed);

/// Partial trace over the leading `n_traced` qubits of a pure state.
[[nodiscard]] Matrix reduced_density(const StateVector &state, int n_traced);

/// -Tr rho ln rho, eigenvalues below 1e-15 ignored.
[[nodiscard]] double von_neumann_entropy(const Matrix &rho);

} // namespace pite
