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
 * Probabilistic evolution under a non-Hermitian generator L with two
 * ancillas.
 *
 * With M = m0 exp((L + L^dagger) dt) and U = exp((L - L^dagger) dt), the
 * pre-measurement amplitude on ancilla outcome |00> is (M + m0 U) psi / 2,
 * which equals m0 (1 + L dt) psi up to O(dt^2).
 *
 * Register layout: system [0, n), dilation ancilla B at n, branch ancilla A
 * at n + 1. A Hadamard on A selects between the exact dilation of M (A = 0)
 * and U together with Ry placing amplitude m0 on B = 0 (A = 1); a closing
 * Hadamard on A recombines the branches.
 */
#pragma once

#include "pite/hamiltonian.hpp"
#include "pite/pite.hpp"
#include "pite/statevector.hpp"

namespace pite {

class GeneratorL {
  public:
    /// Square matrix of power-of-two dimension.
    explicit GeneratorL(Matrix l);

    [[nodiscard]] const Matrix &matrix() const noexcept { return l_; }
    /// L + L^dagger.
    [[nodiscard]] const Matrix &hermitian_part() const noexcept { return plus_; }
    /// L - L^dagger.
    [[nodiscard]] const Matrix &antihermitian_part() const noexcept { return minus_; }
    [[nodiscard]] int n_qubits() const noexcept;

  private:
    Matrix l_;
    Matrix plus_;
    Matrix minus_;
};

struct NonHermitianOps {
    /// m0 exp((L + L^dagger) dt), stored spectrally.
    HermitianOperator m;
    /// exp((L - L^dagger) dt).
    Matrix u;
};

/// Throws ErrorCode::SpectralBound when m0 times the largest eigenvalue of
/// exp((L + L^dagger) dt) is not below one.
[[nodiscard]] NonHermitianOps build_nonhermitian_ops(const GeneratorL &l, double dt, double m0);

class NonHermitianCircuit {
  public:
    NonHermitianCircuit(const GeneratorL &l, double dt, double m0);

    [[nodiscard]] int n_system_qubits() const noexcept { return n_; }
    [[nodiscard]] const NonHermitianOps &ops() const noexcept { return ops_; }
    /// (n + 2)-qubit state before the ancillas are measured.
    [[nodiscard]] StateVector pre_measurement(const StateVector &psi) const;
    /// Post-selects ancilla outcome 00. The failure branch collects the
    /// three other outcomes.
    [[nodiscard]] StepResult step(const StateVector &psi) const;

  private:
    int n_;
    double m0_;
    NonHermitianOps ops_;
    ExactPiteCircuit dilation_;
};

[[nodiscard]] StepResult nonhermitian_step(const StateVector &psi, const GeneratorL &l, double dt,
                                           double m0);

} // namespace pite
