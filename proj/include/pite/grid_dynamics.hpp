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
 * Real-space (first-quantized) dynamics on a qubit grid.
 *
 * A particle register of n_d qubits encodes the wave function at
 * x_k = k dx. The centered QFT maps |k> to the momentum eigenstate with
 * signed index k - N/2, which turns the kinetic propagator into a diagonal
 * phase gate. The first-order split is
 *
 *     U(dt) = CQFT . U_kin(dt) . CQFT^dagger . U_int(dt) . U_pot(dt)
 *
 * (rightmost factor applied first). Phase gates are applied as direct
 * diagonal multiplications.
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pite/hamiltonian.hpp"
#include "pite/pite.hpp"
#include "pite/statevector.hpp"

namespace pite {

enum class Direction { Forward, Inverse };

/// Textbook QFT, |x> -> N^{-1/2} sum_y e^{2 pi i x y / N} |y>, built from
/// Hadamards, controlled phases and a final qubit reversal.
void apply_qft(Register &reg, std::span<const int> qubits, Direction dir);
/// CQFT = QFT . (X on the register's most significant qubit).
void apply_cqft(Register &reg, std::span<const int> qubits, Direction dir);
[[nodiscard]] StateVector cqft(const StateVector &state, std::span<const int> qubits,
                               Direction dir);

/// Diagonal unit-modulus gate in the computational basis of its targets.
class PhaseGate {
  public:
    /// e^{-i E_j t} with E_j = (j - N/2)^2 dp^2 / (2 m).
    [[nodiscard]] static PhaseGate kinetic(const Grid1D &grid, double t);
    /// e^{-i V_k t}.
    [[nodiscard]] static PhaseGate potential(std::span<const double> table, double t);
    /// e^{-i v(x_k, x_k') t} on |k> (x) |k'>; table is row-major N x N.
    [[nodiscard]] static PhaseGate interaction(std::span<const double> table, double t);

    [[nodiscard]] std::span<const Complex> phases() const noexcept { return phases_; }
    [[nodiscard]] PhaseGate adjoint() const;
    void apply(Register &reg, std::span<const int> targets,
               std::span<const std::pair<int, int>> controls = {}) const;

  private:
    explicit PhaseGate(std::vector<Complex> p) : phases_(std::move(p)) {}
    std::vector<Complex> phases_;
};

[[nodiscard]] StateVector kinetic_phase(const StateVector &state, std::span<const int> reg,
                                        double dt, const Grid1D &grid);
[[nodiscard]] StateVector potential_phase(const StateVector &state, std::span<const int> reg,
                                          double dt, std::span<const double> table);
[[nodiscard]] StateVector potential_phase(const StateVector &state, std::span<const int> reg,
                                          double dt, const PotentialSpec &pot,
                                          const Grid1D &grid);

/// v(x_k, x_k') on every pair of grid points, row-major.
[[nodiscard]] std::vector<double>
interaction_table(const Grid1D &grid, const std::function<double(double, double)> &v);

/// Soft-Coulomb repulsion 1 / sqrt((x - y)^2 + 1).
[[nodiscard]] double soft_coulomb(double x, double y);

[[nodiscard]] StateVector interaction_phase(const StateVector &state, std::span<const int> reg_a,
                                            std::span<const int> reg_b, double dt,
                                            std::span<const double> table);

/// Normalized (1 - SWAP)/2 projection across two equal registers. Throws
/// ErrorCode::Domain when the antisymmetric part has norm <= 1e-12.
[[nodiscard]] StateVector antisymmetrize(const StateVector &state, std::span<const int> reg_a,
                                         std::span<const int> reg_b);

/// J(l; lambda) = (1/N) e^{-i pi l} sum_s exp(-i lambda (s - N/2)^2 + 2 pi i l s / N)
/// for -N < l < N.
[[nodiscard]] Complex kinetic_propagator(long ell, double lambda, std::size_t n_points);

/// One or two particles on a shared grid. Particle p occupies qubits
/// [p n_d, (p + 1) n_d).
struct GridModel {
    Grid1D grid;
    int particles = 1;
    /// External potential at each grid point (already shifted if desired).
    std::vector<double> potential;
    /// Pair interaction table (N x N, row-major), empty for none.
    std::vector<double> interaction;

    [[nodiscard]] int n_qubits() const { return particles * grid.n_d(); }
    [[nodiscard]] std::vector<int> particle_qubits(int p) const;
    void validate() const;
};

[[nodiscard]] GridModel single_particle_model(const Grid1D &grid, const PotentialSpec &pot,
                                              double energy_shift = 0.0);

/// First-order Suzuki-Trotter real-time evolution of a GridModel.
class St1Rte final : public RealTimeEvolution {
  public:
    explicit St1Rte(GridModel model);
    [[nodiscard]] int n_qubits() const override { return model_.n_qubits(); }
    void forward(Register &reg, double dt) const override;
    void backward(Register &reg, double dt) const override;
    [[nodiscard]] const GridModel &model() const noexcept { return model_; }

  private:
    GridModel model_;
};

[[nodiscard]] StateVector rte_st1(const StateVector &state, double dt, const Grid1D &grid,
                                  const PotentialSpec &pot);

/// PITE step with the ST1 evolution where the CQFT^dagger/CQFT pairs shared by
/// the forward and backward branches are executed once, uncontrolled.
class St1PiteCircuit final : public PiteStepper {
  public:
    St1PiteCircuit(GridModel model, const PiteConfig &cfg);
    [[nodiscard]] int n_system_qubits() const override { return model_.n_qubits(); }
    [[nodiscard]] StateVector pre_measurement(const StateVector &psi) const override;

  private:
    GridModel model_;
    PiteConfig cfg_;
};

[[nodiscard]] StepResult st1_pite_step(const StateVector &psi, const GridModel &model,
                                       const PiteConfig &cfg);

} // namespace pite
