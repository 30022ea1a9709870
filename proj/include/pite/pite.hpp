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
 * Probabilistic imaginary-time evolution (PITE).
 *
 * One step dilates M = m0 exp(-H dtau) with a single ancilla. The ancilla is
 * always the least significant qubit of the (n + 1)-qubit register, so the
 * success branch (ancilla |0>) sits on even basis indices.
 *
 * Two circuits are provided:
 *  - the exact circuit H, W, anti-controlled exp(i kappa Theta), controlled
 *    exp(-i kappa Theta), W^dagger, where Theta is built spectrally;
 *  - the first-order circuit that replaces the Theta rotations by forward and
 *    backward real-time evolution for the rescaled time s1 dtau followed by
 *    Rz(-2 theta0) on the ancilla. It only needs a RealTimeEvolution.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pite/common.hpp"
#include "pite/hamiltonian.hpp"
#include "pite/statevector.hpp"

namespace pite {

enum class CircuitKind { Exact, Approx };

class PiteConfig {
  public:
    /// Requires 0 < m0 < 1, m0 != 1/sqrt2 and dtau >= 0.
    PiteConfig(double m0, double dtau, CircuitKind circuit = CircuitKind::Exact);

    [[nodiscard]] double m0() const noexcept { return m0_; }
    [[nodiscard]] double dtau() const noexcept { return dtau_; }
    [[nodiscard]] CircuitKind circuit() const noexcept { return circuit_; }
    /// sgn(m0 - 1/sqrt2).
    [[nodiscard]] int kappa() const noexcept { return kappa_; }
    /// kappa * arccos((m0 + sqrt(1 - m0^2)) / sqrt2).
    [[nodiscard]] double theta0() const noexcept { return theta0_; }
    /// m0 / sqrt(1 - m0^2).
    [[nodiscard]] double s1() const noexcept { return s1_; }

  private:
    double m0_;
    double dtau_;
    CircuitKind circuit_;
    int kappa_;
    double theta0_;
    double s1_;
};

/// arccos((mu + sqrt(1 - mu^2)) / sqrt2) for one eigenvalue mu of M.
[[nodiscard]] double theta_of_m(double mu);

/// Theta with the eigenvectors of h and eigenvalues theta(m0 e^{-lambda dtau}).
/// Throws ErrorCode::SpectralBound if any m0 e^{-lambda dtau} >= 1.
[[nodiscard]] HermitianOperator build_theta(const HermitianOperator &h, const PiteConfig &cfg);

/// Black-box real-time evolution exp(-i H dt) on a register.
class RealTimeEvolution {
  public:
    virtual ~RealTimeEvolution() = default;
    [[nodiscard]] virtual int n_qubits() const = 0;
    virtual void forward(Register &reg, double dt) const = 0;
    /// Adjoint of forward(reg, dt).
    virtual void backward(Register &reg, double dt) const = 0;
};

/// exp(-i H dt) from the spectral decomposition of h.
class SpectralRte final : public RealTimeEvolution {
  public:
    explicit SpectralRte(HermitianOperator h) : h_(std::move(h)) {}
    [[nodiscard]] int n_qubits() const override { return h_.n_qubits(); }
    void forward(Register &reg, double dt) const override;
    void backward(Register &reg, double dt) const override;

  private:
    HermitianOperator h_;
};

/// Wraps a caller-supplied dt -> unitary provider. Each matrix is checked
/// for unitarity (ErrorCode::NonUnitary).
class MatrixRte final : public RealTimeEvolution {
  public:
    MatrixRte(int n_qubits, std::function<Matrix(double)> provider)
        : n_qubits_(n_qubits), provider_(std::move(provider)) {}
    [[nodiscard]] int n_qubits() const override { return n_qubits_; }
    void forward(Register &reg, double dt) const override;
    void backward(Register &reg, double dt) const override;

  private:
    [[nodiscard]] Matrix checked(double dt) const;
    int n_qubits_;
    std::function<Matrix(double)> provider_;
};

struct StepResult {
    double success_probability = 0.0;
    StateVector success_state = StateVector::basis(0, 0);
    /// Empty when the failure branch has vanishing weight.
    std::optional<StateVector> failure_state;
    double failure_probability = 0.0;
    StateVector pre_measurement_state = StateVector::basis(0, 0);
};

/// Produces the pre-measurement (n + 1)-qubit register for an n-qubit input.
class PiteStepper {
  public:
    virtual ~PiteStepper() = default;
    [[nodiscard]] virtual int n_system_qubits() const = 0;
    [[nodiscard]] virtual StateVector pre_measurement(const StateVector &psi) const = 0;
    [[nodiscard]] StepResult step(const StateVector &psi) const;
};

/// Exact single-ancilla dilation of a positive operator M given by its
/// eigenvectors and eigenvalues mu (all in (0, 1)).
class ExactPiteCircuit final : public PiteStepper {
  public:
    ExactPiteCircuit(const HermitianOperator &h, const PiteConfig &cfg);
    /// Dilation of M = vectors diag(mu) vectors^dagger.
    ExactPiteCircuit(const Matrix &vectors, const RealVector &mu, double m0);

    [[nodiscard]] int n_system_qubits() const override { return n_qubits_; }
    [[nodiscard]] StateVector pre_measurement(const StateVector &psi) const override;

    /// Runs the gate sequence on `system` qubits of a larger register with
    /// the given ancilla (initially |0>).
    void apply(Register &reg, std::span<const int> system, int ancilla) const;

  private:
    int n_qubits_;
    Matrix forward_;  // exp(+i kappa Theta)
    Matrix backward_; // exp(-i kappa Theta)
};

/// First-order circuit around a real-time evolution black box.
class ApproxPiteCircuit final : public PiteStepper {
  public:
    ApproxPiteCircuit(std::shared_ptr<const RealTimeEvolution> rte, const PiteConfig &cfg);
    [[nodiscard]] int n_system_qubits() const override { return rte_->n_qubits(); }
    [[nodiscard]] StateVector pre_measurement(const StateVector &psi) const override;

  private:
    std::shared_ptr<const RealTimeEvolution> rte_;
    PiteConfig cfg_;
};

/// Splits an (n + 1)-qubit pre-measurement state on its last (ancilla) qubit.
[[nodiscard]] StepResult split_on_ancilla(const StateVector &pre);

[[nodiscard]] StepResult exact_pite_step(const StateVector &psi, const HermitianOperator &h,
                                         const PiteConfig &cfg);
[[nodiscard]] StepResult approx_pite_step(const StateVector &psi, const RealTimeEvolution &rte,
                                          const PiteConfig &cfg);

/// Ancilla preparation H then W, shared by every circuit variant.
void prepare_ancilla(Register &reg, int ancilla);

// ---------------------------------------------------------------------------
// Trajectories

struct TrajectoryOptions {
    /// Draw measurement outcomes instead of always taking the success branch.
    bool sampled = false;
    std::uint64_t seed = 0;
    /// Eigendecomposition used for weights, energy and ground-state fidelity.
    const HermitianOperator *reference = nullptr;
    /// Number of lowest eigenstate weights kept per record.
    std::size_t weight_count = 6;
    bool keep_states = false;
};

struct StateDiagnostics {
    std::vector<double> weights;
    double energy = 0.0;
    double ground_fidelity = 0.0;
};

struct StepRecord {
    int k = 0;
    /// Success probability p_k of the measurement at step k.
    double probability = 0.0;
    /// P_k = prod_{k' <= k} p_{k'}.
    double survival = 0.0;
    bool success = true;
    /// Diagnostics of the input state psi_k.
    StateDiagnostics input;
};

struct Trajectory {
    std::vector<StepRecord> steps;
    /// State after the last successful step.
    StateVector final_state = StateVector::basis(0, 0);
    StateDiagnostics final_diagnostics;
    /// Step index of the first failed measurement in sampled mode, or -1.
    int failed_step = -1;
    /// psi_0 ... psi_final when keep_states is set.
    std::vector<StateVector> states;
};

[[nodiscard]] Trajectory run_trajectory(const StateVector &psi0, const PiteStepper &stepper,
                                        int n_steps, const TrajectoryOptions &options = {});

/// <psi0| M^{2 n_steps} |psi0>, computed spectrally.
[[nodiscard]] double survival_probability(const StateVector &psi0, const HermitianOperator &h,
                                          const PiteConfig &cfg, int n_steps);

[[nodiscard]] StateDiagnostics diagnose(const StateVector &psi, const HermitianOperator &reference,
                                        std::size_t weight_count);

} // namespace pite
