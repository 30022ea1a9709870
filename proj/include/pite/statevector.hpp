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
 * Dense statevector simulation.
 *
 * Qubit ordering is big-endian: qubit 0 is the most significant bit of the
 * basis index, so for an n-qubit register qubit q lives at bit (n - 1 - q).
 * Multi-qubit gates take an ordered target list whose first entry is the most
 * significant bit of the gate's local index.
 *
 * StateVector is an immutable, normalized value. Register is the mutable
 * working buffer circuits are executed on; it is allowed to hold unnormalized
 * branches while a circuit is being assembled.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "pite/common.hpp"

namespace pite {

/// Largest register any constructor accepts. Defaults to 24 qubits.
[[nodiscard]] int max_qubits() noexcept;
void set_max_qubits(int n);

/// Deterministic generator used for every sampled measurement.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// sequence is identical across standard library implementations.
[[nodiscard]] double uniform01(Rng &rng);

class StateVector {
  public:
    /// |index> on n qubits.
    [[nodiscard]] static StateVector basis(int n_qubits, std::uint64_t index);
    /// Normalizes the input; throws on zero norm or non power-of-two length.
    [[nodiscard]] static StateVector from_amplitudes(std::vector<Complex> amps);
    [[nodiscard]] static StateVector from_vector(const Vector &v);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex amplitude(std::size_t i) const { return amps_.at(i); }
    [[nodiscard]] Vector to_vector() const;
    [[nodiscard]] double norm_squared() const noexcept;

  private:
    StateVector(int n, std::vector<Complex> amps) : n_qubits_(n), amps_(std::move(amps)) {}
    friend class Register;

    int n_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Mutable amplitude buffer. Gate methods act in place and perform no
/// unitarity checks; the free functions below are the checked entry points.
class Register {
  public:
    explicit Register(const StateVector &s) : n_qubits_(s.n_qubits_), amps_(s.amps_) {}
    Register(int n_qubits, std::vector<Complex> amps);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] double norm_squared() const noexcept;

    /// Applies u to targets, optionally only on the branch where every
    /// control qubit holds the paired value.
    void apply_matrix(const Matrix &u, std::span<const int> targets,
                      std::span<const std::pair<int, int>> controls = {});

    /// Multiplies each amplitude by phases[local index of targets].
    void apply_diagonal(std::span<const Complex> phases, std::span<const int> targets,
                        std::span<const std::pair<int, int>> controls = {});

    /// Runs fn on the sub-register where `control` equals `value`. The
    /// sub-register spans the remaining qubits in their original order.
    void apply_on_branch(int control, int value, const std::function<void(Register &)> &fn);

    /// Swaps the contents of two equally sized qubit lists.
    void swap_qubits(std::span<const int> a, std::span<const int> b);

    /// Wraps the buffer as a StateVector. Fails unless the norm is already
    /// within `tolerance` of one, then renormalizes exactly.
    [[nodiscard]] StateVector to_state(double tolerance = 1e-10) const;

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

struct Sampled {
    std::uint64_t seed;
};
struct PostSelect {
    std::uint64_t outcome;
};
using MeasureMode = std::variant<Sampled, PostSelect>;

struct MeasurementRecord {
    /// Outcome bits over the measured qubits, first listed qubit most
    /// significant.
    std::uint64_t outcome = 0;
    double probability = 0.0;
    /// Normalized state of the unmeasured qubits. Measuring every qubit
    /// leaves a zero-qubit state holding a single unit amplitude.
    StateVector post_state = StateVector::basis(0, 0);
};

/// Uniform complex amplitudes in [-1, 1]^2, normalized.
[[nodiscard]] StateVector random_state(int n_qubits, Rng &rng);

[[nodiscard]] StateVector tensor(const StateVector &a, const StateVector &b);
[[nodiscard]] StateVector apply_unitary(const StateVector &state, const Matrix &u,
                                        std::span<const int> targets);
[[nodiscard]] StateVector apply_controlled(const StateVector &state, const Matrix &u, int control,
                                           int control_value, std::span<const int> targets);

/// Born probabilities for every outcome of the listed qubits.
[[nodiscard]] std::vector<double> outcome_probabilities(std::span<const Complex> amps,
                                                        int n_qubits,
                                                        std::span<const int> qubits);

[[nodiscard]] MeasurementRecord measure(const StateVector &state, std::span<const int> qubits,
                                        const MeasureMode &mode);
/// Sampled measurement drawing from a caller-owned generator.
[[nodiscard]] MeasurementRecord measure(const StateVector &state, std::span<const int> qubits,
                                        Rng &rng);

[[nodiscard]] Complex inner_product(const StateVector &a, const StateVector &b);
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);

/// True when ||u^dagger u - I||_max <= tolerance.
[[nodiscard]] bool is_unitary(const Matrix &u, double tolerance = 1e-10);

namespace gates {
[[nodiscard]] Matrix hadamard();
[[nodiscard]] Matrix pauli_x();
/// W = (1/sqrt2) [[1, -i], [1, i]].
[[nodiscard]] Matrix w_gate();
/// diag(e^{-i theta/2}, e^{i theta/2}).
[[nodiscard]] Matrix rz(double theta);
/// [[cos, -sin], [sin, cos]] of theta/2.
[[nodiscard]] Matrix ry(double theta);
[[nodiscard]] Matrix cnot();
} // namespace gates

} // namespace pite
