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

#include "pite/thermal.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "pite/pite.hpp"

namespace pite {

namespace {

void check_beta(double beta, int slices) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        fail(ErrorCode::InvalidArgument, "inverse temperature must be positive and finite");
    }
    if (slices < 1) {
        fail(ErrorCode::InvalidArgument, "slice count must be at least one");
    }
}

// Thermofield register after `slices` exact steps, before the last
// ancilla measurement is taken. Returns the post-selected state and the
// accumulated success probability.
std::pair<StateVector, double> evolve_half(const HermitianOperator &h, double beta, double m0,
                                           int slices) {
    check_beta(beta, slices);
    const int n = h.n_qubits();
    const PiteConfig cfg(m0, beta / (2.0 * slices));
    const ExactPiteCircuit circuit(h, cfg);
    std::vector<int> system(static_cast<std::size_t>(n));
    std::iota(system.begin(), system.end(), n);
    const int anc[] = {2 * n};

    StateVector psi = max_entangled_state(n);
    double probability = 1.0;
    for (int s = 0; s < slices; ++s) {
        Register reg(tensor(psi, StateVector::basis(1, 0)));
        circuit.apply(reg, system, 2 * n);
        auto rec = measure(reg.to_state(), anc, PostSelect{0});
        probability *= rec.probability;
        psi = std::move(rec.post_state);
    }
    return {std::move(psi), probability};
}

} // namespace

StateVector max_entangled_state(int n) {
    if (n < 1) {
        fail(ErrorCode::InvalidArgument, "register size must be positive");
    }
    if (2 * n > max_qubits()) {
        fail(ErrorCode::Capacity, "maximally entangled pair exceeds the qubit capacity");
    }
    Register reg(StateVector::basis(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        const int env[] = {i};
        reg.apply_matrix(gates::hadamard(), env);
    }
    for (int i = 0; i < n; ++i) {
        const int pair[] = {i, n + i};
        reg.apply_matrix(gates::cnot(), pair);
    }
    return reg.to_state();
}

Matrix reduced_density(const StateVector &state, int n_traced) {
    if (n_traced < 0 || n_traced >= state.n_qubits()) {
        fail(ErrorCode::InvalidArgument, "traced register must leave at least one qubit");
    }
    const auto rows = Eigen::Index{1} << n_traced;
    const auto cols = static_cast<Eigen::Index>(state.dimension()) / rows;
    // Row-major reshape: row = traced index, column = kept index.
    Matrix a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            a(r, c) = state.amplitude(static_cast<std::size_t>(r * cols + c));
        }
    }
    return a.transpose() * a.conjugate();
}

GibbsResult gibbs_prepare(const HermitianOperator &h, double beta, double m0, int slices) {
    const int n = h.n_qubits();
    auto [psi, probability] = evolve_half(h, beta, m0, slices);
    GibbsResult r;
    r.reduced_density = reduced_density(psi, n);
    r.success_probability = probability;
    r.z_estimate = std::ldexp(probability, n) / std::pow(m0, 2 * slices);
    r.free_energy = -std::log(r.z_estimate) / beta;
    return r;
}

PartitionEstimate estimate_partition_sampled(const HermitianOperator &h, double beta, double m0,
                                             std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        fail(ErrorCode::InvalidArgument, "at least one shot is required");
    }
    check_beta(beta, 1);
    const int n = h.n_qubits();
    const ExactPiteCircuit circuit(h, PiteConfig(m0, beta / 2.0));
    std::vector<int> system(static_cast<std::size_t>(n));
    std::iota(system.begin(), system.end(), n);
    Register reg(tensor(max_entangled_state(n), StateVector::basis(1, 0)));
    circuit.apply(reg, system, 2 * n);
    const StateVector pre = reg.to_state();
    const int anc[] = {2 * n};

    Rng rng(seed);
    PartitionEstimate est;
    est.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (measure(pre, anc, rng).outcome == 0) {
            ++est.successes;
        }
    }
    const double p = static_cast<double>(est.successes) / static_cast<double>(shots);
    const double scale = std::ldexp(1.0, n) / (m0 * m0);
    est.z_hat = scale * p;
    est.stderr_z = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    return est;
}

double von_neumann_entropy(const Matrix &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double l = solver.eigenvalues()(i);
        if (l > 1e-15) {
            s -= l * std::log(l);
        }
    }
    return s;
}

} // namespace pite
