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

#include "pite/pite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pite {

namespace {

constexpr double kZeroBranch = 1e-15;

int kappa_of(double m0) { return m0 > 1.0 / std::sqrt(2.0) ? 1 : -1; }

std::vector<int> iota_qubits(int n) {
    std::vector<int> q(static_cast<std::size_t>(n));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

Register with_ancilla(const StateVector &psi) {
    return Register(tensor(psi, StateVector::basis(1, 0)));
}

void finish_ancilla(Register &reg, int ancilla, double theta0, bool rotate) {
    const int anc[] = {ancilla};
    if (rotate) {
        reg.apply_matrix(gates::rz(-2.0 * theta0), anc);
    }
    reg.apply_matrix(gates::w_gate().adjoint(), anc);
}

} // namespace

PiteConfig::PiteConfig(double m0, double dtau, CircuitKind circuit)
    : m0_(m0), dtau_(dtau), circuit_(circuit) {
    if (!(m0 > 0.0 && m0 < 1.0)) {
        fail(ErrorCode::InvalidArgument, "m0 must satisfy 0 < m0 < 1");
    }
    if (std::abs(m0 - 1.0 / std::sqrt(2.0)) < 1e-12) {
        fail(ErrorCode::InvalidArgument, "m0 must differ from 1/sqrt(2)");
    }
    if (!(dtau >= 0.0) || !std::isfinite(dtau)) {
        fail(ErrorCode::InvalidArgument, "imaginary-time step must be finite and non-negative");
    }
    kappa_ = kappa_of(m0);
    const double root = std::sqrt(1.0 - m0 * m0);
    theta0_ = kappa_ * std::acos(std::min(1.0, (m0 + root) / std::sqrt(2.0)));
    s1_ = m0 / root;
}

double theta_of_m(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        fail(ErrorCode::SpectralBound, "eigenvalue of M outside (0, 1)");
    }
    const double arg = (mu + std::sqrt(1.0 - mu * mu)) / std::sqrt(2.0);
    return std::acos(std::min(1.0, arg));
}

namespace {

RealVector m_spectrum(const HermitianOperator &h, const PiteConfig &cfg) {
    const RealVector &lambda = h.eigenvalues();
    RealVector mu(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        mu(i) = cfg.m0() * std::exp(-lambda(i) * cfg.dtau());
        if (!(mu(i) < 1.0)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "m0 exp(-lambda dtau) = " << mu(i) << " >= 1 for eigenvalue lambda = "
                << lambda(i) << "; shift the energy origin or lower m0";
            fail(ErrorCode::SpectralBound, msg.str());
        }
    }
    return mu;
}

} // namespace

HermitianOperator build_theta(const HermitianOperator &h, const PiteConfig &cfg) {
    const RealVector mu = m_spectrum(h, cfg);
    RealVector theta(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        theta(i) = theta_of_m(mu(i));
    }
    return HermitianOperator::from_spectrum(theta, h.eigenvectors());
}

// ---------------------------------------------------------------------------
// Real-time evolution providers

void SpectralRte::forward(Register &reg, double dt) const {
    const auto q = iota_qubits(reg.n_qubits());
    reg.apply_matrix(h_.function([dt](double l) { return std::exp(-kI * l * dt); }), q);
}

void SpectralRte::backward(Register &reg, double dt) const {
    const auto q = iota_qubits(reg.n_qubits());
    reg.apply_matrix(h_.function([dt](double l) { return std::exp(kI * l * dt); }), q);
}

Matrix MatrixRte::checked(double dt) const {
    Matrix u = provider_(dt);
    const auto dim = Eigen::Index{1} << n_qubits_;
    if (u.rows() != dim || u.cols() != dim) {
        fail(ErrorCode::InvalidArgument, "real-time evolution matrix has the wrong dimension");
    }
    if (!is_unitary(u)) {
        fail(ErrorCode::NonUnitary, "real-time evolution provider returned a non-unitary matrix");
    }
    return u;
}

void MatrixRte::forward(Register &reg, double dt) const {
    reg.apply_matrix(checked(dt), iota_qubits(reg.n_qubits()));
}

void MatrixRte::backward(Register &reg, double dt) const {
    reg.apply_matrix(checked(dt).adjoint(), iota_qubits(reg.n_qubits()));
}

// ---------------------------------------------------------------------------
// Steps

void prepare_ancilla(Register &reg, int ancilla) {
    const int anc[] = {ancilla};
    reg.apply_matrix(gates::hadamard(), anc);
    reg.apply_matrix(gates::w_gate(), anc);
}

StepResult split_on_ancilla(const StateVector &pre) {
    const int anc[] = {pre.n_qubits() - 1};
    const auto probs = outcome_probabilities(pre.amplitudes(), pre.n_qubits(), anc);
    StepResult r;
    auto success = measure(pre, anc, PostSelect{0});
    r.success_probability = success.probability;
    r.success_state = std::move(success.post_state);
    r.failure_probability = probs[1];
    if (probs[1] > kZeroBranch) {
        r.failure_state = measure(pre, anc, PostSelect{1}).post_state;
    }
    r.pre_measurement_state = pre;
    return r;
}

StepResult PiteStepper::step(const StateVector &psi) const {
    return split_on_ancilla(pre_measurement(psi));
}

ExactPiteCircuit::ExactPiteCircuit(const HermitianOperator &h, const PiteConfig &cfg)
    : ExactPiteCircuit(h.eigenvectors(), m_spectrum(h, cfg), cfg.m0()) {}

ExactPiteCircuit::ExactPiteCircuit(const Matrix &vectors, const RealVector &mu,
                                   [[maybe_unused]] double m0)
    : n_qubits_(0) {
    if (vectors.rows() != vectors.cols() || vectors.cols() != mu.size()) {
        fail(ErrorCode::InvalidArgument, "spectral data of M has inconsistent sizes");
    }
    n_qubits_ = std::countr_zero(static_cast<std::size_t>(vectors.rows()));
    Vector plus(mu.size());
    Vector minus(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        // Signed angle: equals kappa * Theta when mu and m0 sit on the same
        // side of 1/sqrt(2), and stays exact when they do not.
        if (!(mu(i) > 0.0 && mu(i) < 1.0)) {
            fail(ErrorCode::SpectralBound, "eigenvalue of M outside (0, 1)");
        }
        const double angle = kPi / 4.0 - std::acos(mu(i));
        plus(i) = std::exp(kI * angle);
        minus(i) = std::exp(-kI * angle);
    }
    forward_ = vectors * plus.asDiagonal() * vectors.adjoint();
    backward_ = vectors * minus.asDiagonal() * vectors.adjoint();
}

void ExactPiteCircuit::apply(Register &reg, std::span<const int> system, int ancilla) const {
    if (static_cast<int>(system.size()) != n_qubits_) {
        fail(ErrorCode::InvalidArgument, "system register size does not match the circuit");
    }
    prepare_ancilla(reg, ancilla);
    const std::pair<int, int> anti[] = {{ancilla, 0}};
    const std::pair<int, int> ctrl[] = {{ancilla, 1}};
    reg.apply_matrix(forward_, system, anti);
    reg.apply_matrix(backward_, system, ctrl);
    finish_ancilla(reg, ancilla, 0.0, false);
}

StateVector ExactPiteCircuit::pre_measurement(const StateVector &psi) const {
    if (psi.n_qubits() != n_qubits_) {
        fail(ErrorCode::InvalidArgument, "input state size does not match the Hamiltonian");
    }
    Register reg = with_ancilla(psi);
    apply(reg, iota_qubits(n_qubits_), n_qubits_);
    return reg.to_state();
}

ApproxPiteCircuit::ApproxPiteCircuit(std::shared_ptr<const RealTimeEvolution> rte,
                                     const PiteConfig &cfg)
    : rte_(std::move(rte)), cfg_(cfg) {
    if (!rte_) {
        fail(ErrorCode::InvalidArgument, "missing real-time evolution provider");
    }
    if (cfg.circuit() != CircuitKind::Approx) {
        fail(ErrorCode::InvalidArgument, "approximate step requires an approx circuit config");
    }
}

StateVector ApproxPiteCircuit::pre_measurement(const StateVector &psi) const {
    const int n = rte_->n_qubits();
    if (psi.n_qubits() != n) {
        fail(ErrorCode::InvalidArgument, "input state size does not match the evolution");
    }
    Register reg = with_ancilla(psi);
    prepare_ancilla(reg, n);
    const double t = cfg_.s1() * cfg_.dtau();
    reg.apply_on_branch(n, 0, [&](Register &b) { rte_->forward(b, t); });
    reg.apply_on_branch(n, 1, [&](Register &b) { rte_->backward(b, t); });
    finish_ancilla(reg, n, cfg_.theta0(), true);
    return reg.to_state();
}

StepResult exact_pite_step(const StateVector &psi, const HermitianOperator &h,
                           const PiteConfig &cfg) {
    return ExactPiteCircuit(h, cfg).step(psi);
}

StepResult approx_pite_step(const StateVector &psi, const RealTimeEvolution &rte,
                            const PiteConfig &cfg) {
    // Non-owning view; the circuit does not outlive this call.
    std::shared_ptr<const RealTimeEvolution> view(&rte, [](const RealTimeEvolution *) {});
    return ApproxPiteCircuit(view, cfg).step(psi);
}

// ---------------------------------------------------------------------------
// Trajectories

StateDiagnostics diagnose(const StateVector &psi, const HermitianOperator &reference,
                          std::size_t weight_count) {
    StateDiagnostics d;
    auto w = reference.weights(psi);
    d.ground_fidelity = w.empty() ? 0.0 : w.front();
    for (std::size_t i = 0; i < w.size(); ++i) {
        d.energy += w[i] * reference.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    w.resize(std::min(w.size(), weight_count));
    d.weights = std::move(w);
    return d;
}

Trajectory run_trajectory(const StateVector &psi0, const PiteStepper &stepper, int n_steps,
                          const TrajectoryOptions &options) {
    if (n_steps < 0) {
        fail(ErrorCode::InvalidArgument, "step count must be non-negative");
    }
    if (psi0.n_qubits() != stepper.n_system_qubits()) {
        fail(ErrorCode::InvalidArgument, "initial state size does not match the stepper");
    }
    Trajectory traj;
    Rng rng(options.seed);
    StateVector psi = psi0;
    double survival = 1.0;
    auto diag = [&](const StateVector &s) {
        return options.reference ? diagnose(s, *options.reference, options.weight_count)
                                 : StateDiagnostics{};
    };
    if (options.keep_states) {
        traj.states.push_back(psi);
    }
    for (int k = 0; k < n_steps; ++k) {
        const StateVector pre = stepper.pre_measurement(psi);
        const int anc[] = {pre.n_qubits() - 1};
        const double p = outcome_probabilities(pre.amplitudes(), pre.n_qubits(), anc)[0];
        survival *= p;
        StepRecord rec;
        rec.k = k;
        rec.probability = p;
        rec.survival = survival;
        rec.input = diag(psi);
        if (options.sampled) {
            auto m = measure(pre, anc, rng);
            if (m.outcome != 0) {
                rec.success = false;
                traj.steps.push_back(std::move(rec));
                traj.failed_step = k;
                break;
            }
            psi = std::move(m.post_state);
        } else {
            psi = measure(pre, anc, PostSelect{0}).post_state;
        }
        traj.steps.push_back(std::move(rec));
        if (options.keep_states) {
            traj.states.push_back(psi);
        }
    }
    traj.final_diagnostics = diag(psi);
    traj.final_state = std::move(psi);
    return traj;
}

double survival_probability(const StateVector &psi0, const HermitianOperator &h,
                            const PiteConfig &cfg, int n_steps) {
    if (n_steps < 0) {
        fail(ErrorCode::InvalidArgument, "step count must be non-negative");
    }
    const RealVector mu = m_spectrum(h, cfg);
    const auto w = h.weights(psi0);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        total += w[i] * std::pow(mu(static_cast<Eigen::Index>(i)), 2 * n_steps);
    }
    return total;
}

} // namespace pite
