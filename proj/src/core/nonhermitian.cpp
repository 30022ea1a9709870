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

#include "pite/nonhermitian.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pite {

namespace {

RealVector m_values(const HermitianOperator &plus, double dt, double m0) {
    if (!(m0 > 0.0 && m0 < 1.0)) {
        fail(ErrorCode::InvalidArgument, "m0 must satisfy 0 < m0 < 1");
    }
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        fail(ErrorCode::InvalidArgument, "time step must be finite and non-negative");
    }
    RealVector mu = (plus.eigenvalues().array() * dt).exp() * m0;
    const double top = mu.maxCoeff();
    if (!(top < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "m0 exp((L + L^dagger) dt) has eigenvalue " << top << " >= 1; lower m0 or dt";
        fail(ErrorCode::SpectralBound, msg.str());
    }
    return mu;
}

} // namespace

GeneratorL::GeneratorL(Matrix l) : l_(std::move(l)) {
    if (l_.rows() != l_.cols() || l_.rows() < 2 ||
        !std::has_single_bit(static_cast<std::size_t>(l_.rows()))) {
        fail(ErrorCode::InvalidArgument, "generator must be square with power-of-two dimension");
    }
    plus_ = l_ + l_.adjoint();
    minus_ = l_ - l_.adjoint();
}

int GeneratorL::n_qubits() const noexcept {
    return std::countr_zero(static_cast<std::size_t>(l_.rows()));
}

NonHermitianOps build_nonhermitian_ops(const GeneratorL &l, double dt, double m0) {
    const auto plus = HermitianOperator::from_matrix(l.hermitian_part());
    const RealVector mu = m_values(plus, dt, m0);
    // i (L - L^dagger) is Hermitian; U = exp(-i K dt) with K = i (L - L^dagger).
    const auto k = HermitianOperator::from_matrix(kI * l.antihermitian_part());
    Matrix u = k.function([dt](double v) { return std::exp(-kI * v * dt); });
    return {HermitianOperator::from_spectrum(mu, plus.eigenvectors()), std::move(u)};
}

NonHermitianCircuit::NonHermitianCircuit(const GeneratorL &l, double dt, double m0)
    : n_(l.n_qubits()), m0_(m0), ops_(build_nonhermitian_ops(l, dt, m0)),
      dilation_(ops_.m.eigenvectors(), ops_.m.eigenvalues(), m0) {}

StateVector NonHermitianCircuit::pre_measurement(const StateVector &psi) const {
    if (psi.n_qubits() != n_) {
        fail(ErrorCode::InvalidArgument, "input state size does not match the generator");
    }
    Register reg(tensor(psi, StateVector::basis(2, 0)));
    const int b = n_;
    const int a[] = {n_ + 1};
    std::vector<int> system(static_cast<std::size_t>(n_));
    std::iota(system.begin(), system.end(), 0);

    reg.apply_matrix(gates::hadamard(), a);
    reg.apply_on_branch(a[0], 0, [&](Register &sub) { dilation_.apply(sub, system, b); });
    const std::pair<int, int> on1[] = {{a[0], 1}};
    const int anc_b[] = {b};
    reg.apply_matrix(ops_.u, system, on1);
    reg.apply_matrix(gates::ry(2.0 * std::acos(m0_)), anc_b, on1);
    reg.apply_matrix(gates::hadamard(), a);
    return reg.to_state();
}

StepResult NonHermitianCircuit::step(const StateVector &psi) const {
    const StateVector pre = pre_measurement(psi);
    const int anc[] = {n_, n_ + 1};
    StepResult r;
    auto success = measure(pre, anc, PostSelect{0});
    r.success_probability = success.probability;
    r.success_state = std::move(success.post_state);
    r.failure_probability = 1.0 - r.success_probability;
    r.pre_measurement_state = pre;
    return r;
}

StepResult nonhermitian_step(const StateVector &psi, const GeneratorL &l, double dt, double m0) {
    return NonHermitianCircuit(l, dt, m0).step(psi);
}

} // namespace pite
