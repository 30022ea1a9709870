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

#include "pite/grid_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pite {

namespace {

void controlled_phase(Register &reg, int a, int b, double phi) {
    const Complex phases[] = {1.0, 1.0, 1.0, std::exp(kI * phi)};
    const int targets[] = {a, b};
    reg.apply_diagonal(phases, targets);
}

void check_register(const Register &reg, std::span<const int> qubits) {
    if (qubits.empty()) {
        fail(ErrorCode::InvalidArgument, "empty register");
    }
    for (int q : qubits) {
        if (q < 0 || q >= reg.n_qubits()) {
            fail(ErrorCode::InvalidArgument, "register qubit out of range");
        }
    }
}

std::vector<int> joined(std::span<const int> a, std::span<const int> b) {
    std::vector<int> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void check_pair(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size() || a.empty()) {
        fail(ErrorCode::InvalidArgument, "particle registers must be non-empty and equal in size");
    }
    for (int q : a) {
        if (std::find(b.begin(), b.end(), q) != b.end()) {
            fail(ErrorCode::InvalidArgument, "particle registers overlap");
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// QFT / CQFT

void apply_qft(Register &reg, std::span<const int> qubits, Direction dir) {
    check_register(reg, qubits);
    const int n = static_cast<int>(qubits.size());
    const Matrix h = gates::hadamard();
    auto swap_ends = [&] {
        for (int j = 0; j < n / 2; ++j) {
            const int a[] = {qubits[static_cast<std::size_t>(j)]};
            const int b[] = {qubits[static_cast<std::size_t>(n - 1 - j)]};
            reg.swap_qubits(a, b);
        }
    };
    auto angle = [](int j, int m) { return 2.0 * kPi / std::ldexp(1.0, m - j + 1); };
    if (dir == Direction::Forward) {
        for (int j = 0; j < n; ++j) {
            const int t[] = {qubits[static_cast<std::size_t>(j)]};
            reg.apply_matrix(h, t);
            for (int m = j + 1; m < n; ++m) {
                controlled_phase(reg, qubits[static_cast<std::size_t>(j)],
                                 qubits[static_cast<std::size_t>(m)], angle(j, m));
            }
        }
        swap_ends();
    } else {
        swap_ends();
        for (int j = n - 1; j >= 0; --j) {
            for (int m = n - 1; m > j; --m) {
                controlled_phase(reg, qubits[static_cast<std::size_t>(j)],
                                 qubits[static_cast<std::size_t>(m)], -angle(j, m));
            }
            const int t[] = {qubits[static_cast<std::size_t>(j)]};
            reg.apply_matrix(h, t);
        }
    }
}

void apply_cqft(Register &reg, std::span<const int> qubits, Direction dir) {
    check_register(reg, qubits);
    const int msb[] = {qubits.front()};
    if (dir == Direction::Forward) {
        reg.apply_matrix(gates::pauli_x(), msb);
        apply_qft(reg, qubits, Direction::Forward);
    } else {
        apply_qft(reg, qubits, Direction::Inverse);
        reg.apply_matrix(gates::pauli_x(), msb);
    }
}

StateVector cqft(const StateVector &state, std::span<const int> qubits, Direction dir) {
    Register reg(state);
    apply_cqft(reg, qubits, dir);
    return reg.to_state();
}

// ---------------------------------------------------------------------------
// Phase gates

PhaseGate PhaseGate::kinetic(const Grid1D &grid, double t) {
    std::vector<Complex> p(grid.points());
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = std::exp(-kI * (grid.kinetic_energy(j) * t));
    }
    return PhaseGate(std::move(p));
}

PhaseGate PhaseGate::potential(std::span<const double> table, double t) {
    std::vector<Complex> p(table.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::exp(-kI * (table[k] * t));
    }
    return PhaseGate(std::move(p));
}

PhaseGate PhaseGate::interaction(std::span<const double> table, double t) {
    return potential(table, t);
}

PhaseGate PhaseGate::adjoint() const {
    std::vector<Complex> p(phases_.size());
    std::transform(phases_.begin(), phases_.end(), p.begin(),
                   [](Complex c) { return std::conj(c); });
    return PhaseGate(std::move(p));
}

void PhaseGate::apply(Register &reg, std::span<const int> targets,
                      std::span<const std::pair<int, int>> controls) const {
    reg.apply_diagonal(phases_, targets, controls);
}

StateVector kinetic_phase(const StateVector &state, std::span<const int> reg, double dt,
                          const Grid1D &grid) {
    Register r(state);
    PhaseGate::kinetic(grid, dt).apply(r, reg);
    return r.to_state();
}

StateVector potential_phase(const StateVector &state, std::span<const int> reg, double dt,
                            std::span<const double> table) {
    Register r(state);
    PhaseGate::potential(table, dt).apply(r, reg);
    return r.to_state();
}

StateVector potential_phase(const StateVector &state, std::span<const int> reg, double dt,
                            const PotentialSpec &pot, const Grid1D &grid) {
    return potential_phase(state, reg, dt, tabulate(pot, grid));
}

std::vector<double> interaction_table(const Grid1D &grid,
                                      const std::function<double(double, double)> &v) {
    const std::size_t n = grid.points();
    std::vector<double> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            table[a * n + b] = v(grid.position(a), grid.position(b));
        }
    }
    return table;
}

double soft_coulomb(double x, double y) { return 1.0 / std::sqrt((x - y) * (x - y) + 1.0); }

StateVector interaction_phase(const StateVector &state, std::span<const int> reg_a,
                              std::span<const int> reg_b, double dt,
                              std::span<const double> table) {
    check_pair(reg_a, reg_b);
    Register r(state);
    PhaseGate::interaction(table, dt).apply(r, joined(reg_a, reg_b));
    return r.to_state();
}

StateVector antisymmetrize(const StateVector &state, std::span<const int> reg_a,
                           std::span<const int> reg_b) {
    check_pair(reg_a, reg_b);
    Register swapped(state);
    swapped.swap_qubits(reg_a, reg_b);
    std::vector<Complex> out(state.dimension());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.5 * (state.amplitude(i) - swapped.amplitudes()[i]);
        norm2 += std::norm(out[i]);
    }
    if (std::sqrt(norm2) <= 1e-12) {
        fail(ErrorCode::Domain, "state has no antisymmetric component");
    }
    return StateVector::from_amplitudes(std::move(out));
}

Complex kinetic_propagator(long ell, double lambda, std::size_t n_points) {
    const long n = static_cast<long>(n_points);
    if (n_points < 2 || ell <= -n || ell >= n) {
        fail(ErrorCode::InvalidArgument, "propagator offset must satisfy -N < l < N");
    }
    Complex sum{0.0, 0.0};
    for (long s = 0; s < n; ++s) {
        const double centered = static_cast<double>(s - n / 2);
        const double arg = -lambda * centered * centered +
                           2.0 * kPi * static_cast<double>(ell * s) / static_cast<double>(n);
        sum += std::exp(kI * arg);
    }
    const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    return sign * sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Grid models and ST1 evolution

std::vector<int> GridModel::particle_qubits(int p) const {
    if (p < 0 || p >= particles) {
        fail(ErrorCode::InvalidArgument, "particle index out of range");
    }
    std::vector<int> q(static_cast<std::size_t>(grid.n_d()));
    std::iota(q.begin(), q.end(), p * grid.n_d());
    return q;
}

void GridModel::validate() const {
    if (particles != 1 && particles != 2) {
        fail(ErrorCode::InvalidArgument, "grid models support one or two particles");
    }
    if (potential.size() != grid.points()) {
        fail(ErrorCode::InvalidArgument, "potential table does not match the grid");
    }
    if (!interaction.empty() &&
        (particles != 2 || interaction.size() != grid.points() * grid.points())) {
        fail(ErrorCode::InvalidArgument, "interaction table needs two particles and N^2 entries");
    }
    if (particles == 2 && grid.n_d() > 5) {
        fail(ErrorCode::Capacity, "two-particle grids are limited to 5 qubits per particle");
    }
}

GridModel single_particle_model(const Grid1D &grid, const PotentialSpec &pot,
                                double energy_shift) {
    GridModel m{grid, 1, tabulate(pot, grid), {}};
    for (double &v : m.potential) {
        v -= energy_shift;
    }
    return m;
}

namespace {

// Gate bundle of one ST1 factor set at a fixed time step.
struct St1Gates {
    PhaseGate kin;
    PhaseGate pot;
    std::optional<PhaseGate> inter;
};

St1Gates make_gates(const GridModel &m, double dt) {
    St1Gates g{PhaseGate::kinetic(m.grid, dt), PhaseGate::potential(m.potential, dt),
               std::nullopt};
    if (!m.interaction.empty()) {
        g.inter = PhaseGate::interaction(m.interaction, dt);
    }
    return g;
}

void apply_real_space(const GridModel &m, const St1Gates &g, Register &reg, bool adjoint,
                      std::span<const std::pair<int, int>> controls) {
    for (int p = 0; p < m.particles; ++p) {
        (adjoint ? g.pot.adjoint() : g.pot).apply(reg, m.particle_qubits(p), controls);
    }
    if (g.inter) {
        const auto both = joined(m.particle_qubits(0), m.particle_qubits(1));
        (adjoint ? g.inter->adjoint() : *g.inter).apply(reg, both, controls);
    }
}

void apply_kinetic(const GridModel &m, const St1Gates &g, Register &reg, bool adjoint,
                   std::span<const std::pair<int, int>> controls) {
    for (int p = 0; p < m.particles; ++p) {
        (adjoint ? g.kin.adjoint() : g.kin).apply(reg, m.particle_qubits(p), controls);
    }
}

void cqft_all(const GridModel &m, Register &reg, Direction dir) {
    for (int p = 0; p < m.particles; ++p) {
        apply_cqft(reg, m.particle_qubits(p), dir);
    }
}

} // namespace

St1Rte::St1Rte(GridModel model) : model_(std::move(model)) { model_.validate(); }

void St1Rte::forward(Register &reg, double dt) const {
    const St1Gates g = make_gates(model_, dt);
    apply_real_space(model_, g, reg, false, {});
    cqft_all(model_, reg, Direction::Inverse);
    apply_kinetic(model_, g, reg, false, {});
    cqft_all(model_, reg, Direction::Forward);
}

void St1Rte::backward(Register &reg, double dt) const {
    const St1Gates g = make_gates(model_, dt);
    cqft_all(model_, reg, Direction::Inverse);
    apply_kinetic(model_, g, reg, true, {});
    cqft_all(model_, reg, Direction::Forward);
    apply_real_space(model_, g, reg, true, {});
}

StateVector rte_st1(const StateVector &state, double dt, const Grid1D &grid,
                    const PotentialSpec &pot) {
    const St1Rte rte(single_particle_model(grid, pot));
    Register reg(state);
    rte.forward(reg, dt);
    return reg.to_state();
}

St1PiteCircuit::St1PiteCircuit(GridModel model, const PiteConfig &cfg)
    : model_(std::move(model)), cfg_(cfg) {
    model_.validate();
    if (cfg.circuit() != CircuitKind::Approx) {
        fail(ErrorCode::InvalidArgument, "ST1 step requires an approx circuit config");
    }
}

StateVector St1PiteCircuit::pre_measurement(const StateVector &psi) const {
    const int n = model_.n_qubits();
    if (psi.n_qubits() != n) {
        fail(ErrorCode::InvalidArgument, "input state size does not match the grid model");
    }
    Register reg(tensor(psi, StateVector::basis(1, 0)));
    const int anc[] = {n};
    const std::pair<int, int> on0[] = {{n, 0}};
    const std::pair<int, int> on1[] = {{n, 1}};
    const St1Gates g = make_gates(model_, cfg_.s1() * cfg_.dtau());

    prepare_ancilla(reg, n);
    // Forward branch starts with the real-space factor, the backward branch
    // ends with its adjoint; the transforms in between are shared.
    apply_real_space(model_, g, reg, false, on0);
    cqft_all(model_, reg, Direction::Inverse);
    apply_kinetic(model_, g, reg, false, on0);
    apply_kinetic(model_, g, reg, true, on1);
    cqft_all(model_, reg, Direction::Forward);
    apply_real_space(model_, g, reg, true, on1);
    reg.apply_matrix(gates::rz(-2.0 * cfg_.theta0()), anc);
    reg.apply_matrix(gates::w_gate().adjoint(), anc);
    return reg.to_state();
}

StepResult st1_pite_step(const StateVector &psi, const GridModel &model, const PiteConfig &cfg) {
    return St1PiteCircuit(model, cfg).step(psi);
}

} // namespace pite
