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


#include <gtest/gtest.h>

#include <numeric>

#include "pite/grid_dynamics.hpp"
#include "support/oracles.hpp"

namespace pite {
namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> q(static_cast<std::size_t>(hi - lo));
    std::iota(q.begin(), q.end(), lo);
    return q;
}

// Dense matrix of a register map, column by column on basis states.
template <class F> Matrix dense(int n, F &&f) {
    const auto dim = Eigen::Index{1} << n;
    Matrix u(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Register reg(StateVector::basis(n, static_cast<std::uint64_t>(c)));
        f(reg);
        for (Eigen::Index r = 0; r < dim; ++r) {
            u(r, c) = reg.amplitudes()[static_cast<std::size_t>(r)];
        }
    }
    return u;
}

Matrix diag(const std::vector<double> &v) {
    Matrix d = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
    }
    return d;
}

TEST(Qft, MatchesDft) {
    const int n = 4;
    const auto q = range(0, n);
    const Matrix f = dense(n, [&](Register &r) { apply_qft(r, q, Direction::Forward); });
    const double big = 16.0;
    for (Eigen::Index y = 0; y < 16; ++y) {
        for (Eigen::Index x = 0; x < 16; ++x) {
            const Complex want =
                std::exp(Complex(0.0, 2.0 * kPi * static_cast<double>(x * y) / big)) / 4.0;
            EXPECT_NEAR(std::abs(f(y, x) - want), 0.0, 1e-13);
        }
    }
    const Matrix inv = dense(n, [&](Register &r) { apply_qft(r, q, Direction::Inverse); });
    EXPECT_LT((inv * f - Matrix::Identity(16, 16)).norm(), 1e-13);
}

class CqftMomentum : public ::testing::TestWithParam<int> {};

TEST_P(CqftMomentum, BasisMapsToMomentumStates) {
    const int n = GetParam();
    const std::size_t big = std::size_t{1} << n;
    const auto q = range(0, n);
    for (std::size_t s = 0; s < big; ++s) {
        const auto out = cqft(StateVector::basis(n, s), q, Direction::Forward);
        EXPECT_LT((out.to_vector() - oracle::momentum_state(s, big)).norm(), 1e-12) << s;
        const auto back = cqft(out, q, Direction::Inverse);
        EXPECT_NEAR(std::norm(back.amplitude(s)), 1.0, 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, CqftMomentum, ::testing::Values(2, 3, 4));

TEST(Cqft, ActsOnSubregister) {
    oracle::Draw draw(51);
    const Vector a = draw.state(8);
    const Vector b = draw.state(4);
    const auto state = StateVector::from_vector(oracle::kron(a, b));
    const auto out = cqft(state, range(0, 3), Direction::Forward);
    Matrix f(8, 8);
    for (Eigen::Index s = 0; s < 8; ++s) {
        f.col(s) = oracle::momentum_state(static_cast<std::size_t>(s), 8);
    }
    const Vector want = oracle::kron(f * a, b);
    EXPECT_LT((out.to_vector() - want).norm(), 1e-12);
}

TEST(Kinetic, ConjugatedPhaseIsExpm) {
    const Grid1D grid(4, 10.0, 1.3);
    const auto q = range(0, 4);
    const double dt = 0.07;
    const Matrix u = dense(4, [&](Register &r) {
        apply_cqft(r, q, Direction::Inverse);
        PhaseGate::kinetic(grid, dt).apply(r, q);
        apply_cqft(r, q, Direction::Forward);
    });
    const Matrix t = oracle::kinetic_operator(16, 10.0, 1.3);
    EXPECT_LT((u - oracle::expm(Complex(0.0, -dt) * t)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((kinetic_matrix(grid) - t).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Kinetic, PropagatorIsMatrixElement) {
    const std::size_t big = 16;
    const double length = 12.0;
    const double dt = 0.3;
    const double dp = 2.0 * kPi / length;
    const double lambda = dp * dp * dt / 2.0;
    const Matrix u = oracle::expm(Complex(0.0, -dt) * oracle::kinetic_operator(big, length, 1.0));
    for (Eigen::Index k = 0; k < 16; ++k) {
        for (Eigen::Index kp = 0; kp < 16; ++kp) {
            const Complex j = kinetic_propagator(static_cast<long>(k - kp), lambda, big);
            EXPECT_NEAR(std::abs(u(k, kp) - j), 0.0, 1e-10);
        }
    }
}

TEST(Kinetic, PropagatorSymmetryAndSum) {
    const std::size_t big = 32;
    for (double lambda : {0.01, 0.04}) {
        Complex total{0.0, 0.0};
        for (long l = 0; l < 32; ++l) {
            total += kinetic_propagator(l, lambda, big);
            EXPECT_NEAR(std::abs(kinetic_propagator(l, lambda, big) -
                                 kinetic_propagator(-l, lambda, big)),
                        0.0, 1e-12);
        }
        EXPECT_NEAR(std::abs(total - 1.0), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(kinetic_propagator(0, 0.0, big) - 1.0), 0.0, 1e-14);
    }
    EXPECT_THROW((void)kinetic_propagator(32, 0.01, big), Error);
    EXPECT_THROW((void)kinetic_propagator(-32, 0.01, big), Error);
}

TEST(PhaseGate, AdjointAndControls) {
    const std::vector<double> v = {0.1, -0.4, 2.0, 0.7};
    const auto g = PhaseGate::potential(v, 0.5);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(g.phases()[i] * g.adjoint().phases()[i] - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(g.phases()[i] - std::exp(Complex(0.0, -0.5 * v[i]))), 0.0, 1e-15);
    }
    const std::pair<int, int> ctrl[] = {{2, 1}};
    const int targets[] = {0, 1};
    const Matrix u = dense(3, [&](Register &r) { g.apply(r, targets, ctrl); });
    for (Eigen::Index i = 0; i < 8; ++i) {
        const Complex want = (i & 1) ? g.phases()[static_cast<std::size_t>(i >> 1)] : 1.0;
        EXPECT_NEAR(std::abs(u(i, i) - want), 0.0, 1e-15);
    }
}

TEST(St1, ProductOfExponentials) {
    const Grid1D grid(4, 10.0);
    const HarmonicPotential pot{1.0, 10.0, 1.0};
    const auto model = single_particle_model(grid, pot);
    const St1Rte rte(model);
    const double dt = 0.05;
    const Matrix u = dense(4, [&](Register &r) { rte.forward(r, dt); });
    const Matrix v = diag(tabulate(pot, grid));
    const Matrix t = oracle::kinetic_operator(16, 10.0, 1.0);
    const Matrix want = oracle::expm(Complex(0.0, -dt) * t) * oracle::expm(Complex(0.0, -dt) * v);
    EXPECT_LT((u - want).cwiseAbs().maxCoeff(), 1e-10);
    const Matrix back = dense(4, [&](Register &r) { rte.backward(r, dt); });
    EXPECT_LT((back * u - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(St1, LocalErrorIsSecondOrder) {
    const Grid1D grid(4, 10.0);
    const HarmonicPotential pot{1.0, 10.0, 1.0};
    const auto h = build_grid_hamiltonian(grid, pot);
    const auto psi = gaussian_state(grid, 4.0, 0.8);
    std::vector<double> err;
    for (double dt : {0.02, 0.01, 0.005}) {
        const auto a = rte_st1(psi, dt, grid, pot);
        const Vector b = oracle::expm(Complex(0.0, -dt) * h.matrix()) * psi.to_vector();
        err.push_back((a.to_vector() - b).norm());
    }
    EXPECT_NEAR(err[0] / err[1], 4.0, 0.4);
    EXPECT_NEAR(err[1] / err[2], 4.0, 0.4);
}

TEST(St1, ShiftOnlyChangesPhase) {
    const Grid1D grid(3, 8.0);
    const HarmonicPotential pot{1.0, 8.0, 1.0};
    const auto psi = gaussian_state(grid, 3.0, 0.7);
    Register a(psi);
    Register b(psi);
    St1Rte(single_particle_model(grid, pot)).forward(a, 0.2);
    St1Rte(single_particle_model(grid, pot, 1.5)).forward(b, 0.2);
    const Vector va = a.to_state().to_vector();
    const Vector vb = b.to_state().to_vector();
    EXPECT_LT((va * std::exp(Complex(0.0, 0.3)) - vb).norm(), 1e-12);
}

TEST(St1Pite, ElidedCircuitMatchesGenericApprox) {
    const Grid1D grid(4, 10.0);
    const HarmonicPotential pot{1.0, 10.0, 1.0};
    const auto model = single_particle_model(grid, pot);
    const auto psi = gaussian_state(grid, 4.5, 0.9);
    const PiteConfig cfg(0.85, 0.1, CircuitKind::Approx);
    const auto elided = St1PiteCircuit(model, cfg).pre_measurement(psi);
    const auto generic = approx_pite_step(psi, St1Rte(model), cfg).pre_measurement_state;
    EXPECT_LT((elided.to_vector() - generic.to_vector()).norm(), 1e-12);
    const auto r = st1_pite_step(psi, model, cfg);
    EXPECT_NEAR(r.success_probability + r.failure_probability, 1.0, 1e-12);
    EXPECT_THROW(St1PiteCircuit(model, PiteConfig(0.85, 0.1)), Error);
}

TEST(St1Pite, ParityPreserved) {
    const Grid1D grid(5, 10.0);
    const HarmonicPotential pot{1.0, 10.0, 1.0};
    const auto h = build_grid_hamiltonian(grid, pot);
    const auto model = single_particle_model(grid, pot, h.eigenvalues()(0));
    // Odd about the well centre: x_k -> x_{N-k}.
    const auto psi = superpose(h.eigenstate(1), 1.0, h.eigenstate(3), 1.0);
    auto r = st1_pite_step(psi, model, PiteConfig(0.85, 0.1, CircuitKind::Approx));
    const Vector v = r.success_state.to_vector();
    for (Eigen::Index k = 1; k < 32; ++k) {
        EXPECT_NEAR(std::abs(v(k) + v(32 - k)), 0.0, 1e-10) << k;
    }
}

TEST(TwoParticles, InteractionPhaseIsDiagonal) {
    const Grid1D grid(2, 4.0);
    const auto table = interaction_table(grid, soft_coulomb);
    ASSERT_EQ(table.size(), 16u);
    EXPECT_NEAR(table[0], 1.0, 1e-15);
    EXPECT_NEAR(table[1], 1.0 / std::sqrt(2.0), 1e-15);
    oracle::Draw draw(52);
    const auto psi = StateVector::from_vector(draw.state(16));
    const auto out = interaction_phase(psi, range(0, 2), range(2, 4), 0.3, table);
    for (std::size_t i = 0; i < 16; ++i) {
        const Complex want = psi.amplitude(i) * std::exp(Complex(0.0, -0.3 * table[i]));
        EXPECT_NEAR(std::abs(out.amplitude(i) - want), 0.0, 1e-14);
    }
}

TEST(TwoParticles, AntisymmetrizeAndSt1) {
    const Grid1D grid(2, 4.0);
    oracle::Draw draw(53);
    const auto psi = StateVector::from_vector(draw.state(16));
    const auto anti = antisymmetrize(psi, range(0, 2), range(2, 4));
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_NEAR(std::abs(anti.amplitude(a * 4 + b) + anti.amplitude(b * 4 + a)), 0.0,
                        1e-14);
        }
    }
    EXPECT_THROW((void)antisymmetrize(StateVector::basis(4, 5), range(0, 2), range(2, 4)), Error);

    GridModel model{grid, 2, {}, {}};
    model.potential = tabulate(HarmonicPotential{1.0, 4.0, 1.0}, grid);
    model.interaction = interaction_table(grid, soft_coulomb);
    const St1Rte rte(model);
    Register reg(anti);
    rte.forward(reg, 0.1);
    const auto out = reg.to_state();
    // Exchange symmetry survives the evolution.
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_NEAR(std::abs(out.amplitude(a * 4 + b) + out.amplitude(b * 4 + a)), 0.0,
                        1e-12);
        }
    }
    model.particles = 3;
    EXPECT_THROW(model.validate(), Error);
}

} // namespace
} // namespace pite
