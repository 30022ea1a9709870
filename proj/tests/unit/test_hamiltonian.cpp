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

#include "pite/hamiltonian.hpp"
#include "support/oracles.hpp"

namespace pite {
namespace {

TEST(HermitianOperator, FunctionMatchesExpm) {
    oracle::Draw draw(21);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix m = draw.hermitian(8);
        const auto h = HermitianOperator::from_matrix(m);
        const Matrix got = h.function([](double l) { return std::exp(Complex(0.0, -0.3 * l)); });
        EXPECT_LT((got - oracle::expm(Complex(0.0, -0.3) * m)).cwiseAbs().maxCoeff(), 1e-12);
        for (Eigen::Index i = 1; i < h.eigenvalues().size(); ++i) {
            EXPECT_LE(h.eigenvalues()(i - 1), h.eigenvalues()(i));
        }
    }
}

TEST(HermitianOperator, Rejections) {
    Matrix nonherm(2, 2);
    nonherm << 0.0, 1.0, 0.0, 0.0;
    EXPECT_THROW((void)HermitianOperator::from_matrix(nonherm), Error);
    EXPECT_THROW((void)HermitianOperator::from_matrix(Matrix::Identity(3, 3)), Error);
    EXPECT_THROW((void)HermitianOperator::from_matrix(Matrix::Identity(2, 4)), Error);
}

TEST(HermitianOperator, WeightsAndExpectation) {
    oracle::Draw draw(22);
    const Matrix m = draw.hermitian(4);
    const auto h = HermitianOperator::from_matrix(m);
    const Vector psi = draw.state(4);
    const auto s = StateVector::from_vector(psi);
    const auto w = h.weights(s);
    double total = 0.0;
    for (double x : w) {
        total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_NEAR(h.expectation(s), (psi.adjoint() * m * psi)(0).real(), 1e-13);
    EXPECT_NEAR(h.weights(h.eigenstate(2))[2], 1.0, 1e-13);
}

TEST(HermitianOperator, ShiftKeepsVectors) {
    oracle::Draw draw(23);
    const auto h = HermitianOperator::from_matrix(draw.hermitian(4));
    const auto g = shift_energy(h, h.ground_energy());
    EXPECT_NEAR(g.ground_energy(), 0.0, 1e-14);
    EXPECT_LT((g.matrix() - (h.matrix() - h.ground_energy() * Matrix::Identity(4, 4)))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
}

TEST(Grid, Basics) {
    const Grid1D g(5, 10.0);
    EXPECT_EQ(g.points(), 32u);
    EXPECT_DOUBLE_EQ(g.dx(), 10.0 / 32.0);
    EXPECT_DOUBLE_EQ(g.dp(), 2.0 * kPi / 10.0);
    EXPECT_EQ(g.centered_index(0), -16);
    EXPECT_EQ(g.centered_index(31), 15);
    EXPECT_THROW(Grid1D(0, 1.0), Error);
    EXPECT_THROW(Grid1D(13, 1.0), Error);
    EXPECT_THROW(Grid1D(3, -1.0), Error);
}

TEST(Potentials, DoubleWellContinuity) {
    const DoubleWellPotential p;
    const double bps[] = {(p.length - p.d) / 2.0, p.length / 2.0, (p.length + p.d) / 2.0};
    for (double x : bps) {
        const double left = eval_double_well(std::nextafter(x, 0.0), p);
        const double right = eval_double_well(std::nextafter(x, p.length), p);
        EXPECT_NEAR(left, right, 1e-12) << "breakpoint " << x;
    }
    // Values at the minima and barrier top.
    EXPECT_NEAR(eval_double_well(p.length / 2.0 + p.d / 2.0, p), 0.0, 1e-15);
    EXPECT_NEAR(eval_double_well(p.length / 2.0 - p.d / 2.0, p), p.delta, 1e-15);
    EXPECT_NEAR(eval_double_well(p.length / 2.0, p), p.v0 + p.delta, 1e-15);
    EXPECT_THROW((void)eval_double_well(-0.1, p), Error);
    EXPECT_THROW((void)eval_double_well(18.5, p), Error);
}

TEST(Potentials, Harmonic) {
    EXPECT_DOUBLE_EQ(eval_harmonic(5.0, 1.0, 10.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(eval_harmonic(7.0, 2.0, 10.0, 0.5), 0.5 * 4.0 * 4.0 / 2.0);
}

TEST(Kinetic, MatrixMatchesMomentumSum) {
    const Grid1D g(4, 7.0, 1.3);
    const Matrix t = kinetic_matrix(g);
    const Matrix want = oracle::kinetic_operator(16, 7.0, 1.3);
    EXPECT_LT((t - want).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((t - t.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(GridHamiltonian, HarmonicSpectrum) {
    const Grid1D g(6, 10.0);
    const auto h = build_grid_hamiltonian(g, HarmonicPotential{});
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(h.eigenvalues()(i), i + 0.5, 1e-2) << "level " << i;
    }
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(h.eigenvalues()(i) - h.eigenvalues()(i - 1), 1.0, 1e-2);
    }
}

TEST(GridHamiltonian, DoubleWellGroundInLowerWell) {
    const Grid1D g(6, 18.0);
    const auto h = build_grid_hamiltonian(g, DoubleWellPotential{});
    const auto gs = h.eigenstate(0);
    double right = 0.0;
    for (std::size_t k = 0; k < g.points(); ++k) {
        if (g.position(k) > 9.0) {
            right += std::norm(gs.amplitude(k));
        }
    }
    EXPECT_GT(right, 0.5);
}

TEST(GridHamiltonian, CapacityLimit) {
    EXPECT_NO_THROW(Grid1D(12, 1.0));
    TabulatedPotential bad{{1.0, 2.0}};
    EXPECT_THROW((void)tabulate(bad, Grid1D(3, 1.0)), Error);
}

TEST(States, GaussianAndSuperposition) {
    const Grid1D g(6, 18.0);
    const auto a = gaussian_state(g, 10.5, 1.0);
    EXPECT_NEAR(a.norm_squared(), 1.0, 1e-14);
    double mean = 0.0;
    double var = 0.0;
    for (std::size_t k = 0; k < g.points(); ++k) {
        mean += std::norm(a.amplitude(k)) * g.position(k);
    }
    for (std::size_t k = 0; k < g.points(); ++k) {
        var += std::norm(a.amplitude(k)) * std::pow(g.position(k) - mean, 2);
    }
    EXPECT_NEAR(mean, 10.5, 1e-6);
    EXPECT_NEAR(std::sqrt(var), 1.0, 1e-3);
    const auto b = gaussian_state(g, 7.5, 1.0);
    const auto s = superpose(a, 1.0, b, 0.5);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
    EXPECT_THROW((void)gaussian_state(g, 1.0, 0.0), Error);
}

TEST(Random, HermitianScale) {
    Rng rng(5);
    const auto h = random_hermitian(3, rng, 2.0);
    EXPECT_NEAR(h.eigenvalues().cwiseAbs().maxCoeff(), 2.0, 1e-12);
    Rng a(7);
    Rng b(7);
    EXPECT_EQ(random_state(2, a).to_vector(), random_state(2, b).to_vector());
}

} // namespace
} // namespace pite
