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

#include "pite/thermal.hpp"
#include "support/oracles.hpp"

namespace pite {
namespace {

TEST(MaxEntangled, Amplitudes) {
    const auto s = max_entangled_state(2);
    for (std::uint64_t i = 0; i < 16; ++i) {
        const bool diag = (i >> 2) == (i & 3);
        EXPECT_NEAR(std::abs(s.amplitude(i)), diag ? 0.5 : 0.0, 1e-15);
    }
    const Matrix rho = reduced_density(s, 2);
    EXPECT_LT((rho - 0.25 * Matrix::Identity(4, 4)).norm(), 1e-15);
    EXPECT_NEAR(von_neumann_entropy(rho), 2.0 * std::log(2.0), 1e-14);
}

TEST(ReducedDensity, ProductState) {
    oracle::Draw draw(61);
    const Vector a = draw.state(2);
    const Vector b = draw.state(4);
    const Matrix rho = reduced_density(StateVector::from_vector(oracle::kron(a, b)), 1);
    EXPECT_LT((rho - b * b.adjoint()).norm(), 1e-14);
    EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);
}

TEST(Gibbs, MatchesDenseThermalState) {
    oracle::Draw draw(62);
    for (int n : {1, 2}) {
        const auto dim = Eigen::Index{1} << n;
        const Matrix m = oracle::make_nonnegative(draw.hermitian(dim));
        const double beta = 1.0;
        const double m0 = 0.5;
        const auto g = gibbs_prepare(HermitianOperator::from_matrix(m), beta, m0);
        const Matrix rho = oracle::expm(-beta * m);
        const double z = rho.trace().real();
        EXPECT_NEAR(g.success_probability, m0 * m0 * z / static_cast<double>(dim), 1e-10);
        EXPECT_LT((g.reduced_density - rho / z).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_NEAR(g.z_estimate, z, 1e-10);
        EXPECT_NEAR(g.free_energy, -std::log(z) / beta, 1e-10);
    }
}

TEST(Gibbs, SlicesAgree) {
    oracle::Draw draw(63);
    const Matrix m = oracle::make_nonnegative(draw.hermitian(4));
    const auto h = HermitianOperator::from_matrix(m);
    const auto one = gibbs_prepare(h, 1.5, 0.8, 1);
    const auto three = gibbs_prepare(h, 1.5, 0.8, 3);
    EXPECT_LT((one.reduced_density - three.reduced_density).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(one.z_estimate, three.z_estimate, 1e-9);
    EXPECT_THROW((void)gibbs_prepare(h, 1.0, 0.8, 0), Error);
}

TEST(Gibbs, SampledPartitionFunction) {
    oracle::Draw draw(64);
    const Matrix m = oracle::make_nonnegative(draw.hermitian(4));
    const auto h = HermitianOperator::from_matrix(m);
    const double z = oracle::expm(-m).trace().real();
    const auto est = estimate_partition_sampled(h, 1.0, 0.5, 10000, 7);
    EXPECT_EQ(est.shots, 10000u);
    EXPECT_LT(std::abs(est.z_hat - z), 4.0 * est.stderr_z);
    const auto again = estimate_partition_sampled(h, 1.0, 0.5, 10000, 7);
    EXPECT_EQ(est.successes, again.successes);
    EXPECT_THROW((void)estimate_partition_sampled(h, 1.0, 0.5, 0, 7), Error);
}

} // namespace
} // namespace pite
