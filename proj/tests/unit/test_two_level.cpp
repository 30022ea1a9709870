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

#include "pite/pite.hpp"
#include "pite/two_level.hpp"
#include "support/oracles.hpp"

namespace pite {
namespace {

using two_level::Params;

HermitianOperator two_level_h(double e_gs, double e_ex) {
    RealVector e(2);
    e << e_gs, e_ex;
    return HermitianOperator::from_spectrum(e, Matrix::Identity(2, 2));
}

StateVector weighted(double w) {
    Vector v(2);
    v << std::sqrt(1.0 / (1.0 + w)), std::sqrt(w / (1.0 + w));
    return StateVector::from_vector(v);
}

double weight_of(const StateVector &s) {
    return std::norm(s.amplitude(1)) / std::norm(s.amplitude(0));
}

TEST(TwoLevel, ThetaLevel) {
    const Params p{0.0, 1.0, 0.8, 0.0};
    EXPECT_NEAR(two_level::theta_level(0.0, p), 0.14189705460416402, 1e-14);
    const Params q{0.0, 1.0, 0.8, 0.3};
    const double mu = 0.8 * std::exp(-0.3);
    EXPECT_NEAR(std::cos(two_level::theta_level(1.0, q)),
                (mu + std::sqrt(1 - mu * mu)) / std::sqrt(2.0), 1e-14);
    EXPECT_THROW((void)two_level::theta_level(-1.0, Params{0.0, 1.0, 0.9, 0.5}), Error);
}

TEST(TwoLevel, ClosedFormsAgreeWithReference) {
    for (double dtau : {0.1, 0.3, 0.5}) {
        const Params p{0.0, 1.0, 0.8, dtau};
        const oracle::TwoLevelRef ref{0.0, 1.0, 0.8, dtau};
        for (double w : {0.0, 0.3, 1.0, 7.5}) {
            const auto e = two_level::exact_step(w, p);
            const auto a = two_level::approx_step(w, p);
            EXPECT_NEAR(e.probability, ref.p_exact(w), 1e-14);
            EXPECT_NEAR(e.next_weight, ref.alpha() * ref.alpha() * w, 1e-14);
            EXPECT_NEAR(a.probability, ref.p_approx(w), 1e-14);
            EXPECT_NEAR(a.next_weight, ref.alpha_prime() * ref.alpha_prime() * w, 1e-14);
        }
    }
}

TEST(TwoLevel, SinTwoThetaZero) {
    // gamma(0)^2 / 2 = (1 + sin 2 theta0) / 2 = m0^2.
    for (double m0 : {0.3, 0.5, 0.8, 0.95}) {
        const Params p{0.0, 1.0, m0, 0.2};
        EXPECT_NEAR(two_level::gamma(0.0, p) * two_level::gamma(0.0, p) / 2.0, m0 * m0, 1e-14);
    }
}

TEST(TwoLevel, CircuitsReproduceClosedForms) {
    for (double dtau : {0.1, 0.3, 0.5}) {
        const Params p{0.0, 1.0, 0.8, dtau};
        const auto h = two_level_h(0.0, 1.0);
        const ExactPiteCircuit exact(h, PiteConfig(0.8, dtau));
        const SpectralRte rte(h);
        double w = 1.0;
        double w1 = 1.0;
        StateVector s = weighted(w);
        StateVector s1 = weighted(w1);
        for (int k = 0; k <= 30; ++k) {
            const auto re = exact.step(s);
            const auto ra = approx_pite_step(s1, rte, PiteConfig(0.8, dtau, CircuitKind::Approx));
            const auto ce = two_level::exact_step(w, p);
            const auto ca = two_level::approx_step(w1, p);
            EXPECT_NEAR(re.success_probability, ce.probability, 1e-12);
            EXPECT_NEAR(ra.success_probability, ca.probability, 1e-12);
            s = re.success_state;
            s1 = ra.success_state;
            w = ce.next_weight;
            w1 = ca.next_weight;
            EXPECT_NEAR(weight_of(s), w, 1e-12);
            EXPECT_NEAR(weight_of(s1), w1, 1e-12);
        }
    }
}

TEST(TwoLevel, ProbabilityRisesToSaturation) {
    const Params p{0.0, 1.0, 0.8, 0.3};
    double w = 1.0;
    double prev = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto s = two_level::exact_step(w, p);
        if (k < 30) {
            EXPECT_GT(s.probability, prev);
        }
        EXPECT_GE(s.probability, prev - 1e-15);
        prev = s.probability;
        w = s.next_weight;
    }
    EXPECT_NEAR(prev, 0.64, 1e-12);
}

TEST(TwoLevel, StepsEstimateTracksIteration) {
    for (double dtau : {0.05, 0.1, 0.2}) {
        const Params p{0.0, 1.0, 0.8, dtau};
        double w = 1.0;
        int k = 0;
        while (w > 1e-6) {
            w = two_level::approx_step(w, p).next_weight;
            ++k;
        }
        const double est = two_level::steps_to_weight(1e-6, 1.0, p);
        EXPECT_GT(est, 0.5 * k);
        EXPECT_LT(est, 2.0 * k);
    }
    const Params p;
    EXPECT_DOUBLE_EQ(two_level::steps_to_weight(1.0, 1.0, p), 0.0);
    EXPECT_THROW((void)two_level::steps_to_weight(2.0, 1.0, p), Error);
    EXPECT_THROW((void)two_level::steps_to_weight(0.0, 1.0, p), Error);
}

TEST(TwoLevel, RejectsBadInput) {
    EXPECT_THROW((void)two_level::exact_step(-1.0, Params{}), Error);
    EXPECT_THROW((void)two_level::approx_step(0.5, Params{0.0, 1.0, 1.0 / std::sqrt(2.0), 0.1}),
                 Error);
}

} // namespace
} // namespace pite
