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

#include "pite/two_level.hpp"

#include <algorithm>
#include <cmath>

#include "pite/common.hpp"

namespace pite::two_level {

namespace {

struct Constants {
    double theta0;
    double s1;
};

Constants constants(double m0) {
    if (!(m0 > 0.0 && m0 < 1.0) || std::abs(m0 - 1.0 / std::sqrt(2.0)) < 1e-12) {
        fail(ErrorCode::InvalidArgument, "m0 must lie in (0, 1) and differ from 1/sqrt(2)");
    }
    const double root = std::sqrt(1.0 - m0 * m0);
    const double kappa = m0 > 1.0 / std::sqrt(2.0) ? 1.0 : -1.0;
    return {kappa * std::acos(std::min(1.0, (m0 + root) / std::sqrt(2.0))), m0 / root};
}

void check_weight(double w) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
        fail(ErrorCode::InvalidArgument, "relative weight must be finite and non-negative");
    }
}

} // namespace

double Params::alpha() const noexcept { return std::exp(-gap() * dtau); }

double theta_level(double e, const Params &p) {
    const double mu = p.m0 * std::exp(-e * p.dtau);
    if (!(mu < 1.0) || !(mu > 0.0)) {
        fail(ErrorCode::Domain, "m0 exp(-e dtau) must lie in (0, 1)");
    }
    const double arg = (mu + std::sqrt(1.0 - mu * mu)) / std::sqrt(2.0);
    if (arg > 1.0 + 1e-15) {
        fail(ErrorCode::Domain, "arccos argument exceeds one");
    }
    return std::acos(std::min(1.0, arg));
}

StepValues exact_step(double w, const Params &p) {
    check_weight(w);
    const double g = std::exp(-2.0 * p.e_gs * p.dtau);
    const double x = std::exp(-2.0 * p.e_ex * p.dtau);
    const double a = p.alpha();
    return {p.m0 * p.m0 * (g + x * w) / (1.0 + w), a * a * w};
}

double gamma(double e, const Params &p) {
    const Constants c = constants(p.m0);
    const double arg = c.theta0 - e * c.s1 * p.dtau;
    return std::cos(arg) + std::sin(arg);
}

StepValues approx_step(double w, const Params &p) {
    check_weight(w);
    const Constants c = constants(p.m0);
    const double g_gs = gamma(p.e_gs, p);
    if (std::abs(g_gs) < 1e-300) {
        fail(ErrorCode::Domain, "gamma of the ground level vanishes");
    }
    const double ratio = gamma(p.e_ex, p) / g_gs;
    const double s_gs = std::sin(2.0 * c.theta0 - 2.0 * p.e_gs * c.s1 * p.dtau);
    const double s_ex = std::sin(2.0 * c.theta0 - 2.0 * p.e_ex * c.s1 * p.dtau);
    return {0.5 + (s_gs + s_ex * w) / (2.0 * (1.0 + w)), ratio * ratio * w};
}

double steps_to_weight(double delta, double w0, const Params &p) {
    if (!(delta > 0.0) || !(delta <= w0)) {
        fail(ErrorCode::Domain, "target weight must satisfy 0 < delta <= w0");
    }
    if (!(p.gap() > 0.0) || !(p.dtau > 0.0)) {
        fail(ErrorCode::Domain, "steps estimate needs a positive gap and time step");
    }
    const Constants c = constants(p.m0);
    return -(1.0 + std::tan(c.theta0)) * std::log(delta / w0) / (2.0 * c.s1 * p.gap() * p.dtau);
}

} // namespace pite::two_level
