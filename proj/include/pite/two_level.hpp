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
 * Closed forms for PITE on a two-level system.
 *
 * Pure scalar math with no simulator dependency. The state after k steps is
 * cos(phi_k)|gs> + sin(phi_k)|ex> and w_k = tan^2(phi_k) is the relative
 * weight of the excited level.
 */
#pragma once

namespace pite::two_level {

struct Params {
    double e_gs = 0.0;
    double e_ex = 1.0;
    double m0 = 0.8;
    double dtau = 0.1;

    [[nodiscard]] double gap() const noexcept { return e_ex - e_gs; }
    [[nodiscard]] double mean() const noexcept { return 0.5 * (e_ex + e_gs); }
    /// e^{-gap dtau}.
    [[nodiscard]] double alpha() const noexcept;
};

struct StepValues {
    double probability;
    double next_weight;
};

/// arccos((m0 e^{-e dtau} + sqrt(1 - m0^2 e^{-2 e dtau})) / sqrt2).
/// Throws ErrorCode::Domain when m0 e^{-e dtau} >= 1.
[[nodiscard]] double theta_level(double e, const Params &p);

/// p_k = m0^2 (e^{-2 e_gs dtau} + e^{-2 e_ex dtau} w_k) / (1 + w_k),
/// w_{k+1} = alpha^2 w_k.
[[nodiscard]] StepValues exact_step(double w, const Params &p);

/// gamma_l = cos(theta0 - e_l s1 dtau) + sin(theta0 - e_l s1 dtau).
[[nodiscard]] double gamma(double e, const Params &p);

/// First-order circuit: p^(1) and w^(1)_{k+1} = (gamma_ex / gamma_gs)^2 w_k.
/// Throws ErrorCode::Domain when gamma_gs vanishes.
[[nodiscard]] StepValues approx_step(double w, const Params &p);

/// Estimated steps until the approx weight falls from w0 to delta,
/// -(1 + tan theta0) ln(delta / w0) / (2 s1 gap dtau). Requires 0 < delta <= w0.
[[nodiscard]] double steps_to_weight(double delta, double w0, const Params &p);

} // namespace pite::two_level
