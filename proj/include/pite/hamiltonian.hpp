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
 * Hamiltonian construction and the dense eigendecomposition oracle.
 *
 * HermitianOperator is the only type in the library that diagonalizes
 * anything. The exact PITE circuit, the Gibbs preparation and the weight
 * reporting in trajectories go through it; the approximate (real-time
 * evolution) circuits never do.
 */
#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "pite/common.hpp"
#include "pite/statevector.hpp"

namespace pite {

class HermitianOperator {
  public:
    /// Diagonalizes `matrix`. Rejects non-Hermitian input (max-norm 1e-10)
    /// and dimensions that are not a power of two.
    [[nodiscard]] static HermitianOperator from_matrix(const Matrix &matrix);
    /// Builds V diag(values) V^dagger; eigenpairs are re-sorted ascending.
    [[nodiscard]] static HermitianOperator from_spectrum(const RealVector &values,
                                                         const Matrix &vectors);

    [[nodiscard]] Eigen::Index dimension() const noexcept { return matrix_.rows(); }
    [[nodiscard]] int n_qubits() const noexcept;
    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const RealVector &eigenvalues() const noexcept { return values_; }
    [[nodiscard]] const Matrix &eigenvectors() const noexcept { return vectors_; }
    [[nodiscard]] double ground_energy() const { return values_(0); }
    [[nodiscard]] StateVector eigenstate(Eigen::Index i) const;

    /// V f(Lambda) V^dagger for a scalar function of the eigenvalues.
    [[nodiscard]] Matrix function(const std::function<Complex(double)> &f) const;

    /// |<v_i|psi>|^2 for every eigenvector, ascending energy order.
    [[nodiscard]] std::vector<double> weights(const StateVector &psi) const;
    [[nodiscard]] double expectation(const StateVector &psi) const;

  private:
    HermitianOperator(Matrix m, RealVector values, Matrix vectors)
        : matrix_(std::move(m)), values_(std::move(values)), vectors_(std::move(vectors)) {}

    Matrix matrix_;
    RealVector values_;
    Matrix vectors_;
};

/// Random Hermitian matrix rescaled so its spectrum spans [-scale, scale]
/// at the extreme end.
[[nodiscard]] HermitianOperator random_hermitian(int n_qubits, Rng &rng, double scale = 1.0);

/// H - e0 I. Eigenvectors are kept, eigenvalues shift by -e0.
[[nodiscard]] HermitianOperator shift_energy(const HermitianOperator &h, double e0);

/// Equidistant periodic grid of N = 2^n_d points on [0, L).
class Grid1D {
  public:
    Grid1D(int n_d, double length, double mass = 1.0);

    [[nodiscard]] int n_d() const noexcept { return n_d_; }
    [[nodiscard]] std::size_t points() const noexcept { return std::size_t{1} << n_d_; }
    [[nodiscard]] double length() const noexcept { return length_; }
    [[nodiscard]] double mass() const noexcept { return mass_; }
    [[nodiscard]] double dx() const noexcept { return length_ / static_cast<double>(points()); }
    [[nodiscard]] double dp() const noexcept { return 2.0 * kPi / length_; }

    [[nodiscard]] double position(std::size_t k) const noexcept {
        return static_cast<double>(k) * dx();
    }
    /// s - N/2, the signed momentum index of basis state s.
    [[nodiscard]] long centered_index(std::size_t s) const noexcept {
        return static_cast<long>(s) - static_cast<long>(points() / 2);
    }
    [[nodiscard]] double momentum(std::size_t s) const noexcept {
        return static_cast<double>(centered_index(s)) * dp();
    }
    /// E_s = (s - N/2)^2 dp^2 / (2 m).
    [[nodiscard]] double kinetic_energy(std::size_t s) const noexcept;

  private:
    int n_d_;
    double length_;
    double mass_;
};

struct HarmonicPotential {
    double omega = 1.0;
    double length = 10.0;
    double mass = 1.0;
};

/// Asymmetric double well: lower minimum at L/2 + d/2, higher one (raised by
/// delta) at L/2 - d/2, cosine barrier of strength v0 in between.
struct DoubleWellPotential {
    double length = 18.0;
    double d = 3.0;
    double delta = 0.25;
    double v0 = 0.5;
};

/// Values at the grid points, index k at x = k dx.
struct TabulatedPotential {
    std::vector<double> values;
};

using PotentialSpec = std::variant<HarmonicPotential, DoubleWellPotential, TabulatedPotential>;

[[nodiscard]] double eval_harmonic(double x, double omega, double length, double mass);
/// Throws ErrorCode::Domain outside [0, L].
[[nodiscard]] double eval_double_well(double x, const DoubleWellPotential &p = {});

/// V(x^(k)) for every grid point.
[[nodiscard]] std::vector<double> tabulate(const PotentialSpec &pot, const Grid1D &grid);

/// <k|T|k'> = e^{-i pi (k-k')}/N sum_s E_s e^{2 pi i (k-k') s / N}.
[[nodiscard]] Complex kinetic_matrix_element(std::size_t k, std::size_t kp, const Grid1D &grid);
[[nodiscard]] Matrix kinetic_matrix(const Grid1D &grid);

/// T + diag(V). Grids above 2^12 points are rejected.
[[nodiscard]] HermitianOperator build_grid_hamiltonian(const Grid1D &grid,
                                                       const PotentialSpec &pot);

/// Normalized Gaussian whose probability density has standard deviation
/// sigma: amplitude proportional to exp(-(x - x_c)^2 / (4 sigma^2)).
[[nodiscard]] StateVector gaussian_state(const Grid1D &grid, double x_c, double sigma);

/// Normalized a|g1> + b|g2> style superposition of two grid states.
[[nodiscard]] StateVector superpose(const StateVector &a, Complex ca, const StateVector &b,
                                    Complex cb);

} // namespace pite
