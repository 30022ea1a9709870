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

#include "pite/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace pite {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr std::size_t kMaxGridPoints = std::size_t{1} << 12;

void check_power_of_two(Eigen::Index dim) {
    if (dim <= 0 || !std::has_single_bit(static_cast<std::size_t>(dim))) {
        fail(ErrorCode::InvalidArgument,
             "operator dimension " + std::to_string(dim) + " is not a power of two");
    }
}

} // namespace

HermitianOperator HermitianOperator::from_matrix(const Matrix &matrix) {
    if (matrix.rows() != matrix.cols()) {
        fail(ErrorCode::InvalidArgument, "Hamiltonian matrix is not square");
    }
    check_power_of_two(matrix.rows());
    const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance) {
        fail(ErrorCode::InvalidArgument,
             "matrix is not Hermitian (max |H - H^dagger| = " + std::to_string(asym) + ")");
    }
    Matrix sym = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::Domain, "eigendecomposition did not converge");
    }
    return {std::move(sym), solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator HermitianOperator::from_spectrum(const RealVector &values,
                                                   const Matrix &vectors) {
    if (vectors.rows() != vectors.cols() || vectors.cols() != values.size()) {
        fail(ErrorCode::InvalidArgument, "eigenvector matrix does not match eigenvalue count");
    }
    check_power_of_two(vectors.rows());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
    RealVector sorted_values(values.size());
    Matrix sorted_vectors(vectors.rows(), vectors.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        sorted_values(col) = values(order[i]);
        sorted_vectors.col(col) = vectors.col(order[i]);
    }
    Matrix m = sorted_vectors * sorted_values.cast<Complex>().asDiagonal() *
               sorted_vectors.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return {std::move(m), std::move(sorted_values), std::move(sorted_vectors)};
}

int HermitianOperator::n_qubits() const noexcept {
    return std::countr_zero(static_cast<std::size_t>(matrix_.rows()));
}

StateVector HermitianOperator::eigenstate(Eigen::Index i) const {
    if (i < 0 || i >= values_.size()) {
        fail(ErrorCode::InvalidArgument, "eigenstate index out of range");
    }
    return StateVector::from_vector(vectors_.col(i));
}

Matrix HermitianOperator::function(const std::function<Complex(double)> &f) const {
    Vector diag(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        diag(i) = f(values_(i));
    }
    return vectors_ * diag.asDiagonal() * vectors_.adjoint();
}

std::vector<double> HermitianOperator::weights(const StateVector &psi) const {
    if (static_cast<Eigen::Index>(psi.dimension()) != dimension()) {
        fail(ErrorCode::InvalidArgument, "state dimension does not match the operator");
    }
    const Vector coeffs = vectors_.adjoint() * psi.to_vector();
    std::vector<double> w(static_cast<std::size_t>(coeffs.size()));
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        w[static_cast<std::size_t>(i)] = std::norm(coeffs(i));
    }
    return w;
}

double HermitianOperator::expectation(const StateVector &psi) const {
    const auto w = weights(psi);
    double e = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        e += w[i] * values_(static_cast<Eigen::Index>(i));
    }
    return e;
}

HermitianOperator random_hermitian(int n_qubits, Rng &rng, double scale) {
    if (n_qubits < 1 || n_qubits > 12) {
        fail(ErrorCode::InvalidArgument, "random Hamiltonian size must lie in [1, 12] qubits");
    }
    if (!(scale > 0.0)) {
        fail(ErrorCode::InvalidArgument, "spectral scale must be positive");
    }
    const auto dim = Eigen::Index{1} << n_qubits;
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = 2.0 * uniform01(rng) - 1.0;
            a(i, j) = {re, 2.0 * uniform01(rng) - 1.0};
        }
    }
    Matrix h = 0.5 * (a + a.adjoint());
    const auto probe = HermitianOperator::from_matrix(h);
    const double radius = probe.eigenvalues().cwiseAbs().maxCoeff();
    return HermitianOperator::from_matrix(h * (scale / radius));
}

HermitianOperator shift_energy(const HermitianOperator &h, double e0) {
    RealVector values = h.eigenvalues().array() - e0;
    return HermitianOperator::from_spectrum(values, h.eigenvectors());
}

// ---------------------------------------------------------------------------
// Grid and potentials

Grid1D::Grid1D(int n_d, double length, double mass) : n_d_(n_d), length_(length), mass_(mass) {
    if (n_d < 1 || n_d > 12) {
        fail(ErrorCode::InvalidArgument, "grid qubit count must lie in [1, 12]");
    }
    if (!(length > 0.0) || !(mass > 0.0)) {
        fail(ErrorCode::InvalidArgument, "grid length and mass must be positive");
    }
}

double Grid1D::kinetic_energy(std::size_t s) const noexcept {
    const double p = momentum(s);
    return p * p / (2.0 * mass_);
}

double eval_harmonic(double x, double omega, double length, double mass) {
    const double u = x - length / 2.0;
    return mass * omega * omega * u * u / 2.0;
}

double eval_double_well(double x, const DoubleWellPotential &p) {
    const double L = p.length;
    if (!(x >= 0.0 && x <= L)) {
        fail(ErrorCode::Domain, "double-well potential evaluated outside [0, L]");
    }
    const double half = L / 2.0;
    const double k = 2.0 * kPi / p.d;
    if (x <= (L - p.d) / 2.0) {
        const double u = x - half + p.d / 2.0;
        return u * u / 2.0 + p.delta;
    }
    if (x <= half) {
        return p.v0 / 2.0 * (1.0 + std::cos(k * (x - half))) + p.delta;
    }
    if (x <= (L + p.d) / 2.0) {
        return (p.v0 + p.delta) / 2.0 * (1.0 + std::cos(k * (x - half)));
    }
    const double u = x - half - p.d / 2.0;
    return u * u / 2.0;
}

std::vector<double> tabulate(const PotentialSpec &pot, const Grid1D &grid) {
    std::vector<double> out(grid.points());
    if (const auto *t = std::get_if<TabulatedPotential>(&pot)) {
        if (t->values.size() != grid.points()) {
            fail(ErrorCode::InvalidArgument, "tabulated potential length does not match the grid");
        }
        return t->values;
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double x = grid.position(k);
        if (const auto *h = std::get_if<HarmonicPotential>(&pot)) {
            out[k] = eval_harmonic(x, h->omega, h->length, h->mass);
        } else {
            out[k] = eval_double_well(x, std::get<DoubleWellPotential>(pot));
        }
    }
    return out;
}

Complex kinetic_matrix_element(std::size_t k, std::size_t kp, const Grid1D &grid) {
    const std::size_t n = grid.points();
    if (k >= n || kp >= n) {
        fail(ErrorCode::InvalidArgument, "kinetic matrix index out of range");
    }
    const long diff = static_cast<long>(k) - static_cast<long>(kp);
    Complex sum{0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) {
        const double arg = 2.0 * kPi * static_cast<double>(diff * static_cast<long>(s)) /
                           static_cast<double>(n);
        sum += grid.kinetic_energy(s) * std::exp(kI * arg);
    }
    const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
    return sign * sum / static_cast<double>(n);
}

Matrix kinetic_matrix(const Grid1D &grid) {
    const auto n = static_cast<Eigen::Index>(grid.points());
    Matrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            t(i, j) = kinetic_matrix_element(static_cast<std::size_t>(i),
                                             static_cast<std::size_t>(j), grid);
        }
    }
    return t;
}

HermitianOperator build_grid_hamiltonian(const Grid1D &grid, const PotentialSpec &pot) {
    if (grid.points() > kMaxGridPoints) {
        fail(ErrorCode::Capacity, "grid Hamiltonian larger than 2^12 points");
    }
    Matrix h = kinetic_matrix(grid);
    const auto v = tabulate(pot, grid);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        h(i, i) += v[k];
    }
    return HermitianOperator::from_matrix(h);
}

StateVector gaussian_state(const Grid1D &grid, double x_c, double sigma) {
    if (!(sigma > 0.0)) {
        fail(ErrorCode::InvalidArgument, "Gaussian width must be positive");
    }
    std::vector<Complex> amps(grid.points());
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double u = grid.position(k) - x_c;
        amps[k] = std::exp(-u * u / (4.0 * sigma * sigma));
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector superpose(const StateVector &a, Complex ca, const StateVector &b, Complex cb) {
    if (a.n_qubits() != b.n_qubits()) {
        fail(ErrorCode::InvalidArgument, "superposed states differ in qubit count");
    }
    std::vector<Complex> amps(a.dimension());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = ca * a.amplitude(i) + cb * b.amplitude(i);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

} // namespace pite
