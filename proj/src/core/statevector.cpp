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

#include "pite/statevector.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>

namespace pite {

namespace {

std::atomic<int> g_max_qubits{24};

constexpr double kZeroProbability = 1e-15;

void check_capacity(int n) {
    if (n < 0) {
        fail(ErrorCode::InvalidArgument, "negative qubit count");
    }
    if (n > max_qubits()) {
        fail(ErrorCode::Capacity, "register of " + std::to_string(n) +
                                      " qubits exceeds the configured maximum of " +
                                      std::to_string(max_qubits()));
    }
}

int qubits_for_length(std::size_t len) {
    if (len == 0 || !std::has_single_bit(len)) {
        fail(ErrorCode::InvalidArgument,
             "amplitude count " + std::to_string(len) + " is not a power of two");
    }
    const int n = std::countr_zero(len);
    check_capacity(n);
    return n;
}

std::uint64_t bit_of(int n_qubits, int q) { return std::uint64_t{1} << (n_qubits - 1 - q); }

void check_qubit(int n_qubits, int q) {
    if (q < 0 || q >= n_qubits) {
        fail(ErrorCode::InvalidArgument, "qubit index " + std::to_string(q) +
                                             " out of range for " + std::to_string(n_qubits) +
                                             " qubits");
    }
}

// Bit layout shared by every kernel: the fixed (target + control) positions
// sorted ascending, the offsets of each local target index, and the bits the
// controls force to one.
struct Layout {
    std::vector<int> fixed_positions;
    std::vector<std::uint64_t> offsets;
    std::uint64_t control_bits = 0;
    std::size_t free_count = 0;
};

Layout make_layout(int n_qubits, std::span<const int> targets,
                   std::span<const std::pair<int, int>> controls) {
    Layout layout;
    std::vector<int> seen;
    for (int q : targets) {
        check_qubit(n_qubits, q);
        seen.push_back(q);
    }
    for (auto [c, v] : controls) {
        check_qubit(n_qubits, c);
        if (v != 0 && v != 1) {
            fail(ErrorCode::InvalidArgument, "control value must be 0 or 1");
        }
        seen.push_back(c);
        if (v == 1) {
            layout.control_bits |= bit_of(n_qubits, c);
        }
    }
    std::vector<int> sorted = seen;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorCode::InvalidArgument, "target and control qubits must be distinct");
    }
    for (int q : seen) {
        layout.fixed_positions.push_back(n_qubits - 1 - q);
    }
    std::sort(layout.fixed_positions.begin(), layout.fixed_positions.end());

    const std::size_t k = targets.size();
    layout.offsets.assign(std::size_t{1} << k, 0);
    for (std::size_t local = 0; local < layout.offsets.size(); ++local) {
        std::uint64_t off = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if ((local >> (k - 1 - t)) & 1U) {
                off |= bit_of(n_qubits, targets[t]);
            }
        }
        layout.offsets[local] = off;
    }
    layout.free_count = std::size_t{1} << (n_qubits - static_cast<int>(seen.size()));
    return layout;
}

std::uint64_t insert_zero_bits(std::uint64_t j, std::span<const int> sorted_positions) {
    for (int pos : sorted_positions) {
        const std::uint64_t low = j & ((std::uint64_t{1} << pos) - 1);
        j = ((j >> pos) << (pos + 1)) | low;
    }
    return j;
}

std::uint64_t local_index(std::uint64_t i, int n_qubits, std::span<const int> qubits) {
    std::uint64_t out = 0;
    for (int q : qubits) {
        out = (out << 1) | ((i >> (n_qubits - 1 - q)) & 1U);
    }
    return out;
}

std::vector<int> validated_distinct(int n_qubits, std::span<const int> qubits) {
    std::vector<int> sorted(qubits.begin(), qubits.end());
    for (int q : sorted) {
        check_qubit(n_qubits, q);
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorCode::InvalidArgument, "measured qubits must be distinct");
    }
    return sorted;
}

// Amplitudes of the unmeasured qubits on the branch where `qubits` read `outcome`.
std::vector<Complex> branch_amplitudes(std::span<const Complex> amps, int n_qubits,
                                       std::span<const int> qubits, std::uint64_t outcome) {
    std::vector<std::pair<int, int>> fixed;
    const std::size_t m = qubits.size();
    for (std::size_t t = 0; t < m; ++t) {
        fixed.emplace_back(qubits[t], static_cast<int>((outcome >> (m - 1 - t)) & 1U));
    }
    const Layout layout = make_layout(n_qubits, {}, fixed);
    std::vector<Complex> out(layout.free_count);
    for (std::size_t j = 0; j < layout.free_count; ++j) {
        out[j] = amps[insert_zero_bits(j, layout.fixed_positions) | layout.control_bits];
    }
    return out;
}

} // namespace

int max_qubits() noexcept { return g_max_qubits.load(); }

void set_max_qubits(int n) {
    if (n < 1 || n > 30) {
        fail(ErrorCode::InvalidArgument, "maximum qubit count must lie in [1, 30]");
    }
    g_max_qubits.store(n);
}

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_capacity(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        fail(ErrorCode::InvalidArgument, "basis index out of range");
    }
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
    const int n = qubits_for_length(amps.size());
    double norm2 = 0.0;
    for (const auto &a : amps) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        fail(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= scale;
    }
    return {n, std::move(amps)};
}

StateVector StateVector::from_vector(const Vector &v) {
    return from_amplitudes(std::vector<Complex>(v.data(), v.data() + v.size()));
}

Vector StateVector::to_vector() const {
    return Eigen::Map<const Vector>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Register

Register::Register(int n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_capacity(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        fail(ErrorCode::InvalidArgument, "amplitude count does not match qubit count");
    }
}

double Register::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void Register::apply_matrix(const Matrix &u, std::span<const int> targets,
                            std::span<const std::pair<int, int>> controls) {
    const std::size_t k = targets.size();
    const std::size_t dim = std::size_t{1} << k;
    if (static_cast<std::size_t>(u.rows()) != dim || static_cast<std::size_t>(u.cols()) != dim) {
        fail(ErrorCode::InvalidArgument, "matrix of size " + std::to_string(u.rows()) + "x" +
                                             std::to_string(u.cols()) + " does not act on " +
                                             std::to_string(k) + " target qubits");
    }
    const Layout layout = make_layout(n_qubits_, targets, controls);
    std::vector<Complex> in(dim);
    std::vector<Complex> out(dim);
    for (std::size_t j = 0; j < layout.free_count; ++j) {
        const std::uint64_t base =
            insert_zero_bits(j, layout.fixed_positions) | layout.control_bits;
        for (std::size_t a = 0; a < dim; ++a) {
            in[a] = amps_[base | layout.offsets[a]];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < dim; ++c) {
                acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            out[r] = acc;
        }
        for (std::size_t a = 0; a < dim; ++a) {
            amps_[base | layout.offsets[a]] = out[a];
        }
    }
}

void Register::apply_diagonal(std::span<const Complex> phases, std::span<const int> targets,
                              std::span<const std::pair<int, int>> controls) {
    const std::size_t dim = std::size_t{1} << targets.size();
    if (phases.size() != dim) {
        fail(ErrorCode::InvalidArgument, "diagonal length does not match target count");
    }
    const Layout layout = make_layout(n_qubits_, targets, controls);
    for (std::size_t j = 0; j < layout.free_count; ++j) {
        const std::uint64_t base =
            insert_zero_bits(j, layout.fixed_positions) | layout.control_bits;
        for (std::size_t a = 0; a < dim; ++a) {
            amps_[base | layout.offsets[a]] *= phases[a];
        }
    }
}

void Register::apply_on_branch(int control, int value, const std::function<void(Register &)> &fn) {
    const std::pair<int, int> fixed[] = {{control, value}};
    const Layout layout = make_layout(n_qubits_, {}, fixed);
    std::vector<std::uint64_t> index(layout.free_count);
    std::vector<Complex> sub(layout.free_count);
    for (std::size_t j = 0; j < layout.free_count; ++j) {
        index[j] = insert_zero_bits(j, layout.fixed_positions) | layout.control_bits;
        sub[j] = amps_[index[j]];
    }
    Register branch(n_qubits_ - 1, std::move(sub));
    fn(branch);
    for (std::size_t j = 0; j < layout.free_count; ++j) {
        amps_[index[j]] = branch.amps_[j];
    }
}

void Register::swap_qubits(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::InvalidArgument, "swap registers differ in size");
    }
    std::vector<int> both(a.begin(), a.end());
    both.insert(both.end(), b.begin(), b.end());
    (void)make_layout(n_qubits_, both, {});
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        std::uint64_t j = i;
        for (std::size_t t = 0; t < a.size(); ++t) {
            const std::uint64_t ba = bit_of(n_qubits_, a[t]);
            const std::uint64_t bb = bit_of(n_qubits_, b[t]);
            const bool va = (i & ba) != 0;
            const bool vb = (i & bb) != 0;
            j = (j & ~(ba | bb)) | (vb ? ba : 0) | (va ? bb : 0);
        }
        if (j > i) {
            std::swap(amps_[i], amps_[j]);
        }
    }
}

StateVector Register::to_state(double tolerance) const {
    const double norm2 = norm_squared();
    if (std::abs(norm2 - 1.0) > tolerance) {
        fail(ErrorCode::NonUnitary,
             "register norm drifted to " + std::to_string(norm2) + "; expected 1");
    }
    std::vector<Complex> amps = amps_;
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= scale;
    }
    return {n_qubits_, std::move(amps)};
}

// ---------------------------------------------------------------------------
// Free functions

StateVector random_state(int n_qubits, Rng &rng) {
    if (n_qubits < 0 || n_qubits > max_qubits()) {
        fail(ErrorCode::Capacity, "random state exceeds the qubit capacity");
    }
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    for (auto &a : amps) {
        const double re = 2.0 * uniform01(rng) - 1.0;
        a = {re, 2.0 * uniform01(rng) - 1.0};
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const int n = a.n_qubits() + b.n_qubits();
    check_capacity(n);
    std::vector<Complex> out(std::size_t{1} << n);
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        for (std::size_t j = 0; j < bb.size(); ++j) {
            out[i * bb.size() + j] = aa[i] * bb[j];
        }
    }
    return Register(n, std::move(out)).to_state();
}

bool is_unitary(const Matrix &u, double tolerance) {
    if (u.rows() != u.cols()) {
        return false;
    }
    const Matrix err = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return err.cwiseAbs().maxCoeff() <= tolerance;
}

StateVector apply_unitary(const StateVector &state, const Matrix &u,
                          std::span<const int> targets) {
    if (!is_unitary(u)) {
        fail(ErrorCode::NonUnitary, "gate matrix is not unitary within 1e-10");
    }
    Register reg(state);
    reg.apply_matrix(u, targets);
    return reg.to_state();
}

StateVector apply_controlled(const StateVector &state, const Matrix &u, int control,
                             int control_value, std::span<const int> targets) {
    if (!is_unitary(u)) {
        fail(ErrorCode::NonUnitary, "gate matrix is not unitary within 1e-10");
    }
    if (std::find(targets.begin(), targets.end(), control) != targets.end()) {
        fail(ErrorCode::InvalidArgument, "control qubit is also a target");
    }
    Register reg(state);
    const std::pair<int, int> controls[] = {{control, control_value}};
    reg.apply_matrix(u, targets, controls);
    return reg.to_state();
}

std::vector<double> outcome_probabilities(std::span<const Complex> amps, int n_qubits,
                                          std::span<const int> qubits) {
    (void)validated_distinct(n_qubits, qubits);
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        probs[local_index(i, n_qubits, qubits)] += std::norm(amps[i]);
    }
    return probs;
}

namespace {

MeasurementRecord collapse(const StateVector &state, std::span<const int> qubits,
                           std::uint64_t outcome) {
    std::vector<Complex> branch =
        branch_amplitudes(state.amplitudes(), state.n_qubits(), qubits, outcome);
    double p = 0.0;
    for (const auto &a : branch) {
        p += std::norm(a);
    }
    if (p <= kZeroProbability) {
        fail(ErrorCode::ZeroProbability, "outcome " + std::to_string(outcome) +
                                             " has probability " + std::to_string(p));
    }
    MeasurementRecord rec;
    rec.outcome = outcome;
    rec.probability = p;
    rec.post_state = StateVector::from_amplitudes(std::move(branch));
    return rec;
}

} // namespace

MeasurementRecord measure(const StateVector &state, std::span<const int> qubits, Rng &rng) {
    const auto probs = outcome_probabilities(state.amplitudes(), state.n_qubits(), qubits);
    const double u = uniform01(rng);
    double cumulative = 0.0;
    std::uint64_t chosen = probs.size() - 1;
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
        cumulative += probs[k];
        if (u < cumulative) {
            chosen = k;
            break;
        }
    }
    // Rounding can leave the tail pointing at an empty outcome.
    while (probs[chosen] <= kZeroProbability && chosen > 0) {
        --chosen;
    }
    return collapse(state, qubits, chosen);
}

MeasurementRecord measure(const StateVector &state, std::span<const int> qubits,
                          const MeasureMode &mode) {
    (void)validated_distinct(state.n_qubits(), qubits);
    if (const auto *ps = std::get_if<PostSelect>(&mode)) {
        if (ps->outcome >= (std::uint64_t{1} << qubits.size())) {
            fail(ErrorCode::InvalidArgument, "post-selected outcome out of range");
        }
        return collapse(state, qubits, ps->outcome);
    }
    Rng rng(std::get<Sampled>(mode).seed);
    return measure(state, qubits, rng);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        fail(ErrorCode::InvalidArgument, "inner product of states with different qubit counts");
    }
    Complex acc{0.0, 0.0};
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        acc += std::conj(aa[i]) * bb[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

namespace gates {

Matrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << r, r, r, -r;
    return m;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix w_gate() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << r, -kI * r, r, kI * r;
    return m;
}

Matrix rz(double theta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (theta / 2.0));
    m(1, 1) = std::exp(kI * (theta / 2.0));
    return m;
}

Matrix ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

} // namespace gates

} // namespace pite
