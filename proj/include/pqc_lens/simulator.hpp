// Copyright 2026 The pqc-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqc_lens/circuit.hpp"
#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"

namespace pqc_lens {

using Complex = std::complex<double>;

/// Plain complex product; std::complex's operator* carries NaN/inf recovery
/// that dominates the gate kernels.
inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Pure state of n qubits. Qubit 0 is the most significant bit of the basis
/// index, so amplitude i belongs to the bitstring of i written MSB first.
class StateVector {
   public:
    /// |0...0>
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
        if (n_qubits < 1 || n_qubits > 30) throw InvalidArgument("StateVector: qubit count must be in [1, 30]");
        amps_[0] = 1.0;
    }

    /// Takes ownership of amplitudes; they must already be normalized.
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes, double tolerance = 1e-10)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        if (n_qubits < 1 || n_qubits > 30) throw InvalidArgument("StateVector: qubit count must be in [1, 30]");
        if (amps_.size() != (std::size_t{1} << n_qubits))
            throw InvalidArgument("StateVector: amplitude count must be 2^n_qubits");
        if (std::abs(norm() - 1.0) > tolerance) throw InvalidArgument("StateVector: amplitudes are not normalized");
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex &a) { return std::norm(a); });
        return p;
    }

    /// <this|other>
    Complex inner(const StateVector &other) const {
        if (other.n_qubits_ != n_qubits_) throw InvalidArgument("inner: qubit-count mismatch");
        Complex s = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) s += cmul(std::conj(amps_[i]), other.amps_[i]);
        return s;
    }

    double fidelity(const StateVector &other) const { return std::norm(inner(other)); }

    void apply(const BoundGate &g) {
        switch (g.kind) {
            case GateKind::H: {
                const double r = 1.0 / std::sqrt(2.0);
                apply_matrix(g.q0, r, r, r, -r);
                break;
            }
            case GateKind::X: apply_x(g.q0); break;
            case GateKind::Y: apply_matrix(g.q0, 0.0, Complex(0, -1), Complex(0, 1), 0.0); break;
            case GateKind::Z: apply_diagonal(g.q0, 1.0, -1.0); break;
            case GateKind::RX: {
                const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
                apply_matrix(g.q0, c, Complex(0, -s), Complex(0, -s), c);
                break;
            }
            case GateKind::RY: {
                const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
                apply_matrix(g.q0, c, -s, s, c);
                break;
            }
            case GateKind::RZ: {
                const Complex phase = std::polar(1.0, -g.angle / 2);
                apply_diagonal(g.q0, phase, std::conj(phase));
                break;
            }
            case GateKind::CX: apply_cx(g.q0, g.q1); break;
            case GateKind::CZ: apply_cz(g.q0, g.q1); break;
        }
    }

    void apply_pauli(Pauli p, std::size_t q) {
        switch (p) {
            case Pauli::X: apply_x(q); break;
            case Pauli::Y: apply_matrix(q, 0.0, Complex(0, -1), Complex(0, 1), 0.0); break;
            case Pauli::Z: apply_diagonal(q, 1.0, -1.0); break;
        }
    }

    std::size_t stride(std::size_t q) const { return std::size_t{1} << (n_qubits_ - 1 - q); }

   private:
    void check_qubit(std::size_t q) const {
        if (q >= n_qubits_) throw InvalidArgument("qubit index " + std::to_string(q) + " out of range");
    }

    // Visits every index pair (i, i | stride) with the qubit's bit clear in i.
    template <typename Fn>
    void for_each_pair(std::size_t q, Fn &&fn) {
        check_qubit(q);
        const std::size_t st = stride(q);
        for (std::size_t base = 0; base < amps_.size(); base += 2 * st)
            for (std::size_t i = base; i < base + st; ++i) fn(i, i + st);
    }

    void apply_matrix(std::size_t q, Complex m00, Complex m01, Complex m10, Complex m11) {
        for_each_pair(q, [&](std::size_t i, std::size_t j) {
            const Complex a = amps_[i], b = amps_[j];
            amps_[i] = cmul(m00, a) + cmul(m01, b);
            amps_[j] = cmul(m10, a) + cmul(m11, b);
        });
    }

    void apply_diagonal(std::size_t q, Complex d0, Complex d1) {
        for_each_pair(q, [&](std::size_t i, std::size_t j) {
            amps_[i] = cmul(amps_[i], d0);
            amps_[j] = cmul(amps_[j], d1);
        });
    }

    void apply_x(std::size_t q) {
        for_each_pair(q, [&](std::size_t i, std::size_t j) { std::swap(amps_[i], amps_[j]); });
    }

    void apply_cx(std::size_t control, std::size_t target) {
        check_qubit(control);
        check_qubit(target);
        const std::size_t cs = stride(control), ts = stride(target);
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if ((i & cs) && !(i & ts)) std::swap(amps_[i], amps_[i | ts]);
    }

    void apply_cz(std::size_t a, std::size_t b) {
        check_qubit(a);
        check_qubit(b);
        const std::size_t mask = stride(a) | stride(b);
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if ((i & mask) == mask) amps_[i] = -amps_[i];
    }

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

/// Mixed state on n qubits, stored densely (2^n x 2^n).
class DensityMatrix {
   public:
    DensityMatrix(std::size_t n_qubits, Eigen::MatrixXcd entries)
        : n_qubits_(n_qubits), entries_(std::move(entries)) {
        const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
        if (entries_.rows() != d || entries_.cols() != d)
            throw InvalidArgument("DensityMatrix: shape must be 2^n x 2^n");
    }

    std::size_t n_qubits() const { return n_qubits_; }
    const Eigen::MatrixXcd &entries() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    Complex trace() const { return entries_.trace(); }

    /// Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double purity() const { return entries_.squaredNorm(); }

    /// Eigenvalues in descending order.
    std::vector<double> eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
        const auto &ev = solver.eigenvalues();
        std::vector<double> out(ev.data(), ev.data() + ev.size());
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }

    double hermiticity_error() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

   private:
    std::size_t n_qubits_;
    Eigen::MatrixXcd entries_;
};

/// Depolarizing-style stochastic Pauli noise plus readout bit flips.
struct NoiseModel {
    double depolarizing_prob_1q = 0.0;
    double depolarizing_prob_2q = 0.0;
    double readout_flip_prob = 0.0;

    void validate() const {
        for (double p : {depolarizing_prob_1q, depolarizing_prob_2q, readout_flip_prob})
            if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("NoiseModel: probabilities must lie in [0, 1]");
    }
};

/// Measurement histogram keyed by bitstring (qubit 0 first).
struct ShotCounts {
    std::map<std::string, std::size_t> counts;
    std::size_t shots = 0;

    double frequency(const std::string &bits) const {
        auto it = counts.find(bits);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
    }
};

inline constexpr std::size_t kDefaultShots = 1024;

/// Returns U|initial>.
inline StateVector simulate(const BoundCircuit &circuit, StateVector initial) {
    if (initial.n_qubits() != circuit.n_qubits)
        throw InvalidArgument("simulate: initial state has " + std::to_string(initial.n_qubits()) +
                              " qubits, circuit has " + std::to_string(circuit.n_qubits));
    for (const auto &g : circuit.gates) initial.apply(g);
    return initial;
}

inline StateVector simulate(const BoundCircuit &circuit) { return simulate(circuit, StateVector(circuit.n_qubits)); }

inline StateVector simulate(const CircuitDescriptor &circuit, std::span<const double> theta) {
    return simulate(bind(circuit, theta));
}

/// <psi| P |psi> for a single Pauli string.
inline double pauli_expectation(const StateVector &state, const std::map<std::size_t, Pauli> &paulis) {
    std::size_t flip = 0, sign = 0, n_y = 0;
    for (const auto &[q, p] : paulis) {
        if (q >= state.n_qubits()) throw InvalidArgument("expectation: observable qubit out of range");
        const std::size_t bit = state.stride(q);
        if (p != Pauli::Z) flip |= bit;
        if (p != Pauli::X) sign |= bit;
        if (p == Pauli::Y) ++n_y;
    }
    // P|i> = i^{n_y} (-1)^{popcount(i & sign)} |i ^ flip>
    const auto amps = state.amplitudes();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double s = (std::popcount(i & sign) & 1) ? -1.0 : 1.0;
        acc += cmul(std::conj(amps[i ^ flip]), amps[i]) * s;
    }
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return (acc * kIPow[n_y % 4]).real();
}

/// <psi| O |psi> for a Pauli sum.
inline double expectation(const StateVector &state, const PauliSum &obs) {
    double total = 0.0;
    for (const auto &t : obs.terms())
        if (t.coeff != 0.0) total += t.coeff * pauli_expectation(state, t.paulis);
    return total;
}

inline std::string basis_bitstring(std::size_t index, std::size_t n_qubits) {
    std::string bits(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q)
        if ((index >> (n_qubits - 1 - q)) & 1) bits[q] = '1';
    return bits;
}

/// Draws computational-basis outcomes from |a_i|^2, then flips each bit
/// independently with probability readout_flip_prob.
inline ShotCounts sample(const StateVector &state, std::size_t shots, Seed seed, double readout_flip_prob = 0.0) {
    if (shots == 0) throw InvalidArgument("sample: shots must be at least 1");
    if (!(readout_flip_prob >= 0.0 && readout_flip_prob <= 1.0))
        throw InvalidArgument("sample: readout flip probability must lie in [0, 1]");
    const auto probs = state.probabilities();
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (probs[i] > 0.0) last_nonzero = i;

    Rng rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, cdf.back());
    std::bernoulli_distribution flip(readout_flip_prob);
    std::vector<std::size_t> hits(probs.size(), 0);
    ShotCounts out;
    out.shots = shots;
    for (std::size_t s = 0; s < shots; ++s) {
        auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform(rng));
        auto idx = std::min(static_cast<std::size_t>(it - cdf.begin()), last_nonzero);
        if (readout_flip_prob > 0.0) {
            auto bits = basis_bitstring(idx, state.n_qubits());
            for (auto &b : bits)
                if (flip(rng)) b = (b == '0') ? '1' : '0';
            ++out.counts[bits];
        } else {
            ++hits[idx];
        }
    }
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i]) out.counts[basis_bitstring(i, state.n_qubits())] = hits[i];
    return out;
}

inline ShotCounts sample(const StateVector &state, std::size_t shots, Seed seed, const NoiseModel &noise) {
    noise.validate();
    return sample(state, shots, seed, noise.readout_flip_prob);
}

/// One stochastic trajectory: after each 1q (2q) gate, with probability p1
/// (p2) a uniformly chosen non-identity Pauli (string) hits the gate's targets.
inline StateVector simulate_noisy(const BoundCircuit &circuit, const NoiseModel &noise, Seed seed) {
    noise.validate();
    StateVector state(circuit.n_qubits);
    Rng rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    static constexpr Pauli kPaulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    for (const auto &g : circuit.gates) {
        state.apply(g);
        if (arity(g.kind) == 1) {
            if (noise.depolarizing_prob_1q > 0.0 && coin(rng) < noise.depolarizing_prob_1q)
                state.apply_pauli(kPaulis[std::uniform_int_distribution<int>(0, 2)(rng)], g.q0);
        } else {
            if (noise.depolarizing_prob_2q > 0.0 && coin(rng) < noise.depolarizing_prob_2q) {
                const int code = std::uniform_int_distribution<int>(1, 15)(rng);  // base-4 digits: I X Y Z
                if (code / 4) state.apply_pauli(kPaulis[code / 4 - 1], g.q0);
                if (code % 4) state.apply_pauli(kPaulis[code % 4 - 1], g.q1);
            }
        }
    }
    return state;
}

/// Trajectory-averaged <O>; trajectory i uses seed + i.
inline double noisy_expectation(const BoundCircuit &circuit, const PauliSum &obs, const NoiseModel &noise,
                                std::size_t trajectories, Seed seed) {
    if (trajectories == 0) throw InvalidArgument("noisy_expectation: need at least one trajectory");
    std::vector<double> values(trajectories);
    parallel_for(trajectories, [&](std::size_t i) {
        values[i] = expectation(simulate_noisy(circuit, noise, seed + i), obs);
    });
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(trajectories);
}

namespace detail {

// Reshapes the amplitudes into a (2^|keep| x 2^rest) matrix whose row index
// is formed by the kept qubits (in ascending order, first = most significant).
inline Eigen::MatrixXcd split_amplitudes(const StateVector &state, std::span<const std::size_t> keep) {
    const std::size_t n = state.n_qubits();
    std::vector<bool> kept(n, false);
    for (auto q : keep) {
        if (q >= n) throw InvalidArgument("reduced_density_matrix: qubit index out of range");
        if (kept[q]) throw InvalidArgument("reduced_density_matrix: duplicate qubit in subset");
        kept[q] = true;
    }
    std::vector<std::size_t> a_bits, b_bits;  // strides, most significant first
    for (std::size_t q = 0; q < n; ++q) (kept[q] ? a_bits : b_bits).push_back(state.stride(q));
    const auto rows = static_cast<Eigen::Index>(std::size_t{1} << a_bits.size());
    const auto cols = static_cast<Eigen::Index>(std::size_t{1} << b_bits.size());
    Eigen::MatrixXcd m(rows, cols);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t r = 0, c = 0;
        for (auto s : a_bits) r = (r << 1) | ((i & s) ? 1 : 0);
        for (auto s : b_bits) c = (c << 1) | ((i & s) ? 1 : 0);
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[i];
    }
    return m;
}

}  // namespace detail

/// Partial trace over the complement of `keep`.
inline DensityMatrix reduced_density_matrix(const StateVector &state, std::vector<std::size_t> keep) {
    if (keep.empty()) throw InvalidArgument("reduced_density_matrix: subset must be nonempty");
    std::sort(keep.begin(), keep.end());
    const Eigen::MatrixXcd m = detail::split_amplitudes(state, keep);
    Eigen::MatrixXcd rho = m * m.adjoint();
    return DensityMatrix(keep.size(), std::move(rho));
}

/// Tr(rho_S^2) for the marginal on `keep`; uses whichever side of the cut is
/// smaller, since both marginals of a pure state share their spectrum.
inline double subsystem_purity(const StateVector &state, std::vector<std::size_t> keep) {
    if (keep.empty()) throw InvalidArgument("subsystem_purity: subset must be nonempty");
    std::sort(keep.begin(), keep.end());
    if (keep.size() == state.n_qubits()) return 1.0;
    const Eigen::MatrixXcd m = detail::split_amplitudes(state, keep);
    if (m.rows() <= m.cols()) return (m * m.adjoint()).squaredNorm();
    return (m.adjoint() * m).squaredNorm();
}

}  // namespace pqc_lens
