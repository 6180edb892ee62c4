// Copyright 2026 The bvlab Authors
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

/**
 * @file
 * Dense state vectors over m qubits and small dense operator matrices.
 *
 * Amplitude index v corresponds to the ket |from_int(m, v)>, so qubit 0 is
 * the most significant index bit (the top wire of a circuit diagram). Gates
 * are applied in place by index-pair sweeps: the pair partner of index i for
 * qubit q is i ^ (1 << (m - 1 - q)).
 */
#pragma once

#include "bvlab/bitstring.hpp"
#include "bvlab/errors.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bvlab {

using Amplitude = std::complex<double>;

/// Probability of each outcome w of a marginal, indexed by to_int(w).
using Distribution = std::vector<double>;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr std::size_t kMaxQubits = 30;

class StateVector {
  public:
    /// Takes ownership of a unit-norm amplitude vector of length 2^qubits.
    StateVector(std::size_t qubits, std::vector<Amplitude> amplitudes)
        : qubits_(qubits), amps_(std::move(amplitudes)) {
        check_qubits(qubits_);
        if (amps_.size() != (std::size_t{1} << qubits_)) {
            throw DimensionError("state of " + std::to_string(qubits_) +
                                 " qubits needs " +
                                 std::to_string(std::size_t{1} << qubits_) +
                                 " amplitudes, got " +
                                 std::to_string(amps_.size()));
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw ArgumentError("state vector is not normalised");
        }
    }

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept {
        return amps_;
    }

    /// Mutable view for in-place kernels. Kernels must be unitary.
    [[nodiscard]] std::span<Amplitude> kernel_view() noexcept { return amps_; }

    [[nodiscard]] const Amplitude &operator[](std::size_t index) const {
        return amps_.at(index);
    }

    [[nodiscard]] double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    static void check_qubits(std::size_t qubits) {
        if (qubits == 0) {
            throw ArgumentError("a state needs at least one qubit");
        }
        if (qubits > kMaxQubits) {
            throw CapacityError(std::to_string(qubits) +
                                " qubits exceed the dense limit of " +
                                std::to_string(kMaxQubits));
        }
    }

  private:
    std::size_t qubits_;
    std::vector<Amplitude> amps_;
};

namespace detail {
inline void require_qubit(std::size_t m, std::size_t q) {
    if (q >= m) {
        throw IndexError("qubit " + std::to_string(q) +
                         " out of range for a " + std::to_string(m) +
                         "-qubit state");
    }
}

inline void require_same_qubits(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionError("qubit count mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

inline std::size_t index_bit(std::size_t m, std::size_t q) {
    return std::size_t{1} << (m - 1 - q);
}

inline void format_amplitude(std::string &out, double re, double im) {
    // Values that print as zero are emitted without a sign.
    auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
    char buf[64];
    std::snprintf(buf, sizeof buf, "\t%.12f\t%.12f\n", clean(re), clean(im));
    out += buf;
}
}  // namespace detail

namespace kernels {

/// In-place Hadamard on one qubit of a 2^m amplitude array.
inline void hadamard(std::span<Amplitude> amps, std::size_t m, std::size_t q) {
    const std::size_t stride = detail::index_bit(m, q);
    const std::size_t n = amps.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + stride];
            amps[i] = (a0 + a1) * kInvSqrt2;
            amps[i + stride] = (a0 - a1) * kInvSqrt2;
        }
    }
}

}  // namespace kernels

/// Qubits first, first + 1, ..., first + count - 1.
[[nodiscard]] inline std::vector<std::size_t> qubit_range(std::size_t first,
                                                          std::size_t count) {
    std::vector<std::size_t> qs(count);
    std::iota(qs.begin(), qs.end(), first);
    return qs;
}

[[nodiscard]] inline StateVector basis_state(std::size_t m,
                                             const BitString &label) {
    if (label.length() != m) {
        throw DimensionError("basis label of length " +
                             std::to_string(label.length()) + " for " +
                             std::to_string(m) + " qubits");
    }
    StateVector::check_qubits(m);
    std::vector<Amplitude> amps(std::size_t{1} << m);
    amps[label.to_int()] = 1.0;
    return StateVector(m, std::move(amps));
}

[[nodiscard]] inline StateVector basis_state(const BitString &label) {
    return basis_state(label.length(), label);
}

[[nodiscard]] inline StateVector apply_hadamard(StateVector state,
                                                std::size_t qubit) {
    detail::require_qubit(state.qubits(), qubit);
    kernels::hadamard(state.kernel_view(), state.qubits(), qubit);
    return state;
}

[[nodiscard]] inline StateVector
apply_hadamard_layer(StateVector state, std::span<const std::size_t> qubits) {
    for (std::size_t q : qubits) {
        detail::require_qubit(state.qubits(), q);
    }
    for (std::size_t q : qubits) {
        kernels::hadamard(state.kernel_view(), state.qubits(), q);
    }
    return state;
}

[[nodiscard]] inline StateVector apply_hadamard_layer(StateVector state) {
    const auto all = qubit_range(0, state.qubits());
    return apply_hadamard_layer(std::move(state), all);
}

/// (1/sqrt(2^n)) sum_x (-1)^(x . gamma) |x>, built directly from parities.
[[nodiscard]] inline StateVector hadamard_of_key(std::size_t n,
                                                 const BitString &gamma) {
    if (gamma.length() != n) {
        throw DimensionError("hadamard_of_key: key length " +
                             std::to_string(gamma.length()) + " for n = " +
                             std::to_string(n));
    }
    StateVector::check_qubits(n);
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    const std::uint64_t g = gamma.to_int();
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (std::size_t x = 0; x < amps.size(); ++x) {
        amps[x] = parity_dot(x, g) ? -scale : scale;
    }
    return StateVector(n, std::move(amps));
}

[[nodiscard]] inline StateVector uniform_state(std::size_t n) {
    return hadamard_of_key(n, BitString::zeros(n));
}

[[nodiscard]] inline StateVector plus_state() {
    return StateVector(1, {kInvSqrt2, kInvSqrt2});
}

[[nodiscard]] inline StateVector minus_state() {
    return StateVector(1, {kInvSqrt2, -kInvSqrt2});
}

/// a (x) b with a on the top (more significant) qubits.
[[nodiscard]] inline StateVector tensor(const StateVector &a,
                                        const StateVector &b) {
    StateVector::check_qubits(a.qubits() + b.qubits());
    const std::size_t nb = b.size();
    std::vector<Amplitude> amps(a.size() * nb);
    for (std::size_t u = 0; u < a.size(); ++u) {
        for (std::size_t v = 0; v < nb; ++v) {
            amps[u * nb + v] = a.amplitudes()[u] * b.amplitudes()[v];
        }
    }
    return StateVector(a.qubits() + b.qubits(), std::move(amps));
}

template <class... Rest>
[[nodiscard]] StateVector tensor(const StateVector &a, const StateVector &b,
                                 const Rest &...rest) {
    return tensor(tensor(a, b), rest...);
}

/**
 * Marginal distribution over the listed qubits. Outcome w is read with the
 * first listed qubit as its most significant bit.
 */
[[nodiscard]] inline Distribution marginal(const StateVector &state,
                                           std::span<const std::size_t> qubits) {
    if (qubits.empty()) {
        throw ArgumentError("marginal over an empty qubit set");
    }
    const std::size_t m = state.qubits();
    std::uint64_t seen = 0;
    for (std::size_t q : qubits) {
        detail::require_qubit(m, q);
        if ((seen >> q) & 1U) {
            throw ArgumentError("marginal: qubit " + std::to_string(q) +
                                " listed twice");
        }
        seen |= std::uint64_t{1} << q;
    }
    const std::size_t k = qubits.size();
    Distribution probs(std::size_t{1} << k, 0.0);
    const auto amps = state.amplitudes();

    bool contiguous = true;
    for (std::size_t i = 1; i < k; ++i) {
        contiguous = contiguous && qubits[i] == qubits[0] + i;
    }
    if (contiguous) {
        const std::size_t shift = m - qubits[0] - k;
        const std::size_t mask = (std::size_t{1} << k) - 1;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            probs[(i >> shift) & mask] += std::norm(amps[i]);
        }
        return probs;
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t w = 0;
        for (std::size_t q : qubits) {
            w = (w << 1U) | ((i >> (m - 1 - q)) & 1U);
        }
        probs[w] += std::norm(amps[i]);
    }
    return probs;
}

/// The outcome of a k-bit distribution with probability at least 1 - tol.
[[nodiscard]] inline BitString certain_outcome(const Distribution &probs,
                                               std::size_t k, double tol = 1e-9) {
    const auto best = std::max_element(probs.begin(), probs.end());
    if (*best < 1.0 - tol) {
        throw NotDeterministicError(
            "no outcome reaches probability 1 - " + std::to_string(tol) +
            " (largest is " + std::to_string(*best) + ")");
    }
    return BitString::from_int(k, static_cast<std::uint64_t>(best - probs.begin()));
}

/// The outcome whose marginal probability is at least 1 - tol.
[[nodiscard]] inline BitString measure_certain(const StateVector &state,
                                               std::span<const std::size_t> qubits,
                                               double tol = 1e-9) {
    return certain_outcome(marginal(state, qubits), qubits.size(), tol);
}

/// One seeded draw from a k-bit distribution. mt19937_64 output is fixed by
/// the standard, so the same seed yields the same outcome on every platform.
[[nodiscard]] inline BitString sample_distribution(const Distribution &probs,
                                                   std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    const double u = static_cast<double>(rng() >> 11U) * 0x1.0p-53 * total;
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t w = 0; w < probs.size(); ++w) {
        if (probs[w] <= 0.0) {
            continue;
        }
        last_nonzero = w;
        acc += probs[w];
        if (u < acc) {
            return BitString::from_int(k, w);
        }
    }
    return BitString::from_int(k, last_nonzero);
}

/// One seeded draw from the marginal over `qubits`.
[[nodiscard]] inline BitString sample(const StateVector &state,
                                      std::span<const std::size_t> qubits,
                                      std::uint64_t seed) {
    return sample_distribution(marginal(state, qubits), qubits.size(), seed);
}

[[nodiscard]] inline double max_abs_diff(std::span<const Amplitude> a,
                                         std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw DimensionError("amplitude arrays differ in size");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

[[nodiscard]] inline double max_deviation(const StateVector &a,
                                          const StateVector &b) {
    detail::require_same_qubits(a.qubits(), b.qubits());
    return max_abs_diff(a.amplitudes(), b.amplitudes());
}

/// min over the unit phase c fixed by b's largest entry of max |a - c b|.
[[nodiscard]] inline double max_deviation_up_to_global_phase(const StateVector &a,
                                                             const StateVector &b) {
    detail::require_same_qubits(a.qubits(), b.qubits());
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < bv.size(); ++i) {
        if (std::abs(bv[i]) > std::abs(bv[pivot])) {
            pivot = i;
        }
    }
    Amplitude c = 1.0;
    const Amplitude ratio = av[pivot] / bv[pivot];
    if (std::abs(ratio) > 0.0) {
        c = ratio / std::abs(ratio);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        worst = std::max(worst, std::abs(av[i] - c * bv[i]));
    }
    return worst;
}

[[nodiscard]] inline bool state_close(const StateVector &a, const StateVector &b,
                                      double tol) {
    return max_deviation(a, b) <= tol;
}

[[nodiscard]] inline bool state_close_up_to_global_phase(const StateVector &a,
                                                         const StateVector &b,
                                                         double tol) {
    return max_deviation_up_to_global_phase(a, b) <= tol;
}

/**
 * Contracts the last qubit with the single-qubit ket `factor`, returning
 * <factor|_last |state>. When state = psi (x) factor the result is psi.
 */
[[nodiscard]] inline StateVector project_last_qubit(const StateVector &state,
                                                    const StateVector &factor) {
    if (factor.qubits() != 1 || state.qubits() < 2) {
        throw DimensionError("project_last_qubit needs a 1-qubit factor and "
                             "at least 2 qubits");
    }
    const Amplitude f0 = std::conj(factor[0]);
    const Amplitude f1 = std::conj(factor[1]);
    std::vector<Amplitude> out(state.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f0 * state[2 * i] + f1 * state[2 * i + 1];
    }
    return StateVector(state.qubits() - 1, std::move(out));
}

/// One line per amplitude with magnitude >= 1e-12: "bits\tre\tim".
[[nodiscard]] inline std::string dump_state(const StateVector &state) {
    std::string out;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) < 1e-12) {
            continue;
        }
        out += BitString::from_int(state.qubits(), i).str();
        detail::format_amplitude(out, amps[i].real(), amps[i].imag());
    }
    return out;
}

/// Square complex matrix of dimension 2^k, row-major.
class DenseMatrix {
  public:
    explicit DenseMatrix(std::size_t qubits)
        : qubits_(qubits), dim_(std::size_t{1} << qubits),
          entries_(dim_ * dim_) {}

    static DenseMatrix identity(std::size_t qubits) {
        DenseMatrix m(qubits);
        for (std::size_t i = 0; i < m.dim_; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    Amplitude &operator()(std::size_t r, std::size_t c) {
        return entries_[r * dim_ + c];
    }
    const Amplitude &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim_ + c];
    }

    [[nodiscard]] std::vector<Amplitude> apply(std::span<const Amplitude> v) const {
        if (v.size() != dim_) {
            throw DimensionError("matrix-vector size mismatch");
        }
        std::vector<Amplitude> out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            Amplitude s = 0.0;
            for (std::size_t c = 0; c < dim_; ++c) {
                s += entries_[r * dim_ + c] * v[c];
            }
            out[r] = s;
        }
        return out;
    }

    [[nodiscard]] const Amplitude *data() const noexcept { return entries_.data(); }

  private:
    std::size_t qubits_;
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

/// max |(M^dagger M - I)_{rc}|
/// max |M^dagger M - I|. Only exact zeros are dropped before the product, so
/// the result equals the dense computation.
[[nodiscard]] inline double unitarity_deviation(const DenseMatrix &m) {
    using Sparse = Eigen::SparseMatrix<Amplitude, Eigen::ColMajor>;
    const auto d = static_cast<Eigen::Index>(m.dim());
    std::vector<Eigen::Triplet<Amplitude>> entries;
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const Amplitude v = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            if (v != Amplitude(0.0)) {
                entries.emplace_back(r, c, v);
            }
        }
    }
    Sparse a(d, d);
    a.setFromTriplets(entries.begin(), entries.end());
    const Sparse adjoint = a.adjoint();
    const Sparse gram = adjoint * a;

    double worst = 0.0;
    std::vector<bool> diagonal_seen(m.dim(), false);
    for (Eigen::Index c = 0; c < gram.outerSize(); ++c) {
        for (Sparse::InnerIterator it(gram, c); it; ++it) {
            Amplitude v = it.value();
            if (it.row() == it.col()) {
                v -= 1.0;
                diagonal_seen[static_cast<std::size_t>(c)] = true;
            }
            worst = std::max(worst, std::abs(v));
        }
    }
    if (std::find(diagonal_seen.begin(), diagonal_seen.end(), false) != diagonal_seen.end()) {
        worst = std::max(worst, 1.0);
    }
    return worst;
}

/// max |M - M^dagger|
[[nodiscard]] inline double hermiticity_deviation(const DenseMatrix &m) {
    const std::size_t d = m.dim();
    double worst = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

[[nodiscard]] inline bool check_unitary(const DenseMatrix &m, double tol) {
    return unitarity_deviation(m) <= tol;
}

[[nodiscard]] inline bool check_hermitian(const DenseMatrix &m, double tol) {
    return hermiticity_deviation(m) <= tol;
}

/// Every entry within tol of 0 or 1, with exactly one near-1 entry per row
/// and per column.
[[nodiscard]] inline bool check_permutation(const DenseMatrix &m, double tol) {
    const std::size_t d = m.dim();
    std::vector<std::size_t> col_hits(d, 0);
    for (std::size_t r = 0; r < d; ++r) {
        std::size_t row_hits = 0;
        for (std::size_t c = 0; c < d; ++c) {
            const Amplitude v = m(r, c);
            if (std::abs(v - 1.0) <= tol) {
                ++row_hits;
                ++col_hits[c];
            } else if (std::abs(v) > tol) {
                return false;
            }
        }
        if (row_hits != 1) {
            return false;
        }
    }
    return std::all_of(col_hits.begin(), col_hits.end(),
                       [](std::size_t h) { return h == 1; });
}

/// Diagonal with every diagonal entry within tol of +1 or -1.
[[nodiscard]] inline bool check_diagonal_sign(const DenseMatrix &m, double tol) {
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const Amplitude v = m(r, c);
            if (r != c) {
                if (std::abs(v) > tol) {
                    return false;
                }
            } else if (std::abs(v - 1.0) > tol && std::abs(v + 1.0) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// Row-by-row dump: a "row <bits>" header followed by that row's nonzero
/// entries in the state-dump format, keyed by column label.
[[nodiscard]] inline std::string dump_matrix(const DenseMatrix &m) {
    std::string out;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        out += "row " + BitString::from_int(m.qubits(), r).str() + "\n";
        for (std::size_t c = 0; c < m.dim(); ++c) {
            const Amplitude v = m(r, c);
            if (std::abs(v) < 1e-12) {
                continue;
            }
            out += BitString::from_int(m.qubits(), c).str();
            detail::format_amplitude(out, v.real(), v.imag());
        }
    }
    return out;
}

}  // namespace bvlab
