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
 * The five oracle constructions, applied directly to amplitudes.
 *
 * Register layouts (top wire first):
 *   StandardBV   |x, y>            n + 1 qubits   y ^= f(x)
 *   Toffoli      |x, b, g>         n + 2 qubits   g ^= f(x) & b
 *   Phase        |x, g>            n + 1 qubits   sign flip when f(x) = 1, g = 0
 *   TwoRegister  |x, y, g>         2n + 1 qubits  g ^= f(x) ^ f(y)
 *   SingleXor    |x, b, g>         n + 2 qubits   g ^= f(x) ^ b
 *
 * Every permutation oracle is applied as a sweep of amplitude swaps between
 * the two target-bit values; no matrix is ever formed on this path.
 */
#pragma once

#include "bvlab/errors.hpp"
#include "bvlab/state_vector.hpp"
#include "bvlab/truth_table.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace bvlab {

enum class OracleKind { StandardBV, Toffoli, Phase, TwoRegister, SingleXor };

inline constexpr std::array kAllOracleKinds = {
    OracleKind::StandardBV, OracleKind::Toffoli, OracleKind::Phase,
    OracleKind::TwoRegister, OracleKind::SingleXor};

[[nodiscard]] constexpr std::string_view to_string(OracleKind kind) noexcept {
    switch (kind) {
    case OracleKind::StandardBV:
        return "standard_bv";
    case OracleKind::Toffoli:
        return "toffoli";
    case OracleKind::Phase:
        return "phase";
    case OracleKind::TwoRegister:
        return "two_register";
    case OracleKind::SingleXor:
        return "single_xor";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<OracleKind> oracle_kind_from_string(std::string_view s) {
    for (OracleKind k : kAllOracleKinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/// Total qubits the oracle acts on for a function of arity n.
[[nodiscard]] constexpr std::size_t oracle_qubits(OracleKind kind, std::size_t n) noexcept {
    switch (kind) {
    case OracleKind::StandardBV:
    case OracleKind::Phase:
        return n + 1;
    case OracleKind::Toffoli:
    case OracleKind::SingleXor:
        return n + 2;
    case OracleKind::TwoRegister:
        return 2 * n + 1;
    }
    return 0;
}

namespace detail {
inline void require_layout(const StateVector &state, std::size_t expected,
                           std::string_view oracle) {
    if (state.qubits() != expected) {
        throw DimensionError(std::string(oracle) + " expects " +
                             std::to_string(expected) + " qubits, state has " +
                             std::to_string(state.qubits()));
    }
}
}  // namespace detail

/// U_f |x, y> = |x, f(x) ^ y>
[[nodiscard]] inline StateVector apply_standard_bv(StateVector state,
                                                   const BooleanFunction &f) {
    detail::require_layout(state, f.arity() + 1, "standard BV oracle");
    auto amps = state.kernel_view();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.at(x)) {
            std::swap(amps[2 * x], amps[2 * x + 1]);
        }
    }
    return state;
}

/// T_f |x, b, g> = |x, b, g ^ (f(x) & b)>
[[nodiscard]] inline StateVector apply_toffoli_oracle(StateVector state,
                                                      const BooleanFunction &f) {
    detail::require_layout(state, f.arity() + 2, "Toffoli oracle");
    auto amps = state.kernel_view();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.at(x)) {
            std::swap(amps[4 * x + 0b10], amps[4 * x + 0b11]);
        }
    }
    return state;
}

/**
 * P_f |x, g> = exp(-i pi (f(x) & !g)) |x, g>, tensored with the identity on
 * `trailing_identity` further qubits below g. The pipeline form (P_f (x) I)
 * uses trailing_identity = 1.
 */
[[nodiscard]] inline StateVector apply_phase_oracle(StateVector state,
                                                    const BooleanFunction &f,
                                                    std::size_t trailing_identity = 0) {
    detail::require_layout(state, f.arity() + 1 + trailing_identity, "phase oracle");
    auto amps = state.kernel_view();
    const std::size_t block = std::size_t{1} << trailing_identity;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (!f.at(x)) {
            continue;
        }
        // g = 0 half of the 2 * block amplitudes sharing prefix x.
        const std::size_t base = static_cast<std::size_t>(x) * 2 * block;
        for (std::size_t r = 0; r < block; ++r) {
            amps[base + r] = -amps[base + r];
        }
    }
    return state;
}

/// S_f |x, y, g> = |x, y, g ^ f(x) ^ f(y)>
[[nodiscard]] inline StateVector apply_two_register_oracle(StateVector state,
                                                           const BooleanFunction &f) {
    const std::size_t n = f.arity();
    detail::require_layout(state, 2 * n + 1, "two-register oracle");
    auto amps = state.kernel_view();
    const std::uint64_t count = f.size();
    for (std::uint64_t x = 0; x < count; ++x) {
        const Bit fx = f.at(x);
        const std::size_t row = static_cast<std::size_t>(x) << (n + 1);
        for (std::uint64_t y = 0; y < count; ++y) {
            if (fx != f.at(y)) {
                const std::size_t i = row | (static_cast<std::size_t>(y) << 1U);
                std::swap(amps[i], amps[i | 1U]);
            }
        }
    }
    return state;
}

/// S'_f |x, b, g> = |x, b, g ^ f(x) ^ b>
[[nodiscard]] inline StateVector apply_single_xor_oracle(StateVector state,
                                                         const BooleanFunction &f) {
    detail::require_layout(state, f.arity() + 2, "single-XOR oracle");
    auto amps = state.kernel_view();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        // g flips on the b slice where f(x) ^ b = 1, i.e. b = !f(x).
        const std::size_t b = f.at(x) ? 0 : 1;
        const std::size_t i = 4 * static_cast<std::size_t>(x) + 2 * b;
        std::swap(amps[i], amps[i + 1]);
    }
    return state;
}

[[nodiscard]] inline StateVector apply_oracle(OracleKind kind, StateVector state,
                                              const BooleanFunction &f) {
    switch (kind) {
    case OracleKind::StandardBV:
        return apply_standard_bv(std::move(state), f);
    case OracleKind::Toffoli:
        return apply_toffoli_oracle(std::move(state), f);
    case OracleKind::Phase:
        return apply_phase_oracle(std::move(state), f);
    case OracleKind::TwoRegister:
        return apply_two_register_oracle(std::move(state), f);
    case OracleKind::SingleXor:
        return apply_single_xor_oracle(std::move(state), f);
    }
    throw ArgumentError("unknown oracle kind");
}

inline constexpr std::size_t kMaxDenseOracleQubits = 12;

/// Column v is the oracle applied to the basis state |v>.
[[nodiscard]] inline DenseMatrix oracle_dense_matrix(OracleKind kind,
                                                     const BooleanFunction &f,
                                                     std::size_t max_qubits = kMaxDenseOracleQubits) {
    const std::size_t m = oracle_qubits(kind, f.arity());
    if (m > max_qubits) {
        throw CapacityError(std::string(to_string(kind)) + " oracle on " +
                            std::to_string(m) +
                            " qubits exceeds the dense-extraction cap of " +
                            std::to_string(max_qubits));
    }
    DenseMatrix out(m);
    for (std::size_t v = 0; v < out.dim(); ++v) {
        const StateVector column =
            apply_oracle(kind, basis_state(m, BitString::from_int(m, v)), f);
        for (std::size_t r = 0; r < out.dim(); ++r) {
            out(r, v) = column[r];
        }
    }
    return out;
}

}  // namespace bvlab
