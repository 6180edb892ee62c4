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
 * Dense-matrix certification of every oracle kind over a set of functions:
 * unitarity, self-adjointness and the 0/1-permutation (or +-1 diagonal for
 * the phase oracle) structure.
 */
#pragma once

#include "bvlab/oracles.hpp"
#include "bvlab/state_vector.hpp"
#include "bvlab/truth_table.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace bvlab {

inline constexpr std::size_t kExhaustiveCertifyArity = 3;
inline constexpr std::size_t kRandomCertifyFunctions = 100;

/// The function whose truth-table entry x is bit x of `index`.
[[nodiscard]] inline BooleanFunction enumerated_function(std::size_t n, std::uint64_t index) {
    return BooleanFunction::tabulate(n, [index](std::uint64_t x) { return (index >> x) & 1U; });
}

[[nodiscard]] inline BooleanFunction random_function(std::size_t n, std::mt19937_64 &rng) {
    return BooleanFunction::tabulate(n, [&rng](std::uint64_t) { return rng() >> 63U; });
}

/// All 2^(2^n) functions for n <= 3, otherwise 100 seeded random ones.
[[nodiscard]] inline std::vector<BooleanFunction> certification_functions(std::size_t n,
                                                                          std::uint64_t seed) {
    std::vector<BooleanFunction> fs;
    if (n <= kExhaustiveCertifyArity) {
        const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
        fs.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            fs.push_back(enumerated_function(n, i));
        }
        return fs;
    }
    std::mt19937_64 rng(seed);
    fs.reserve(kRandomCertifyFunctions);
    for (std::size_t i = 0; i < kRandomCertifyFunctions; ++i) {
        fs.push_back(random_function(n, rng));
    }
    return fs;
}

struct KindCertification {
    OracleKind kind = OracleKind::StandardBV;
    std::size_t functions = 0;
    std::size_t unitary_passed = 0;
    std::size_t hermitian_passed = 0;
    std::size_t structure_passed = 0;
    double worst_unitarity = 0.0;
    double worst_hermiticity = 0.0;

    [[nodiscard]] bool passed() const noexcept {
        return unitary_passed == functions && hermitian_passed == functions &&
               structure_passed == functions;
    }
};

struct Certification {
    std::size_t n = 0;
    double tolerance = 0.0;
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::vector<KindCertification> kinds;

    [[nodiscard]] bool passed() const noexcept {
        return std::all_of(kinds.begin(), kinds.end(),
                           [](const KindCertification &k) { return k.passed(); });
    }
};

/// Called on every extracted matrix before it is checked; used by tests to
/// tamper with an oracle.
using MatrixHook = std::function<void(OracleKind, DenseMatrix &)>;

[[nodiscard]] inline Certification certify_oracles(std::size_t n, double tol,
                                                   std::uint64_t seed = 1,
                                                   const MatrixHook &hook = {}) {
    for (OracleKind kind : kAllOracleKinds) {
        if (oracle_qubits(kind, n) > kMaxDenseOracleQubits) {
            throw CapacityError("certify: the " + std::string(to_string(kind)) +
                                " oracle at n = " + std::to_string(n) +
                                " exceeds the dense cap of " +
                                std::to_string(kMaxDenseOracleQubits) + " qubits");
        }
    }
    Certification out;
    out.n = n;
    out.tolerance = tol;
    out.exhaustive = n <= kExhaustiveCertifyArity;
    out.seed = seed;
    const auto functions = certification_functions(n, seed);
    for (OracleKind kind : kAllOracleKinds) {
        KindCertification kc;
        kc.kind = kind;
        for (const auto &f : functions) {
            DenseMatrix m = oracle_dense_matrix(kind, f);
            if (hook) {
                hook(kind, m);
            }
            const double u = unitarity_deviation(m);
            const double h = hermiticity_deviation(m);
            kc.worst_unitarity = std::max(kc.worst_unitarity, u);
            kc.worst_hermiticity = std::max(kc.worst_hermiticity, h);
            kc.unitary_passed += u <= tol ? 1 : 0;
            kc.hermitian_passed += h <= tol ? 1 : 0;
            const bool structure = kind == OracleKind::Phase ? check_diagonal_sign(m, tol)
                                                             : check_permutation(m, tol);
            kc.structure_passed += structure ? 1 : 0;
            ++kc.functions;
        }
        out.kinds.push_back(kc);
    }
    return out;
}

}  // namespace bvlab
