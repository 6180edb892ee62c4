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
 * Boolean functions {0,1}^n -> {0,1} held as explicit truth tables, the
 * function families with hidden keys, and classical query-counting solvers.
 */
#pragma once

#include "bvlab/bitstring.hpp"
#include "bvlab/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bvlab {

inline constexpr std::size_t kDefaultMaxArity = 24;

/**
 * Truth table of f with entry v equal to f(from_int(n, v)).
 *
 * Query counting is opt-in per instance. Only evaluate() is counted; the raw
 * lookup used by oracle kernels and verifiers is not, so pipelines can share
 * a function without perturbing a classical solver's count.
 */
class BooleanFunction {
  public:
    BooleanFunction(std::size_t arity, std::vector<Bit> table,
                    std::size_t max_arity = kDefaultMaxArity)
        : arity_(arity), table_(std::move(table)) {
        check_arity(arity, max_arity);
        if (table_.size() != (std::size_t{1} << arity)) {
            throw DimensionError("truth table of arity " +
                                 std::to_string(arity) + " needs " +
                                 std::to_string(std::size_t{1} << arity) +
                                 " entries, got " +
                                 std::to_string(table_.size()));
        }
        for (Bit b : table_) {
            if (b > 1) {
                throw ArgumentError("truth table entries must be 0 or 1");
            }
        }
    }

    /// Tabulates rule(v) for every index v < 2^arity.
    template <class Rule>
    static BooleanFunction tabulate(std::size_t arity, Rule &&rule,
                                    std::size_t max_arity = kDefaultMaxArity) {
        check_arity(arity, max_arity);
        std::vector<Bit> table(std::size_t{1} << arity);
        for (std::size_t v = 0; v < table.size(); ++v) {
            table[v] = static_cast<Bit>(rule(static_cast<std::uint64_t>(v)) & 1U);
        }
        return BooleanFunction(arity, std::move(table), max_arity);
    }

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
    [[nodiscard]] std::span<const Bit> table() const noexcept { return table_; }

    /// Uncounted lookup by amplitude index.
    [[nodiscard]] Bit at(std::uint64_t index) const noexcept {
        return table_[static_cast<std::size_t>(index)];
    }

    Bit evaluate(const BitString &x) {
        if (x.length() != arity_) {
            throw DimensionError("evaluate: input of length " +
                                 std::to_string(x.length()) +
                                 " for function of arity " +
                                 std::to_string(arity_));
        }
        if (counting_) {
            ++queries_;
        }
        return at(x.to_int());
    }

    void enable_query_counting(bool on = true) noexcept { counting_ = on; }
    [[nodiscard]] bool counting_enabled() const noexcept { return counting_; }
    [[nodiscard]] std::uint64_t query_count() const noexcept { return queries_; }
    void reset_query_count() noexcept { queries_ = 0; }

    /// Tables equal; counters are ignored.
    [[nodiscard]] bool same_table(const BooleanFunction &other) const noexcept {
        return arity_ == other.arity_ && table_ == other.table_;
    }

    [[nodiscard]] std::string table_string() const {
        std::string s(table_.size(), '0');
        for (std::size_t v = 0; v < table_.size(); ++v) {
            s[v] = static_cast<char>('0' + table_[v]);
        }
        return s;
    }

  private:
    static void check_arity(std::size_t arity, std::size_t max_arity) {
        if (arity == 0) {
            throw ArgumentError("arity must be positive");
        }
        if (arity > max_arity || arity >= 8 * sizeof(std::size_t) - 1) {
            throw CapacityError("arity " + std::to_string(arity) +
                                " exceeds the truth-table limit of " +
                                std::to_string(max_arity));
        }
    }

    std::size_t arity_;
    std::vector<Bit> table_;
    bool counting_ = false;
    std::uint64_t queries_ = 0;
};

[[nodiscard]] inline BooleanFunction constant_function(std::size_t n, Bit value) {
    return BooleanFunction::tabulate(n, [value](std::uint64_t) { return value; });
}

/// f(x) = x . gamma
[[nodiscard]] inline BooleanFunction
bv_function(const BitString &gamma, std::size_t max_arity = kDefaultMaxArity) {
    const std::uint64_t g = gamma.to_int();
    return BooleanFunction::tabulate(
        gamma.length(), [g](std::uint64_t x) { return parity_dot(x, g); },
        max_arity);
}

/// f(x) = (x + gamma) . gamma
[[nodiscard]] inline BooleanFunction
pi_function(const BitString &gamma, std::size_t max_arity = kDefaultMaxArity) {
    const std::uint64_t g = gamma.to_int();
    return BooleanFunction::tabulate(
        gamma.length(), [g](std::uint64_t x) { return parity_dot(x ^ g, g); },
        max_arity);
}

/// f(x) = (x + gamma) . lambda
[[nodiscard]] inline BooleanFunction
two_key_function(const BitString &gamma, const BitString &lambda,
                 std::size_t max_arity = kDefaultMaxArity) {
    detail::require_same_length(gamma, lambda, "two_key_function");
    const std::uint64_t g = gamma.to_int();
    const std::uint64_t l = lambda.to_int();
    return BooleanFunction::tabulate(
        gamma.length(), [g, l](std::uint64_t x) { return parity_dot(x ^ g, l); },
        max_arity);
}

/// gamma_j = f(e_j); exactly n counted queries. Assumes the BV promise.
[[nodiscard]] inline BitString classical_bv_solve(BooleanFunction &f) {
    const std::size_t n = f.arity();
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < n; ++j) {
        key = (key << 1U) | f.evaluate(basis_e(n, j));
    }
    return BitString::from_int(n, key);
}

/// gamma_j = f(k_j); exactly n counted queries. Assumes the PI promise.
[[nodiscard]] inline BitString classical_pi_solve(BooleanFunction &f) {
    const std::size_t n = f.arity();
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < n; ++j) {
        key = (key << 1U) | f.evaluate(basis_k(n, j));
    }
    return BitString::from_int(n, key);
}

/// Reads a candidate key from the e_j entries and verifies the whole table.
/// Uses uncounted lookups.
[[nodiscard]] inline std::optional<BitString>
recover_key_if_bv(const BooleanFunction &f) {
    const std::size_t n = f.arity();
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < n; ++j) {
        key = (key << 1U) | f.at(basis_e(n, j).to_int());
    }
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.at(x) != parity_dot(x, key)) {
            return std::nullopt;
        }
    }
    return BitString::from_int(n, key);
}

/// PI analogue of recover_key_if_bv, reading the candidate from the k_j entries.
[[nodiscard]] inline std::optional<BitString>
recover_key_if_pi(const BooleanFunction &f) {
    const std::size_t n = f.arity();
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < n; ++j) {
        key = (key << 1U) | f.at(basis_k(n, j).to_int());
    }
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f.at(x) != parity_dot(x ^ key, key)) {
            return std::nullopt;
        }
    }
    return BitString::from_int(n, key);
}

// Truth-table file format:
//   arity <n>
//   <2^n characters of 0/1 in index order>

inline void write_truth_table(std::ostream &os, const BooleanFunction &f) {
    os << "arity " << f.arity() << '\n' << f.table_string() << '\n';
}

[[nodiscard]] inline BooleanFunction
read_truth_table(std::istream &is, std::size_t max_arity = kDefaultMaxArity) {
    std::string header;
    if (!std::getline(is, header)) {
        throw ParseError("truth table: missing arity line");
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    std::istringstream hs(header);
    std::string keyword;
    long long arity = 0;
    std::string trailing;
    if (!(hs >> keyword >> arity) || keyword != "arity" || (hs >> trailing)) {
        throw ParseError("truth table: expected 'arity <n>', got '" + header +
                         "'");
    }
    if (arity <= 0) {
        throw ParseError("truth table: arity must be positive");
    }
    if (static_cast<std::size_t>(arity) > max_arity) {
        throw CapacityError("truth table: arity " + std::to_string(arity) +
                            " exceeds the limit of " +
                            std::to_string(max_arity));
    }
    const auto n = static_cast<std::size_t>(arity);

    std::string bits;
    if (!std::getline(is, bits)) {
        throw ParseError("truth table: missing table line");
    }
    if (!bits.empty() && bits.back() == '\r') {
        bits.pop_back();
    }
    const std::size_t expected = std::size_t{1} << n;
    if (bits.size() != expected) {
        throw ParseError("truth table: expected " + std::to_string(expected) +
                         " table bits, got " + std::to_string(bits.size()));
    }
    std::vector<Bit> table(expected);
    for (std::size_t v = 0; v < expected; ++v) {
        if (bits[v] != '0' && bits[v] != '1') {
            throw ParseError("truth table: invalid character '" +
                             std::string(1, bits[v]) + "'");
        }
        table[v] = static_cast<Bit>(bits[v] - '0');
    }
    std::string rest;
    while (std::getline(is, rest)) {
        if (rest.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError("truth table: unexpected content after table line");
        }
    }
    return BooleanFunction(n, std::move(table), max_arity);
}

[[nodiscard]] inline BooleanFunction
parse_truth_table(const std::string &text,
                  std::size_t max_arity = kDefaultMaxArity) {
    std::istringstream is(text);
    return read_truth_table(is, max_arity);
}

}  // namespace bvlab
