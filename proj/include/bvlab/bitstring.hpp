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
 * Bitstrings over GF(2): XOR addition, the parity inner product and the
 * unit / co-unit bases.
 *
 * A BitString of length n stores its bits packed into one 64-bit word using
 * the same big-endian layout as amplitude indices: bit 0 (the leftmost
 * character when printed) is the most significant bit of to_int().
 */
#pragma once

#include "bvlab/errors.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace bvlab {

using Bit = std::uint8_t;

class BitString {
  public:
    static constexpr std::size_t kMaxLength = 64;

    /// All-zero string of the given length.
    explicit BitString(std::size_t length) : length_(length), word_(0) {
        check_length(length);
    }

    static BitString from_int(std::size_t length, std::uint64_t value) {
        check_length(length);
        if (length < kMaxLength && (value >> length) != 0) {
            throw RangeError("value " + std::to_string(value) +
                             " does not fit in " + std::to_string(length) +
                             " bits");
        }
        BitString out(length);
        out.word_ = value;
        return out;
    }

    static BitString parse(std::string_view text) {
        if (text.empty()) {
            throw ParseError("empty bitstring");
        }
        if (text.size() > kMaxLength) {
            throw ParseError("bitstring longer than " +
                             std::to_string(kMaxLength) + " bits");
        }
        std::uint64_t value = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw ParseError("invalid character '" + std::string(1, c) +
                                 "' in bitstring");
            }
            value = (value << 1U) | static_cast<std::uint64_t>(c - '0');
        }
        return from_int(text.size(), value);
    }

    static BitString zeros(std::size_t length) { return BitString(length); }

    static BitString ones(std::size_t length) {
        return from_int(length, low_mask(length));
    }

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::uint64_t to_int() const noexcept { return word_; }

    [[nodiscard]] Bit operator[](std::size_t j) const {
        if (j >= length_) {
            throw IndexError("bit index " + std::to_string(j) +
                             " out of range for length " +
                             std::to_string(length_));
        }
        return static_cast<Bit>((word_ >> (length_ - 1 - j)) & 1U);
    }

    [[nodiscard]] std::size_t popcount() const noexcept {
        return static_cast<std::size_t>(std::popcount(word_));
    }

    [[nodiscard]] std::string str() const {
        std::string s(length_, '0');
        for (std::size_t j = 0; j < length_; ++j) {
            if ((word_ >> (length_ - 1 - j)) & 1U) {
                s[j] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const BitString &, const BitString &) = default;
    friend auto operator<=>(const BitString &, const BitString &) = default;

    friend std::ostream &operator<<(std::ostream &os, const BitString &x) {
        return os << x.str();
    }

    static constexpr std::uint64_t low_mask(std::size_t length) noexcept {
        return length >= kMaxLength ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << length) - 1;
    }

    static void check_length(std::size_t length) {
        if (length == 0 || length > kMaxLength) {
            throw RangeError("bitstring length must be in 1.." +
                             std::to_string(kMaxLength) + ", got " +
                             std::to_string(length));
        }
    }

  private:
    std::size_t length_;
    std::uint64_t word_;
};

namespace detail {
inline void require_same_length(const BitString &x, const BitString &y,
                                const char *op) {
    if (x.length() != y.length()) {
        throw DimensionError(std::string(op) + ": length mismatch (" +
                             std::to_string(x.length()) + " vs " +
                             std::to_string(y.length()) + ")");
    }
}

inline void require_index(std::size_t n, std::size_t j) {
    if (j >= n) {
        throw IndexError("basis index " + std::to_string(j) +
                         " out of range for n = " + std::to_string(n));
    }
}
}  // namespace detail

/// Parity of x & y over raw amplitude-index words.
[[nodiscard]] constexpr Bit parity_dot(std::uint64_t x,
                                       std::uint64_t y) noexcept {
    return static_cast<Bit>(std::popcount(x & y) & 1);
}

[[nodiscard]] inline BitString xor_add(const BitString &x, const BitString &y) {
    detail::require_same_length(x, y, "xor_add");
    return BitString::from_int(x.length(), x.to_int() ^ y.to_int());
}

/// (x0 & y0) ^ (x1 & y1) ^ ... ^ (x_{n-1} & y_{n-1})
[[nodiscard]] inline Bit dot(const BitString &x, const BitString &y) {
    detail::require_same_length(x, y, "dot");
    return parity_dot(x.to_int(), y.to_int());
}

[[nodiscard]] inline BitString complement(const BitString &x) {
    return BitString::from_int(x.length(),
                               ~x.to_int() & BitString::low_mask(x.length()));
}

/// Unit vector with its single 1 at string position j, so that
/// dot(basis_e(n, j), g) == g[j].
[[nodiscard]] inline BitString basis_e(std::size_t n, std::size_t j) {
    BitString::check_length(n);
    detail::require_index(n, j);
    return BitString::from_int(n, std::uint64_t{1} << (n - 1 - j));
}

/// All ones except a 0 at position j.
[[nodiscard]] inline BitString basis_k(std::size_t n, std::size_t j) {
    return complement(basis_e(n, j));
}

}  // namespace bvlab
