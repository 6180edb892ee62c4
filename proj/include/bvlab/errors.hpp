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

#pragma once

#include <stdexcept>
#include <string>

namespace bvlab {

/// Operand lengths, arities or register layouts disagree.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A bit or qubit index lies outside its register.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// An integer encoding does not fit the requested width.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (bitstrings, truth-table files).
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A requested allocation exceeds a configured cap.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// A measurement expected to be certain has no outcome at probability 1 - tol.
struct NotDeterministicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bvlab
