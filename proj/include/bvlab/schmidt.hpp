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

#include "bvlab/errors.hpp"
#include "bvlab/state_vector.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bvlab {

/// Singular values of the amplitude array reshaped as a
/// 2^top_qubits x 2^(m - top_qubits) matrix, in decreasing order.
[[nodiscard]] inline std::vector<double> schmidt_coefficients(const StateVector &state,
                                                              std::size_t top_qubits) {
    if (top_qubits == 0 || top_qubits >= state.qubits()) {
        throw ArgumentError("schmidt split must leave qubits on both sides");
    }
    const auto rows = static_cast<Eigen::Index>(std::size_t{1} << top_qubits);
    const auto cols = static_cast<Eigen::Index>(state.size()) / rows;
    // Row-major reshape: row = top index, column = bottom index.
    Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        block(state.amplitudes().data(), rows, cols);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    const auto &sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

/// Number of Schmidt coefficients above tol.
[[nodiscard]] inline std::size_t schmidt_rank(const StateVector &state,
                                              std::size_t top_qubits,
                                              double tol = 1e-9) {
    std::size_t rank = 0;
    for (double s : schmidt_coefficients(state, top_qubits)) {
        if (s > tol) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace bvlab
