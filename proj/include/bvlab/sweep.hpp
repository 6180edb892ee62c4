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
 * Exhaustive key sweep: every key of width n through the selected pipelines.
 * Keys are distributed over worker threads; results are stored by key index
 * so the summary does not depend on scheduling.
 */
#pragma once

#include "bvlab/pipelines.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bvlab {

inline constexpr std::size_t kDefaultSweepCap = 12;

struct SweepFailure {
    BitString key;
    Algorithm algorithm;
    std::string reason;
};

struct SweepAlgorithmTotals {
    Algorithm algorithm;
    std::size_t successes = 0;
    std::size_t oracle_calls = 0;
};

struct SweepSummary {
    std::size_t n = 0;
    std::size_t keys = 0;
    std::size_t successes = 0;
    std::size_t expected = 0;
    std::vector<SweepAlgorithmTotals> per_algorithm;
    std::vector<SweepFailure> failures;

    [[nodiscard]] bool passed() const noexcept { return successes == expected; }
};

/// Worker count: BVLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
[[nodiscard]] inline std::size_t sweep_workers() {
    if (const char *env = std::getenv("BVLAB_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

[[nodiscard]] inline SweepSummary run_sweep(std::size_t n,
                                            const std::vector<Algorithm> &algorithms,
                                            const RunOptions &options = {},
                                            std::size_t workers = 0,
                                            std::size_t cap = kDefaultSweepCap) {
    if (n == 0) {
        throw ArgumentError("sweep: n must be positive");
    }
    if (n > cap) {
        throw CapacityError("sweep: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap));
    }
    const std::size_t keys = std::size_t{1} << n;
    const std::size_t algs = algorithms.size();

    struct Outcome {
        bool success = false;
        std::size_t oracle_calls = 0;
        std::string reason;
    };
    std::vector<Outcome> outcomes(keys * algs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        try {
            for (std::size_t k = next++; k < keys; k = next++) {
                const BitString key = BitString::from_int(n, k);
                for (std::size_t a = 0; a < algs; ++a) {
                    const RunReport r =
                        run_pipeline(algorithms[a], promised_function(algorithms[a], key), options);
                    Outcome &o = outcomes[k * algs + a];
                    o.oracle_calls = r.oracle_calls;
                    o.success = r.succeeded_with(key);
                    if (!o.success) {
                        o.reason = r.failure ? *r.failure
                                   : !r.recovered ? "no outcome recovered"
                                   : *r.recovered != key
                                       ? "recovered " + r.recovered->str()
                                       : "stage check failed";
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            next = keys;
        }
    };

    const std::size_t threads = std::min(workers == 0 ? sweep_workers() : workers, keys);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) {
            pool.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }

    SweepSummary s;
    s.n = n;
    s.keys = keys;
    s.expected = keys * algs;
    for (Algorithm a : algorithms) {
        s.per_algorithm.push_back({a, 0, 0});
    }
    for (std::size_t k = 0; k < keys; ++k) {
        for (std::size_t a = 0; a < algs; ++a) {
            const Outcome &o = outcomes[k * algs + a];
            s.per_algorithm[a].oracle_calls += o.oracle_calls;
            if (o.success) {
                ++s.per_algorithm[a].successes;
                ++s.successes;
            } else {
                s.failures.push_back({BitString::from_int(n, k), algorithms[a], o.reason});
            }
        }
    }
    return s;
}

}  // namespace bvlab
