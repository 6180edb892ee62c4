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
 * End-to-end hidden-key circuits with per-stage verification.
 *
 *   bva                (H^n (x) I) U_f (H^n (x) H) |0, 1>
 *   ccnot-bva          (H^n (x) I (x) I) (P_f (x) I) T_f (H^n (x) H (x) H) |0, 0, 1>
 *   pi                 (H^n (x) I^n (x) I) S_f (H^n (x) H^n (x) H) |0, 0, 1>
 *   single-oracle-bva  (H^n (x) I (x) I) S'_f (H^n (x) H (x) H) |0, 0, 1>
 *
 * When stage recording is on, every intermediate state is compared with its
 * closed form using the exact (phase-sensitive) comparator. Forms written in
 * terms of f are always checked; forms written in terms of the hidden key
 * are checked when the key can be read off the truth table.
 */
#pragma once

#include "bvlab/bitstring.hpp"
#include "bvlab/errors.hpp"
#include "bvlab/oracles.hpp"
#include "bvlab/state_vector.hpp"
#include "bvlab/truth_table.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bvlab {

enum class Algorithm { Bva, CcnotBva, Pi, SingleOracleBva };

inline constexpr std::array kAllAlgorithms = {
    Algorithm::Bva, Algorithm::CcnotBva, Algorithm::Pi, Algorithm::SingleOracleBva};

[[nodiscard]] constexpr std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::Bva:
        return "bva";
    case Algorithm::CcnotBva:
        return "ccnot-bva";
    case Algorithm::Pi:
        return "pi";
    case Algorithm::SingleOracleBva:
        return "single-oracle-bva";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<Algorithm> algorithm_from_string(std::string_view s) {
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == s) {
            return a;
        }
    }
    return std::nullopt;
}

/// Qubits used by the circuit for an n-bit key.
[[nodiscard]] constexpr std::size_t circuit_qubits(Algorithm a, std::size_t n) noexcept {
    return a == Algorithm::Bva ? n + 1 : a == Algorithm::Pi ? 2 * n + 1 : n + 2;
}

struct StageCheck {
    std::string stage;
    std::string form;
    std::string comparator;
    double max_deviation = 0.0;
    bool passed = false;
};

struct RecordedStage {
    std::string name;
    StateVector state;
};

struct RunOptions {
    /// Compare intermediate states with their closed forms.
    bool record_stages = true;
    /// Keep a copy of every intermediate state in the report (for tracing).
    bool keep_states = false;
    double tolerance = 1e-9;
};

struct RunReport {
    Algorithm algorithm = Algorithm::Bva;
    std::size_t n = 0;
    std::optional<BitString> recovered;
    Distribution top_distribution;
    /// PI only: the middle register after the middle-register Hadamard layer.
    std::optional<Distribution> middle_distribution;
    std::vector<StageCheck> stage_checks;
    std::size_t oracle_calls = 0;
    std::optional<std::string> failure;
    std::vector<RecordedStage> stages;

    [[nodiscard]] bool checks_passed() const noexcept {
        for (const auto &c : stage_checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }

    /// Recovered exactly `key` and every stage check passed.
    [[nodiscard]] bool succeeded_with(const BitString &key) const {
        return recovered.has_value() && *recovered == key && checks_passed();
    }
};

/// Reference states built straight from their defining sums.
namespace closed_form {

/// (1/sqrt(2^n)) sum_x (-1)^f(x) |x>
[[nodiscard]] inline StateVector signed_superposition(const BooleanFunction &f) {
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(f.arity()));
    std::vector<Amplitude> amps(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        amps[x] = f.at(x) ? -scale : scale;
    }
    return StateVector(f.arity(), std::move(amps));
}

/// (1/(sqrt2 sqrt(2^n))) sum_x [|x0> + (-1)^f(x) |x1>] (x) |->
[[nodiscard]] inline StateVector toffoli_kickback(const BooleanFunction &f) {
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(f.arity() + 1));
    std::vector<Amplitude> amps(2 * f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        amps[2 * x] = scale;
        amps[2 * x + 1] = f.at(x) ? -scale : scale;
    }
    return tensor(StateVector(f.arity() + 1, std::move(amps)), minus_state());
}

/// (1/2^n) sum_y sum_x (-1)^(f(x) ^ f(y)) |x>|y> (x) |->
[[nodiscard]] inline StateVector double_sum(const BooleanFunction &f) {
    const std::size_t n = f.arity();
    const double scale = std::pow(2.0, -static_cast<double>(n));
    std::vector<Amplitude> amps(f.size() * f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        for (std::uint64_t y = 0; y < f.size(); ++y) {
            amps[(x << n) | y] = (f.at(x) ^ f.at(y)) ? -scale : scale;
        }
    }
    return tensor(StateVector(2 * n, std::move(amps)), minus_state());
}

}  // namespace closed_form

namespace detail {

class StageRecorder {
  public:
    StageRecorder(const RunOptions &options, RunReport &report)
        : options_(options), report_(report) {}

    [[nodiscard]] bool active() const noexcept { return options_.record_stages; }

    void keep(std::string_view name, const StateVector &state) {
        if (options_.keep_states) {
            report_.stages.push_back({std::string(name), state});
        }
    }

    void check(std::string_view stage, std::string_view form,
               const StateVector &actual, const StateVector &expected) {
        const double dev = max_deviation(actual, expected);
        report_.stage_checks.push_back({std::string(stage), std::string(form),
                                        "exact", dev, dev <= options_.tolerance});
    }

  private:
    const RunOptions &options_;
    RunReport &report_;
};

inline void finish_measurement(RunReport &report, const StateVector &final_state,
                               double tol) {
    const auto top = qubit_range(0, report.n);
    report.top_distribution = marginal(final_state, top);
    try {
        report.recovered = certain_outcome(report.top_distribution, report.n, tol);
    } catch (const NotDeterministicError &e) {
        report.failure = std::string("top register: ") + e.what();
    }
}

inline StateVector initial_state(std::size_t ancilla_bits_before_last,
                                 std::size_t n) {
    // |0...0 (ancillas = 0) 1>
    const std::size_t m = n + ancilla_bits_before_last + 1;
    return basis_state(m, BitString::from_int(m, 1));
}

}  // namespace detail

/// Bernstein-Vazirani baseline with the standard oracle U_f.
[[nodiscard]] inline RunReport run_bva(const BooleanFunction &f,
                                       const RunOptions &options = {}) {
    const std::size_t n = f.arity();
    RunReport report;
    report.algorithm = Algorithm::Bva;
    report.n = n;
    detail::StageRecorder rec(options, report);
    const std::optional<BitString> key =
        rec.active() ? recover_key_if_bv(f) : std::nullopt;

    StateVector state = detail::initial_state(0, n);
    rec.keep("psi0", state);
    if (rec.active()) {
        rec.check("psi0", "basis", state, basis_state(n + 1, BitString::from_int(n + 1, 1)));
    }

    state = apply_hadamard_layer(std::move(state));
    rec.keep("psi1", state);
    if (rec.active()) {
        rec.check("psi1", "uniform", state, tensor(uniform_state(n), minus_state()));
    }

    state = apply_standard_bv(std::move(state), f);
    ++report.oracle_calls;
    rec.keep("psi2", state);
    if (rec.active()) {
        rec.check("psi2", "signed-sum", state,
                  tensor(closed_form::signed_superposition(f), minus_state()));
        if (key) {
            rec.check("psi2", "key", state, tensor(hadamard_of_key(n, *key), minus_state()));
        }
    }

    state = apply_hadamard_layer(std::move(state), qubit_range(0, n));
    rec.keep("psi3", state);
    if (rec.active() && key) {
        rec.check("psi3", "key", state, tensor(basis_state(*key), minus_state()));
    }

    detail::finish_measurement(report, state, options.tolerance);
    return report;
}

/// The T_f + P_f circuit.
[[nodiscard]] inline RunReport run_ccnot_bva(const BooleanFunction &f,
                                             const RunOptions &options = {}) {
    const std::size_t n = f.arity();
    RunReport report;
    report.algorithm = Algorithm::CcnotBva;
    report.n = n;
    detail::StageRecorder rec(options, report);
    const std::optional<BitString> key =
        rec.active() ? recover_key_if_bv(f) : std::nullopt;

    StateVector state = detail::initial_state(1, n);
    rec.keep("psi0", state);
    if (rec.active()) {
        rec.check("psi0", "basis", state, basis_state(n + 2, BitString::from_int(n + 2, 1)));
    }

    state = apply_hadamard_layer(std::move(state));
    rec.keep("psi1", state);
    if (rec.active()) {
        rec.check("psi1", "uniform", state,
                  tensor(uniform_state(n), plus_state(), minus_state()));
    }

    state = apply_toffoli_oracle(std::move(state), f);
    ++report.oracle_calls;
    rec.keep("psi2", state);
    if (rec.active()) {
        rec.check("psi2", "kickback-sum", state, closed_form::toffoli_kickback(f));
    }

    state = apply_phase_oracle(std::move(state), f, 1);
    ++report.oracle_calls;
    rec.keep("psi3", state);
    if (rec.active()) {
        rec.check("psi3", "signed-sum", state,
                  tensor(closed_form::signed_superposition(f), plus_state(), minus_state()));
        if (key) {
            rec.check("psi3", "key", state,
                      tensor(hadamard_of_key(n, *key), plus_state(), minus_state()));
        }
    }

    state = apply_hadamard_layer(std::move(state), qubit_range(0, n));
    rec.keep("psi4", state);
    if (rec.active() && key) {
        rec.check("psi4", "key", state, tensor(basis_state(*key), plus_state(), minus_state()));
    }

    detail::finish_measurement(report, state, options.tolerance);
    return report;
}

/**
 * The S_f circuit for f(x) = (x + key) . key.
 *
 * The top register is measured on phi3 as the circuit prescribes. The middle
 * register of phi3 still holds H^n|key> and is uniformly distributed, so the
 * middle-register readout applies H^n to the middle register of phi2 instead
 * (stage "phi3-middle"); that layer acts on wires disjoint from the top
 * readout and is not an oracle call.
 */
[[nodiscard]] inline RunReport run_pi(const BooleanFunction &f,
                                      const RunOptions &options = {}) {
    const std::size_t n = f.arity();
    RunReport report;
    report.algorithm = Algorithm::Pi;
    report.n = n;
    detail::StageRecorder rec(options, report);
    const std::optional<BitString> key =
        rec.active() ? recover_key_if_pi(f) : std::nullopt;

    StateVector state = detail::initial_state(n, n);
    rec.keep("phi0", state);
    if (rec.active()) {
        rec.check("phi0", "basis", state,
                  basis_state(2 * n + 1, BitString::from_int(2 * n + 1, 1)));
    }

    state = apply_hadamard_layer(std::move(state));
    rec.keep("phi1", state);
    if (rec.active()) {
        rec.check("phi1", "uniform", state,
                  tensor(uniform_state(n), uniform_state(n), minus_state()));
    }

    state = apply_two_register_oracle(std::move(state), f);
    ++report.oracle_calls;
    rec.keep("phi2", state);
    if (rec.active()) {
        rec.check("phi2", "double-sum", state, closed_form::double_sum(f));
        if (key) {
            const StateVector hk = hadamard_of_key(n, *key);
            rec.check("phi2", "factorized", state, tensor(hk, hk, minus_state()));
        }
    }

    StateVector middle_variant = apply_hadamard_layer(state, qubit_range(n, n));
    state = apply_hadamard_layer(std::move(state), qubit_range(0, n));
    rec.keep("phi3", state);
    rec.keep("phi3-middle", middle_variant);
    if (rec.active() && key) {
        const StateVector k = basis_state(*key);
        const StateVector hk = hadamard_of_key(n, *key);
        rec.check("phi3", "key", state, tensor(k, hk, minus_state()));
        rec.check("phi3-middle", "key", middle_variant, tensor(hk, k, minus_state()));
    }

    detail::finish_measurement(report, state, options.tolerance);
    report.middle_distribution = marginal(middle_variant, qubit_range(n, n));
    if (!report.failure) {
        try {
            (void)certain_outcome(*report.middle_distribution, n, options.tolerance);
        } catch (const NotDeterministicError &e) {
            report.failure = std::string("middle register: ") + e.what();
        }
    }
    return report;
}

/// The single-oracle S'_f circuit.
[[nodiscard]] inline RunReport run_single_oracle_bva(const BooleanFunction &f,
                                                     const RunOptions &options = {}) {
    const std::size_t n = f.arity();
    RunReport report;
    report.algorithm = Algorithm::SingleOracleBva;
    report.n = n;
    detail::StageRecorder rec(options, report);
    const std::optional<BitString> key =
        rec.active() ? recover_key_if_bv(f) : std::nullopt;

    StateVector state = detail::initial_state(1, n);
    rec.keep("psi0", state);
    if (rec.active()) {
        rec.check("psi0", "basis", state, basis_state(n + 2, BitString::from_int(n + 2, 1)));
    }

    state = apply_hadamard_layer(std::move(state));
    rec.keep("psi1", state);
    if (rec.active()) {
        rec.check("psi1", "uniform", state,
                  tensor(uniform_state(n), plus_state(), minus_state()));
    }

    // Kickback (-1)^(f(x) ^ b) turns the |+> wire into |->.
    state = apply_single_xor_oracle(std::move(state), f);
    ++report.oracle_calls;
    rec.keep("psi2", state);
    if (rec.active()) {
        rec.check("psi2", "signed-sum", state,
                  tensor(closed_form::signed_superposition(f), minus_state(), minus_state()));
        if (key) {
            rec.check("psi2", "key", state,
                      tensor(hadamard_of_key(n, *key), minus_state(), minus_state()));
        }
    }

    state = apply_hadamard_layer(std::move(state), qubit_range(0, n));
    rec.keep("psi3", state);
    if (rec.active() && key) {
        rec.check("psi3", "key", state, tensor(basis_state(*key), minus_state(), minus_state()));
    }

    detail::finish_measurement(report, state, options.tolerance);
    return report;
}

[[nodiscard]] inline RunReport run_pipeline(Algorithm a, const BooleanFunction &f,
                                            const RunOptions &options = {}) {
    switch (a) {
    case Algorithm::Bva:
        return run_bva(f, options);
    case Algorithm::CcnotBva:
        return run_ccnot_bva(f, options);
    case Algorithm::Pi:
        return run_pi(f, options);
    case Algorithm::SingleOracleBva:
        return run_single_oracle_bva(f, options);
    }
    throw ArgumentError("unknown algorithm");
}

/// The function each pipeline is meant to be fed for a given key.
[[nodiscard]] inline BooleanFunction promised_function(Algorithm a, const BitString &key,
                                                       std::size_t max_arity = kDefaultMaxArity) {
    return a == Algorithm::Pi ? pi_function(key, max_arity) : bv_function(key, max_arity);
}

/// All four pipelines on the key, BV-form for three and PI-form for run_pi.
[[nodiscard]] inline std::vector<RunReport> run_all(const BitString &gamma,
                                                    const RunOptions &options = {}) {
    const BooleanFunction bv = bv_function(gamma);
    const BooleanFunction pi = pi_function(gamma);
    std::vector<RunReport> reports;
    reports.reserve(kAllAlgorithms.size());
    for (Algorithm a : kAllAlgorithms) {
        reports.push_back(run_pipeline(a, a == Algorithm::Pi ? pi : bv, options));
    }
    return reports;
}

struct BvaOnPiAnalysis {
    BitString gamma;
    Distribution top_distribution;
    /// (-1)^(gamma . gamma), the factor relating U_f(H^n (x) H)|0,1> to H^n|gamma> (x) |->.
    int phase_factor = 1;
    bool point_mass = false;
    std::optional<BitString> point;
    /// Deviation of the pre-measurement-layer state from H^n|gamma> (x) |->.
    double exact_deviation = 0.0;
    double phase_insensitive_deviation = 0.0;
};

/**
 * Runs the baseline circuit on f(x) = (x + gamma) . gamma and records what
 * the simulation shows. Nothing is asserted here.
 */
[[nodiscard]] inline BvaOnPiAnalysis analyze_bva_on_pi(const BitString &gamma,
                                                       double tol = 1e-9) {
    const std::size_t n = gamma.length();
    const BooleanFunction f = pi_function(gamma);
    BvaOnPiAnalysis out{gamma, {}, dot(gamma, gamma) ? -1 : 1, false, std::nullopt, 0.0, 0.0};

    StateVector state = apply_hadamard_layer(detail::initial_state(0, n));
    state = apply_standard_bv(std::move(state), f);
    const StateVector reference = tensor(hadamard_of_key(n, gamma), minus_state());
    out.exact_deviation = max_deviation(state, reference);
    out.phase_insensitive_deviation = max_deviation_up_to_global_phase(state, reference);

    state = apply_hadamard_layer(std::move(state), qubit_range(0, n));
    out.top_distribution = marginal(state, qubit_range(0, n));
    try {
        out.point = certain_outcome(out.top_distribution, n, tol);
        out.point_mass = true;
    } catch (const NotDeterministicError &) {
        out.point_mass = false;
    }
    return out;
}

}  // namespace bvlab
