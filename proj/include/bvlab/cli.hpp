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
 * Command layer behind the `bvlab` executable.
 *
 * Exit codes: 0 success, 1 algorithmic failure (a claim was violated),
 * 2 usage or capacity error. Documents contain no timing or host data, so
 * identical invocations produce identical bytes.
 */
#pragma once

#include "bvlab/certify.hpp"
#include "bvlab/pipelines.hpp"
#include "bvlab/report.hpp"
#include "bvlab/sweep.hpp"
#include "bvlab/truth_table.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bvlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::size_t kMaxRunQubits = 26;
inline constexpr std::size_t kMaxTraceArity = 8;
inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDefaultCertifyTolerance = 1e-12;
inline constexpr std::uint64_t kDefaultCertifySeed = 1;

enum class Command { Run, Certify, Sweep, Trace };
enum class Format { Json, Text };

struct CliConfig {
    Command command = Command::Run;
    std::optional<std::size_t> n;
    std::optional<std::string> gamma;
    std::string algorithm = "all";
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<std::string> output_path;
    std::optional<std::string> table_path;
    Format format = Format::Json;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string document;
    std::string diagnostics;
};

/// Invalid flag combination; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct FunctionSource {
    std::size_t n = 0;
    std::optional<BitString> key;
    std::optional<BooleanFunction> table;
};

inline FunctionSource resolve_source(const CliConfig &config) {
    if (config.gamma.has_value() == config.table_path.has_value()) {
        throw UsageError("exactly one of --gamma or --table is required");
    }
    FunctionSource src;
    if (config.gamma) {
        try {
            src.key = BitString::parse(*config.gamma);
        } catch (const std::exception &e) {
            throw UsageError(std::string("--gamma: ") + e.what());
        }
        src.n = src.key->length();
    } else {
        std::ifstream in(*config.table_path);
        if (!in) {
            throw UsageError("cannot open truth table '" + *config.table_path + "'");
        }
        try {
            src.table = read_truth_table(in);
        } catch (const CapacityError &) {
            throw;
        } catch (const std::exception &e) {
            throw UsageError(std::string("--table: ") + e.what());
        }
        src.n = src.table->arity();
    }
    if (config.n && *config.n != src.n) {
        throw UsageError("--n " + std::to_string(*config.n) + " does not match the key width " +
                         std::to_string(src.n));
    }
    return src;
}

inline std::vector<Algorithm> resolve_algorithms(const std::string &name) {
    if (name == "all") {
        return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
    }
    if (auto a = algorithm_from_string(name)) {
        return {*a};
    }
    throw UsageError("unknown algorithm '" + name +
                     "' (expected bva, ccnot-bva, pi, single-oracle-bva or all)");
}

inline std::size_t require_n(const CliConfig &config) {
    if (!config.n || *config.n == 0) {
        throw UsageError("--n must be a positive integer");
    }
    return *config.n;
}

/// Verdict for one pipeline run. With a key: recovered == key. From a raw
/// table: the readout was certain and the recovered key reproduces the table
/// under the pipeline's promise.
inline bool judge(const FunctionSource &src, Algorithm a, RunReport &report) {
    if (!report.recovered || !report.checks_passed()) {
        return false;
    }
    if (src.key) {
        return *report.recovered == *src.key;
    }
    if (!promised_function(a, *report.recovered).same_table(*src.table)) {
        report.failure = "recovered key " + report.recovered->str() +
                         " does not reproduce the truth table (promise violated)";
        return false;
    }
    return true;
}

inline Json source_to_json(const CliConfig &config, const FunctionSource &src) {
    Json j;
    if (src.key) {
        j["gamma"] = src.key->str();
    } else {
        j["table"] = *config.table_path;
        j["arity"] = src.n;
    }
    return j;
}

inline std::string render(const Json &doc) { return doc.dump(2) + "\n"; }

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace detail

inline CommandResult cmd_run(const CliConfig &config) {
    const auto src = detail::resolve_source(config);
    const auto algorithms = detail::resolve_algorithms(config.algorithm);
    const double tol = config.tolerance.value_or(kDefaultTolerance);
    for (Algorithm a : algorithms) {
        if (circuit_qubits(a, src.n) > kMaxRunQubits) {
            throw CapacityError(std::string(to_string(a)) + " at n = " + std::to_string(src.n) +
                                " needs " + std::to_string(circuit_qubits(a, src.n)) +
                                " qubits; the run cap is " + std::to_string(kMaxRunQubits));
        }
    }
    RunOptions options;
    options.tolerance = tol;

    bool all_ok = true;
    Json reports = Json::array();
    std::ostringstream text;
    for (Algorithm a : algorithms) {
        RunReport r = run_pipeline(a, src.key ? promised_function(a, *src.key) : *src.table,
                                   options);
        const bool ok = detail::judge(src, a, r);
        all_ok = all_ok && ok;
        Json j = report_to_json(r);
        if (config.seed) {
            j["sampled"] = sample_distribution(r.top_distribution, r.n, *config.seed).str();
        }
        j["passed"] = ok;
        reports.push_back(std::move(j));
        text << report_to_text(r);
        if (config.seed) {
            text << "sampled       "
                 << sample_distribution(r.top_distribution, r.n, *config.seed) << "\n";
        }
        text << "verdict       " << (ok ? "PASS" : "FAIL") << "\n\n";
    }

    CommandResult out;
    out.exit_code = all_ok ? kExitOk : kExitFailure;
    if (config.format == Format::Text) {
        out.document = text.str();
    } else {
        Json doc;
        doc["command"] = "run";
        doc["source"] = detail::source_to_json(config, src);
        doc["tolerance"] = tol;
        doc["seed"] = config.seed ? Json(*config.seed) : Json(nullptr);
        doc["reports"] = std::move(reports);
        doc["passed"] = all_ok;
        out.document = detail::render(doc);
    }
    return out;
}

inline CommandResult cmd_certify(const CliConfig &config, const MatrixHook &hook = {}) {
    const std::size_t n = detail::require_n(config);
    const double tol = config.tolerance.value_or(kDefaultCertifyTolerance);
    const std::uint64_t seed = config.seed.value_or(kDefaultCertifySeed);
    const Certification c = certify_oracles(n, tol, seed, hook);

    CommandResult out;
    out.exit_code = c.passed() ? kExitOk : kExitFailure;
    if (config.format == Format::Text) {
        std::ostringstream os;
        os << "n = " << n << ", " << (c.exhaustive ? "exhaustive" : "random") << ", "
           << (c.kinds.empty() ? 0 : c.kinds.front().functions)
           << " functions per kind, tolerance " << detail::sci(tol) << "\n";
        for (const auto &k : c.kinds) {
            os << "  " << (k.passed() ? "ok  " : "FAIL") << "  " << to_string(k.kind)
               << "  unitary " << k.unitary_passed << "/" << k.functions << "  hermitian "
               << k.hermitian_passed << "/" << k.functions << "  "
               << (k.kind == OracleKind::Phase ? "diagonal-sign " : "permutation ")
               << k.structure_passed << "/" << k.functions << "\n";
        }
        out.document = os.str();
        return out;
    }
    Json doc;
    doc["command"] = "certify";
    doc["n"] = n;
    doc["mode"] = c.exhaustive ? "exhaustive" : "random";
    doc["seed"] = c.exhaustive ? Json(nullptr) : Json(seed);
    doc["tolerance"] = tol;
    Json kinds = Json::array();
    for (const auto &k : c.kinds) {
        Json j;
        j["kind"] = std::string(to_string(k.kind));
        j["qubits"] = oracle_qubits(k.kind, n);
        j["functions"] = k.functions;
        j["unitary_passed"] = k.unitary_passed;
        j["hermitian_passed"] = k.hermitian_passed;
        j["structure"] = k.kind == OracleKind::Phase ? "diagonal-sign" : "permutation";
        j["structure_passed"] = k.structure_passed;
        j["worst_unitarity_deviation"] = k.worst_unitarity;
        j["worst_hermiticity_deviation"] = k.worst_hermiticity;
        j["passed"] = k.passed();
        kinds.push_back(std::move(j));
    }
    doc["kinds"] = std::move(kinds);
    doc["passed"] = c.passed();
    out.document = detail::render(doc);
    return out;
}

inline CommandResult cmd_sweep(const CliConfig &config) {
    const std::size_t n = detail::require_n(config);
    const auto algorithms = detail::resolve_algorithms(config.algorithm);
    RunOptions options;
    options.tolerance = config.tolerance.value_or(kDefaultTolerance);
    const SweepSummary s = run_sweep(n, algorithms, options);

    CommandResult out;
    out.exit_code = s.passed() ? kExitOk : kExitFailure;
    if (config.format == Format::Text) {
        std::ostringstream os;
        os << "n = " << n << ": " << s.successes << "/" << s.expected << " successes over "
           << s.keys << " keys\n";
        for (const auto &t : s.per_algorithm) {
            os << "  " << to_string(t.algorithm) << "  successes " << t.successes
               << "  oracle calls " << t.oracle_calls << "\n";
        }
        for (const auto &f : s.failures) {
            os << "  FAIL " << to_string(f.algorithm) << " key " << f.key << ": " << f.reason
               << "\n";
        }
        out.document = os.str();
        return out;
    }
    Json doc;
    doc["command"] = "sweep";
    doc["n"] = n;
    doc["keys"] = s.keys;
    doc["expected"] = s.expected;
    doc["successes"] = s.successes;
    Json per = Json::array();
    for (const auto &t : s.per_algorithm) {
        Json j;
        j["algorithm"] = std::string(to_string(t.algorithm));
        j["successes"] = t.successes;
        j["oracle_calls"] = t.oracle_calls;
        per.push_back(std::move(j));
    }
    doc["per_algorithm"] = std::move(per);
    Json failures = Json::array();
    for (const auto &f : s.failures) {
        Json j;
        j["algorithm"] = std::string(to_string(f.algorithm));
        j["key"] = f.key.str();
        j["reason"] = f.reason;
        failures.push_back(std::move(j));
    }
    doc["failures"] = std::move(failures);
    doc["passed"] = s.passed();
    out.document = detail::render(doc);
    return out;
}

inline CommandResult cmd_trace(const CliConfig &config) {
    const auto src = detail::resolve_source(config);
    if (src.n > kMaxTraceArity) {
        throw CapacityError("trace stores every stage; n = " + std::to_string(src.n) +
                            " exceeds the cap of " + std::to_string(kMaxTraceArity));
    }
    const auto algorithms = detail::resolve_algorithms(config.algorithm);
    RunOptions options;
    options.keep_states = true;
    options.tolerance = config.tolerance.value_or(kDefaultTolerance);

    bool all_ok = true;
    Json traces = Json::array();
    std::ostringstream text;
    for (Algorithm a : algorithms) {
        RunReport r = run_pipeline(a, src.key ? promised_function(a, *src.key) : *src.table,
                                   options);
        const bool ok = detail::judge(src, a, r);
        all_ok = all_ok && ok;

        Json stages = Json::array();
        text << "== " << to_string(a) << "\n";
        for (const auto &stage : r.stages) {
            const std::string dump = dump_state(stage.state);
            Json lines = Json::array();
            std::istringstream ls(dump);
            for (std::string line; std::getline(ls, line);) {
                lines.push_back(line);
            }
            Json checks = Json::array();
            text << "-- " << stage.name << "\n" << dump;
            for (const auto &c : r.stage_checks) {
                if (c.stage == stage.name) {
                    checks.push_back(stage_check_to_json(c));
                    text << "   check " << c.form << " [" << c.comparator << "]: "
                         << (c.passed ? "ok" : "FAIL") << "  max deviation "
                         << detail::sci(c.max_deviation) << "\n";
                }
            }
            Json j;
            j["name"] = stage.name;
            j["amplitudes"] = std::move(lines);
            j["checks"] = std::move(checks);
            stages.push_back(std::move(j));
        }
        text << "recovered " << (r.recovered ? r.recovered->str() : "-") << "  "
             << (ok ? "PASS" : "FAIL") << "\n\n";

        Json t;
        t["algorithm"] = std::string(to_string(a));
        t["n"] = r.n;
        t["recovered"] = r.recovered ? Json(r.recovered->str()) : Json(nullptr);
        t["oracle_calls"] = r.oracle_calls;
        t["stages"] = std::move(stages);
        if (r.failure) {
            t["failure"] = *r.failure;
        }
        t["passed"] = ok;
        traces.push_back(std::move(t));
    }

    CommandResult out;
    out.exit_code = all_ok ? kExitOk : kExitFailure;
    if (config.format == Format::Text) {
        out.document = text.str();
    } else {
        Json doc;
        doc["command"] = "trace";
        doc["source"] = detail::source_to_json(config, src);
        doc["tolerance"] = options.tolerance;
        doc["traces"] = std::move(traces);
        doc["passed"] = all_ok;
        out.document = detail::render(doc);
    }
    return out;
}

/// Runs one command, mapping usage and capacity errors to exit code 2.
inline CommandResult execute(const CliConfig &config) {
    try {
        switch (config.command) {
        case Command::Run:
            return cmd_run(config);
        case Command::Certify:
            return cmd_certify(config);
        case Command::Sweep:
            return cmd_sweep(config);
        case Command::Trace:
            return cmd_trace(config);
        }
    } catch (const UsageError &e) {
        return {kExitUsage, "", std::string("usage error: ") + e.what()};
    } catch (const CapacityError &e) {
        return {kExitUsage, "", std::string("capacity error: ") + e.what()};
    }
    return {kExitUsage, "", "unknown command"};
}

/// Full command-line entry point: parse, execute, write the document to
/// --output or `out`, and return the process exit code.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hidden-key quantum circuit simulator and oracle certifier", "bvlab"};
    app.require_subcommand(1);

    CliConfig config;
    std::optional<std::size_t> n;
    std::optional<std::string> gamma, table, output;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::string algorithm = "all";
    std::string format = "json";

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--output", output, "Write the document to this file");
        sub->add_option("--format", format, "Document format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--tolerance", tolerance, "Comparison tolerance")
            ->check(CLI::PositiveNumber);
    };
    auto add_source = [&](CLI::App *sub) {
        sub->add_option("--gamma", gamma, "Hidden key as a 0/1 string");
        sub->add_option("--table", table, "Truth-table file");
        sub->add_option("--n", n, "Key width (must match the key or table)");
        sub->add_option("--algorithm", algorithm,
                        "bva, ccnot-bva, pi, single-oracle-bva or all");
    };

    CLI::App *run = app.add_subcommand("run", "Run pipelines on one key or truth table");
    add_source(run);
    add_common(run);
    run->add_option("--seed", seed, "Also draw one seeded sample of the top register");

    CLI::App *certify = app.add_subcommand("certify", "Certify every oracle kind on dense matrices");
    certify->add_option("--n", n, "Function arity")->required();
    certify->add_option("--seed", seed, "Seed for random functions (n >= 4)");
    add_common(certify);

    CLI::App *sweep = app.add_subcommand("sweep", "Run every key of width n");
    sweep->add_option("--n", n, "Key width")->required();
    sweep->add_option("--algorithm", algorithm, "bva, ccnot-bva, pi, single-oracle-bva or all");
    add_common(sweep);

    CLI::App *trace = app.add_subcommand("trace", "Dump every intermediate state");
    add_source(trace);
    add_common(trace);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    if (run->parsed()) {
        config.command = Command::Run;
    } else if (certify->parsed()) {
        config.command = Command::Certify;
    } else if (sweep->parsed()) {
        config.command = Command::Sweep;
    } else {
        config.command = Command::Trace;
    }
    config.n = n;
    config.gamma = gamma;
    config.table_path = table;
    config.algorithm = algorithm;
    config.seed = seed;
    config.tolerance = tolerance;
    config.output_path = output;
    config.format = format == "text" ? Format::Text : Format::Json;

    const CommandResult result = execute(config);
    if (!result.diagnostics.empty()) {
        err << result.diagnostics << "\n";
    }
    if (result.exit_code == kExitUsage) {
        return result.exit_code;
    }
    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file || !(file << result.document)) {
            err << "cannot write '" << *config.output_path << "'\n";
            return kExitUsage;
        }
    } else {
        out << result.document;
    }
    return result.exit_code;
}

}  // namespace bvlab::cli
