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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. argv[1], when given, is the path of the bvlab executable used for
// the determinism check.

#include "bvlab/bvlab.hpp"
#include "bvlab/cli.hpp"
#include "support/dense_reference.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace bvlab;
namespace ref = bvlab::dense;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

// Closed forms written directly as amplitude lists.

ref::Vector vkron(const ref::Vector &a, const ref::Vector &b) {
    ref::Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

ref::Vector signed_sum(std::size_t n, std::uint64_t g) {
    const double s = std::pow(2.0, -0.5 * double(n));
    ref::Vector v(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = parity(x & g) ? -s : s;
    return v;
}

ref::Vector ket(std::size_t n, std::uint64_t label) { return ref::basis(n, label); }
ref::Vector plus() { return signed_sum(1, 0); }
ref::Vector minus() { return signed_sum(1, 1); }

/// Toffoli kickback stage: sum_x |x> (|0> + (-1)^(x.g) |1>) |-> / sqrt(2^(n+1)).
ref::Vector toffoli_stage(std::size_t n, std::uint64_t g) {
    const double s = std::pow(2.0, -0.5 * double(n + 1));
    ref::Vector v(std::size_t{1} << (n + 1));
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
        v[2 * x] = s;
        v[2 * x + 1] = parity(x & g) ? -s : s;
    }
    return vkron(v, minus());
}

double diff(const ref::Vector &expected, const StateVector &actual) {
    if (expected.size() != actual.size()) return INFINITY;
    return ref::max_diff(expected, actual.amplitudes());
}

const StateVector *stage(const RunReport &r, const std::string &name) {
    for (const auto &s : r.stages)
        if (s.name == name) return &s.state;
    return nullptr;
}

struct Line {
    bool passed = true;
    std::ostringstream detail;
    void require(bool cond, const std::string &what) {
        if (!cond && passed) detail << "first failure: " << what << "; ";
        passed = passed && cond;
    }
};

int failures = 0;

void report(int id, const std::string &title, const std::function<void(Line &)> &body) {
    Line line;
    const auto t0 = Clock::now();
    try {
        body(line);
    } catch (const std::exception &e) {
        line.passed = false;
        line.detail << "exception: " << e.what();
    }
    if (!line.passed) ++failures;
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", seconds_since(t0));
    std::cout << (line.passed ? "PASS" : "FAIL") << "  [" << id << "] " << title << "  ("
              << line.detail.str() << time << ")\n"
              << std::flush;
}

template <class Fn>
void for_keys(std::size_t lo, std::size_t hi, Fn &&fn) {
    for (std::size_t n = lo; n <= hi; ++n)
        for (std::uint64_t g = 0; g < (1u << n); ++g) fn(n, g);
}

std::string capture(const std::string &command) {
    std::string out;
    if (FILE *p = popen(command.c_str(), "r")) {
        std::array<char, 4096> buf;
        std::size_t got;
        while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
        const int status = pclose(p);
        out += "\nstatus " + std::to_string(status);
    }
    return out;
}

std::string capture_in_process(std::vector<std::string> args) {
    args.insert(args.begin(), "bvlab");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str() + "\nstatus " + std::to_string(code);
}

}  // namespace

int main(int argc, char **argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    report(1, "exhaustive key recovery, n = 1..4, four pipelines", [](Line &l) {
        const auto t0 = Clock::now();
        std::size_t keys = 0, runs = 0;
        double worst = 0.0;
        for_keys(1, 4, [&](std::size_t n, std::uint64_t g) {
            ++keys;
            const auto gamma = BitString::from_int(n, g);
            for (Algorithm a : kAllAlgorithms) {
                ++runs;
                const auto r = run_pipeline(a, promised_function(a, gamma));
                const double p = r.top_distribution.at(g);
                worst = std::max(worst, std::abs(1.0 - p));
                l.require(r.recovered == gamma, std::string(to_string(a)) + " key " + gamma.str());
                l.require(std::abs(1.0 - p) <= 1e-9, "probability at " + gamma.str());
            }
        });
        const double t = seconds_since(t0);
        l.require(keys == 30 && runs == 120, "key count");
        l.require(t < 5.0, "runtime over 5 s");
        l.detail << keys << " keys, " << runs << " runs, worst |1-p| " << worst << "; ";
    });

    report(2, "PI middle register is a point mass at the key", [](Line &l) {
        double worst = 0.0;
        for_keys(1, 4, [&](std::size_t n, std::uint64_t g) {
            const auto r = run_pi(pi_function(BitString::from_int(n, g)));
            l.require(r.middle_distribution.has_value(), "middle distribution missing");
            const double p = r.middle_distribution->at(g);
            worst = std::max(worst, std::abs(1.0 - p));
            l.require(std::abs(1.0 - p) <= 1e-9, "middle register at " + std::to_string(g));
        });
        l.detail << "worst |1-p| " << worst << "; ";
    });

    report(3, "oracle certification, all functions for n = 1..3", [](Line &l) {
        const auto t0 = Clock::now();
        std::size_t matrices = 0;
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto c = certify_oracles(n, 1e-12);
            l.require(c.exhaustive, "exhaustive mode");
            l.require(c.kinds.size() == 5, "five kinds");
            for (const auto &k : c.kinds) {
                matrices += k.functions;
                l.require(k.functions == (std::size_t{1} << (1u << n)), "function count");
                l.require(k.passed(), std::string(to_string(k.kind)) + " at n = " + std::to_string(n));
            }
        }
        l.require(matrices == 5 * (4 + 16 + 256), "matrix count");
        l.require(seconds_since(t0) < 30.0, "runtime over 30 s");
        l.detail << matrices << " matrices; ";
    });

    report(4, "stage fidelity against closed forms, n = 1..3", [](Line &l) {
        double worst = 0.0;
        std::size_t compared = 0;
        auto cmp = [&](const RunReport &r, const std::string &name, const ref::Vector &expected) {
            const StateVector *s = stage(r, name);
            l.require(s != nullptr, "missing stage " + name);
            if (!s) return;
            const double d = diff(expected, *s);
            worst = std::max(worst, d);
            ++compared;
            l.require(d <= 1e-9, std::string(to_string(r.algorithm)) + " " + name);
        };
        for_keys(1, 3, [&](std::size_t n, std::uint64_t g) {
            const auto gamma = BitString::from_int(n, g);
            RunOptions opts;
            opts.keep_states = true;
            const auto uni = signed_sum(n, 0);
            const auto hk = signed_sum(n, g);

            const auto bva = run_bva(bv_function(gamma), opts);
            cmp(bva, "psi1", vkron(uni, minus()));
            cmp(bva, "psi2", vkron(hk, minus()));
            cmp(bva, "psi3", vkron(ket(n, g), minus()));

            const auto cc = run_ccnot_bva(bv_function(gamma), opts);
            cmp(cc, "psi1", vkron(vkron(uni, plus()), minus()));
            cmp(cc, "psi2", toffoli_stage(n, g));
            cmp(cc, "psi3", vkron(vkron(hk, plus()), minus()));
            cmp(cc, "psi4", vkron(vkron(ket(n, g), plus()), minus()));

            const auto pi = run_pi(pi_function(gamma), opts);
            cmp(pi, "phi1", vkron(vkron(uni, uni), minus()));
            cmp(pi, "phi2", vkron(vkron(hk, hk), minus()));
            cmp(pi, "phi3", vkron(vkron(ket(n, g), hk), minus()));
            cmp(pi, "phi3-middle", vkron(vkron(hk, ket(n, g)), minus()));

            const auto so = run_single_oracle_bva(bv_function(gamma), opts);
            cmp(so, "psi2", vkron(vkron(hk, minus()), minus()));
            cmp(so, "psi3", vkron(vkron(ket(n, g), minus()), minus()));

            for (const auto *r : {&bva, &cc, &pi, &so}) {
                for (const auto &c : r->stage_checks) {
                    l.require(c.comparator == "exact" && c.passed,
                              "recorded check " + c.stage + "/" + c.form);
                }
            }
        });
        l.detail << compared << " stages, worst deviation " << worst << "; ";
    });

    report(5, "query counts: classical n, quantum 1 (2 for T_f + P_f)", [](Line &l) {
        for_keys(1, 8, [&](std::size_t n, std::uint64_t g) {
            const auto gamma = BitString::from_int(n, g);
            auto bv = bv_function(gamma);
            auto pi = pi_function(gamma);
            bv.enable_query_counting();
            pi.enable_query_counting();
            l.require(classical_bv_solve(bv) == gamma && bv.query_count() == n, "classical BV");
            l.require(classical_pi_solve(pi) == gamma && pi.query_count() == n, "classical PI");
        });
        for_keys(1, 4, [&](std::size_t n, std::uint64_t g) {
            const auto gamma = BitString::from_int(n, g);
            for (Algorithm a : kAllAlgorithms) {
                const auto r = run_pipeline(a, promised_function(a, gamma));
                l.require(r.oracle_calls == (a == Algorithm::CcnotBva ? 2u : 1u),
                          std::string(to_string(a)) + " oracle calls");
            }
        });
        l.detail << "classical n = 1..8, quantum n = 1..4; ";
    });

    report(6, "phase-kickback laws for T_f, S_f, S'_f, n <= 3", [](Line &l) {
        double worst = 0.0;
        std::size_t cases = 0;
        auto check = [&](const ref::Vector &expected, const StateVector &actual, const char *what) {
            const double d = diff(expected, actual);
            worst = std::max(worst, d);
            ++cases;
            l.require(d <= 1e-12, what);
        };
        for (std::size_t n = 1; n <= 3; ++n) {
            const std::uint64_t N = std::uint64_t{1} << n;
            for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << N); ++idx) {
                const auto f = enumerated_function(n, idx);
                auto fv = [&](std::uint64_t x) { return int((idx >> x) & 1U); };
                for (std::uint64_t x = 0; x < N; ++x) {
                    const double sx = fv(x) ? -1.0 : 1.0;
                    // T_f |x,1>|-> = (-1)^f(x) |x,1>|->
                    ref::Vector e = vkron(ket(n + 1, 2 * x + 1), minus());
                    for (auto &a : e) a *= sx;
                    check(e, apply_toffoli_oracle(tensor(basis_state(BitString::from_int(n + 1, 2 * x + 1)), minus_state()), f),
                          "T_f");
                    // S'_f |x,b>|-> = (-1)^(f(x)+b) |x,b>|->
                    for (std::uint64_t b = 0; b < 2; ++b) {
                        ref::Vector e2 = vkron(ket(n + 1, 2 * x + b), minus());
                        for (auto &a : e2) a *= (fv(x) ^ int(b)) ? -1.0 : 1.0;
                        check(e2, apply_single_xor_oracle(tensor(basis_state(BitString::from_int(n + 1, 2 * x + b)), minus_state()), f),
                              "S'_f");
                    }
                    // S_f |x,y>|-> = (-1)^(f(x)+f(y)) |x,y>|->
                    for (std::uint64_t y = 0; y < N; ++y) {
                        ref::Vector e3 = vkron(ket(2 * n, x * N + y), minus());
                        for (auto &a : e3) a *= (fv(x) ^ fv(y)) ? -1.0 : 1.0;
                        check(e3, apply_two_register_oracle(tensor(basis_state(BitString::from_int(2 * n, x * N + y)), minus_state()), f),
                              "S_f");
                    }
                }
            }
        }
        l.detail << cases << " cases, worst deviation " << worst << "; ";
    });

    report(7, "entanglement witness: Schmidt rank of psi2, n = 2..4", [](Line &l) {
        std::size_t rank2 = 0, rank1 = 0;
        for_keys(2, 4, [&](std::size_t n, std::uint64_t g) {
            RunOptions opts;
            opts.keep_states = true;
            const auto r = run_ccnot_bva(bv_function(BitString::from_int(n, g)), opts);
            const StateVector *psi2 = stage(r, "psi2");
            l.require(psi2 != nullptr, "psi2 missing");
            const auto block = project_last_qubit(*psi2, minus_state());
            const auto sv = schmidt_coefficients(block, n);
            const std::size_t rank = schmidt_rank(block, n, 1e-9);
            if (g == 0) {
                ++rank1;
                l.require(rank == 1, "rank at key 0");
            } else {
                ++rank2;
                l.require(rank == 2 && sv.size() > 1 && sv[1] > 1e-9, "rank at key " + std::to_string(g));
            }
        });
        l.detail << rank2 << " keys with rank 2, " << rank1 << " with rank 1; ";
    });

    report(8, "baseline circuit on PI functions vs dense prediction, n <= 4", [](Line &l) {
        double worst = 0.0;
        std::size_t point_masses = 0, keys = 0;
        for_keys(1, 4, [&](std::size_t n, std::uint64_t g) {
            const auto gamma = BitString::from_int(n, g);
            const auto a = analyze_bva_on_pi(gamma);
            const auto f = pi_function(gamma);
            ref::Vector v = ref::apply(ref::hadamard_then_identity(n + 1, 0), ref::basis(n + 1, 1));
            v = ref::apply(ref::standard_bv_matrix(f), v);
            v = ref::apply(ref::hadamard_then_identity(n, 1), v);
            const auto expected = ref::top_marginal(v, n + 1, n);
            for (std::size_t w = 0; w < expected.size(); ++w) {
                const double d = std::abs(expected[w] - a.top_distribution.at(w));
                worst = std::max(worst, d);
                l.require(d <= 1e-9, "distribution at key " + gamma.str());
            }
            l.require(a.phase_factor == (parity(g & g) ? -1 : 1), "phase factor at " + gamma.str());
            ++keys;
            point_masses += a.point_mass ? 1 : 0;
        });
        l.detail << keys << " keys, worst deviation " << worst << ", point mass for "
                 << point_masses << "/" << keys << "; ";
    });

    report(9, "performance: ccnot-bva at n = 20, sweep at n = 8", [](Line &l) {
        RunOptions opts;
        opts.record_stages = false;
        const auto gamma = BitString::parse("10110011100011110101");
        auto t0 = Clock::now();
        const auto r = run_ccnot_bva(bv_function(gamma), opts);
        const double t_run = seconds_since(t0);
        l.require(r.recovered == gamma, "n = 20 recovery");
        l.require(t_run < 10.0, "n = 20 over 10 s");
        t0 = Clock::now();
        const auto s = run_sweep(8, {kAllAlgorithms.begin(), kAllAlgorithms.end()});
        const double t_sweep = seconds_since(t0);
        l.require(s.passed() && s.successes == 1024, "sweep n = 8");
        l.require(t_sweep < 60.0, "sweep over 60 s");
        char buf[96];
        std::snprintf(buf, sizeof buf, "n = 20 run %.2fs, sweep %zu/%zu in %.2fs; ", t_run,
                      s.successes, s.expected, t_sweep);
        l.detail << buf;
    });

    report(10, "determinism: repeated CLI runs are byte-identical", [&](Line &l) {
        const std::vector<std::vector<std::string>> cases = {
            {"run", "--gamma", "10110", "--seed", "7"},
            {"run", "--gamma", "011", "--algorithm", "pi", "--seed", "3", "--format", "text"},
            {"trace", "--gamma", "101", "--algorithm", "ccnot-bva"},
            {"certify", "--n", "3"},
            {"sweep", "--n", "4"},
        };
        for (const auto &args : cases) {
            std::string first, second;
            if (!cli_path.empty()) {
                std::string cmd = "'" + cli_path + "'";
                for (const auto &a : args) cmd += " " + a;
                cmd += " 2>/dev/null";
                first = capture(cmd);
                second = capture(cmd);
            } else {
                first = capture_in_process(args);
                second = capture_in_process(args);
            }
            l.require(first.size() > 10 && first.ends_with("status 0"), "command failed: " + args[0]);
            l.require(first == second, "outputs differ: " + args[0]);
        }
        l.detail << cases.size() << " invocations twice via "
                 << (cli_path.empty() ? "run_cli" : "the executable") << "; ";
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
