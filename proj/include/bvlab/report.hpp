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
 * JSON-shaped and plain-text renderings of pipeline reports.
 *
 * Probabilities are rounded to 12 decimals and distributions are written
 * sparsely, keyed by outcome bitstring, omitting outcomes below 1e-12.
 */
#pragma once

#include "bvlab/pipelines.hpp"
#include "bvlab/state_vector.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace bvlab {

using Json = nlohmann::ordered_json;

[[nodiscard]] inline double round12(double v) {
    const double r = std::round(v * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;
}

[[nodiscard]] inline Json distribution_to_json(const Distribution &probs, std::size_t bits) {
    Json out = Json::object();
    for (std::size_t w = 0; w < probs.size(); ++w) {
        if (probs[w] >= 1e-12) {
            out[BitString::from_int(bits, w).str()] = round12(probs[w]);
        }
    }
    return out;
}

[[nodiscard]] inline Json stage_check_to_json(const StageCheck &c) {
    Json j;
    j["stage"] = c.stage;
    j["form"] = c.form;
    j["comparator"] = c.comparator;
    j["max_deviation"] = c.max_deviation;
    j["passed"] = c.passed;
    return j;
}

[[nodiscard]] inline Json report_to_json(const RunReport &r) {
    Json j;
    j["algorithm"] = std::string(to_string(r.algorithm));
    j["n"] = r.n;
    j["recovered"] = r.recovered ? Json(r.recovered->str()) : Json(nullptr);
    j["top_distribution"] = distribution_to_json(r.top_distribution, r.n);
    j["middle_distribution"] = r.middle_distribution
                                   ? distribution_to_json(*r.middle_distribution, r.n)
                                   : Json(nullptr);
    Json checks = Json::array();
    for (const auto &c : r.stage_checks) {
        checks.push_back(stage_check_to_json(c));
    }
    j["stage_checks"] = std::move(checks);
    j["oracle_calls"] = r.oracle_calls;
    if (r.failure) {
        j["failure"] = *r.failure;
    }
    return j;
}

[[nodiscard]] inline Json analysis_to_json(const BvaOnPiAnalysis &a) {
    Json j;
    j["gamma"] = a.gamma.str();
    j["top_distribution"] = distribution_to_json(a.top_distribution, a.gamma.length());
    j["phase_factor"] = a.phase_factor;
    j["point_mass"] = a.point_mass;
    j["point"] = a.point ? Json(a.point->str()) : Json(nullptr);
    j["exact_deviation"] = a.exact_deviation;
    j["phase_insensitive_deviation"] = a.phase_insensitive_deviation;
    return j;
}

[[nodiscard]] inline std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12f", round12(p));
    return buf;
}

[[nodiscard]] inline std::string report_to_text(const RunReport &r) {
    std::ostringstream os;
    os << "algorithm     " << to_string(r.algorithm) << "\n"
       << "n             " << r.n << "\n"
       << "recovered     " << (r.recovered ? r.recovered->str() : "-") << "\n"
       << "oracle calls  " << r.oracle_calls << "\n";
    if (r.failure) {
        os << "failure       " << *r.failure << "\n";
    }
    os << "top register\n";
    for (std::size_t w = 0; w < r.top_distribution.size(); ++w) {
        if (r.top_distribution[w] >= 1e-12) {
            os << "  " << BitString::from_int(r.n, w) << "  "
               << format_probability(r.top_distribution[w]) << "\n";
        }
    }
    if (r.middle_distribution) {
        os << "middle register\n";
        for (std::size_t w = 0; w < r.middle_distribution->size(); ++w) {
            if ((*r.middle_distribution)[w] >= 1e-12) {
                os << "  " << BitString::from_int(r.n, w) << "  "
                   << format_probability((*r.middle_distribution)[w]) << "\n";
            }
        }
    }
    if (!r.stage_checks.empty()) {
        os << "stage checks\n";
        for (const auto &c : r.stage_checks) {
            char dev[32];
            std::snprintf(dev, sizeof dev, "%.3e", c.max_deviation);
            os << "  " << (c.passed ? "ok  " : "FAIL") << "  " << c.stage << " [" << c.form
               << ", " << c.comparator << "]  max deviation " << dev << "\n";
        }
    }
    return os.str();
}

}  // namespace bvlab
