/**
 * Copyright 2026 The dnaz Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "dnaz/analysis.hpp"

namespace dnaz {

// Analysis of one byte plane, either a plaintext image or a ciphertext view.
struct AnalysisReport {
    std::string source;                 // "image" or "ciphertext"
    std::optional<unsigned> plane;      // index byte analysed, ciphertexts only
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Histogram hist;
    std::optional<CorrelationReport> correlation;  // absent for rasters smaller than 2x2
};

inline AnalysisReport analyze_raster(const Raster& img) {
    AnalysisReport r;
    r.source = "image";
    r.width = img.width;
    r.height = img.height;
    r.hist = histogram(img);
    if (img.width >= 2 && img.height >= 2) {
        r.correlation = correlation_report(img);
    }
    return r;
}

inline AnalysisReport analyze_ciphertext(const Ciphertext& ct, unsigned byte_plane = 0) {
    AnalysisReport r = analyze_raster(cipher_view(ct, byte_plane));
    r.source = "ciphertext";
    r.plane = byte_plane;
    return r;
}

inline nlohmann::json to_json(const DirectionalCorrelation& c) {
    nlohmann::json j;
    j["r"] = c.r ? nlohmann::json(*c.r) : nlohmann::json(nullptr);
    j["n_pairs"] = c.n_pairs;
    return j;
}

inline nlohmann::json to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["source"] = r.source;
    j["plane"] = r.plane ? nlohmann::json(*r.plane) : nlohmann::json(nullptr);
    j["width"] = r.width;
    j["height"] = r.height;
    j["histogram"] = {{"total", r.hist.total}, {"bins", r.hist.bins}};
    if (r.correlation) {
        j["correlation"] = {{"row", to_json(r.correlation->row)},
                            {"col", to_json(r.correlation->col)},
                            {"diag", to_json(r.correlation->diag)}};
    } else {
        j["correlation"] = nullptr;
    }
    return j;
}

inline nlohmann::json to_json(const AttackResult& a) {
    return {{"verdict", to_string(a.verdict)}, {"match_fraction", a.match_fraction}};
}

inline std::string to_text(const AnalysisReport& r) {
    std::ostringstream out;
    char line[128];
    out << "source      " << r.source;
    if (r.plane) {
        out << " (index byte " << *r.plane << ")";
    }
    out << "\nsize        " << r.width << "x" << r.height << "\n";

    std::uint64_t lo = r.hist.bins[0], hi = r.hist.bins[0];
    std::size_t occupied = 0;
    for (auto b : r.hist.bins) {
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        occupied += b != 0;
    }
    std::snprintf(line, sizeof line, "histogram   min %llu  max %llu  mean %.2f  occupied %zu/256\n",
                  static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi), r.hist.mean(), occupied);
    out << line;

    if (!r.correlation) {
        out << "correlation n/a (raster smaller than 2x2)\n";
        return out.str();
    }
    out << "direction   r            pairs\n";
    for (auto d : {Direction::row, Direction::col, Direction::diag}) {
        const auto& c = (*r.correlation)[d];
        if (c.r) {
            std::snprintf(line, sizeof line, "%-11s %-12.6f %zu\n", to_string(d), *c.r, c.n_pairs);
        } else {
            std::snprintf(line, sizeof line, "%-11s %-12s %zu\n", to_string(d), "n/a", c.n_pairs);
        }
        out << line;
    }
    return out.str();
}

/// 256 rows of "value,count" under a header line.
inline std::string histogram_csv(const Histogram& h) {
    std::string out = "value,count\n";
    for (std::size_t v = 0; v < h.bins.size(); ++v) {
        out += std::to_string(v) + "," + std::to_string(h.bins[v]) + "\n";
    }
    return out;
}

}  // namespace dnaz
