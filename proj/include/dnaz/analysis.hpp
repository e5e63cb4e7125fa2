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

/**
 * @file analysis.hpp
 * @brief Statistical and attack battery for the cipher: gray-level histograms,
 *        adjacent-pixel Pearson correlation, the XOR mask (chosen/known
 *        plaintext) attack and index-level differential metrics.
 *
 * Ciphertexts hold 32-bit base positions, not pixels. Byte-oriented analyses
 * therefore run on a CipherView: one chosen byte of every index, laid out in
 * stream order and reshaped to H x W.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnaz/cipher.hpp"
#include "dnaz/error.hpp"
#include "dnaz/image_io.hpp"

namespace dnaz {

/// Byte k (0 = least significant) of every ciphertext index, as an H x W raster.
inline Raster cipher_view(const Ciphertext& ct, unsigned byte_plane = 0) {
    if (byte_plane > 3) {
        throw InvalidArgument("cipher view plane must be 0..3, got " + std::to_string(byte_plane));
    }
    Bytes plane(ct.indices.size());
    for (std::size_t i = 0; i < plane.size(); ++i) {
        plane[i] = static_cast<std::uint8_t>(ct.indices[i] >> (8 * byte_plane));
    }
    return Raster(ct.width, ct.height, std::move(plane));
}

struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;

    double mean() const noexcept { return static_cast<double>(total) / 256.0; }
};

inline Histogram histogram(ByteSpan values) {
    Histogram h;
    for (auto v : values) {
        ++h.bins[v];
    }
    h.total = values.size();
    return h;
}

inline Histogram histogram(const Raster& plane) { return histogram(ByteSpan(plane.pixels)); }

/// Pearson correlation in the single-pass sum form:
///   r = (n Sxy - Sx Sy) / (sqrt(n Sxx - Sx^2) sqrt(n Syy - Sy^2))
/// Throws DegenerateInput when either sequence is constant.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw LengthMismatch("pearson: sequences differ in length");
    }
    if (x.size() < 2) {
        throw TooSmall("pearson: need at least two pairs");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double vx = n * sxx - sx * sx;
    const double vy = n * syy - sy * sy;
    if (vx <= 0 || vy <= 0) {
        throw DegenerateInput("pearson: constant sequence, correlation undefined");
    }
    return (n * sxy - sx * sy) / (std::sqrt(vx) * std::sqrt(vy));
}

enum class Direction { row, col, diag };

inline const char* to_string(Direction d) noexcept {
    switch (d) {
        case Direction::row: return "row";
        case Direction::col: return "col";
        case Direction::diag: return "diag";
    }
    return "?";
}

struct PairSequences {
    std::vector<double> x;
    std::vector<double> y;
};

/// Every horizontally, vertically or diagonally adjacent pixel pair, scanned row-major.
inline PairSequences adjacent_pairs(const Raster& plane, Direction dir) {
    const std::uint32_t dr = dir == Direction::row ? 0 : 1;
    const std::uint32_t dc = dir == Direction::col ? 0 : 1;
    if (plane.height < 1 + dr || plane.width < 1 + dc) {
        throw TooSmall(std::string("raster too small for ") + to_string(dir) + " neighbours");
    }
    PairSequences out;
    const std::size_t n = static_cast<std::size_t>(plane.height - dr) * (plane.width - dc);
    out.x.reserve(n);
    out.y.reserve(n);
    for (std::uint32_t i = 0; i + dr < plane.height; ++i) {
        for (std::uint32_t j = 0; j + dc < plane.width; ++j) {
            out.x.push_back(plane.at(i, j));
            out.y.push_back(plane.at(i + dr, j + dc));
        }
    }
    return out;
}

struct DirectionalCorrelation {
    std::optional<double> r;  // nullopt when a sequence is constant
    std::size_t n_pairs = 0;
};

struct CorrelationReport {
    DirectionalCorrelation row;
    DirectionalCorrelation col;
    DirectionalCorrelation diag;

    const DirectionalCorrelation& operator[](Direction d) const noexcept {
        return d == Direction::row ? row : d == Direction::col ? col : diag;
    }
};

inline DirectionalCorrelation directional_correlation(const Raster& plane, Direction dir) {
    const auto pairs = adjacent_pairs(plane, dir);
    DirectionalCorrelation out;
    out.n_pairs = pairs.x.size();
    try {
        out.r = pearson(pairs.x, pairs.y);
    } catch (const DegenerateInput&) {
        out.r.reset();
    } catch (const TooSmall&) {
        out.r.reset();
    }
    return out;
}

inline CorrelationReport correlation_report(const Raster& plane) {
    if (plane.width < 2 || plane.height < 2) {
        throw TooSmall("correlation report needs at least a 2x2 raster");
    }
    return {directional_correlation(plane, Direction::row), directional_correlation(plane, Direction::col),
            directional_correlation(plane, Direction::diag)};
}

inline void require_same_shape(const Raster& a, const Raster& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatch("rasters differ in size: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                                " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
    }
}

/// Element-wise XOR of two equally sized rasters.
inline Raster xor_mask(const Raster& c, const Raster& c1) {
    require_same_shape(c, c1);
    Bytes m(c.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = c.pixels[i] ^ c1.pixels[i];
    }
    return Raster(c.width, c.height, std::move(m));
}

enum class Verdict { resisted, broken };

inline const char* to_string(Verdict v) noexcept { return v == Verdict::broken ? "broken" : "resisted"; }

struct AttackResult {
    Verdict verdict = Verdict::resisted;
    double match_fraction = 0.0;
};

/// Applies mask m to the unknown ciphertext view z1 and compares the guess with the true plaintext z.
inline AttackResult mask_attack(const Raster& m, const Raster& z1, const Raster& z) {
    require_same_shape(m, z1);
    require_same_shape(m, z);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        matches += static_cast<std::uint8_t>(m.pixels[i] ^ z1.pixels[i]) == z.pixels[i];
    }
    AttackResult r;
    r.verdict = matches == m.size() ? Verdict::broken : Verdict::resisted;
    r.match_fraction = static_cast<double>(matches) / static_cast<double>(m.size());
    return r;
}

/// Fraction of stream positions whose indices differ.
inline double diff_metric(const Ciphertext& e1, const Ciphertext& e2) {
    if (e1.width != e2.width || e1.height != e2.height || e1.indices.size() != e2.indices.size()) {
        throw DimensionMismatch("ciphertexts differ in size");
    }
    std::size_t differ = 0;
    for (std::size_t i = 0; i < e1.indices.size(); ++i) {
        differ += e1.indices[i] != e2.indices[i];
    }
    return static_cast<double>(differ) / static_cast<double>(e1.indices.size());
}

/// Fraction of positions where two equally sized rasters disagree.
inline double mismatch_fraction(const Raster& a, const Raster& b) {
    require_same_shape(a, b);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        differ += a.pixels[i] != b.pixels[i];
    }
    return static_cast<double>(differ) / static_cast<double>(a.size());
}

}  // namespace dnaz
