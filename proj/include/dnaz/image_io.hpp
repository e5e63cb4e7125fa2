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
 * @file image_io.hpp
 * @brief 8-bit grayscale rasters and their binary PGM (P5) container.
 */

#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "dnaz/bytes.hpp"
#include "dnaz/error.hpp"

namespace dnaz {

/// H x W grayscale image, row-major, top-left origin.
struct Raster {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Bytes pixels;

    Raster() = default;

    Raster(std::uint32_t w, std::uint32_t h, Bytes px) : width(w), height(h), pixels(std::move(px)) {
        if (w == 0 || h == 0) {
            throw ZeroDimension("raster dimensions must be at least 1x1");
        }
        if (pixels.size() != static_cast<std::size_t>(w) * h) {
            throw LengthMismatch("raster holds " + std::to_string(pixels.size()) +
                                 " pixels, expected " + std::to_string(static_cast<std::size_t>(w) * h));
        }
    }

    /// Constant-valued raster.
    static Raster filled(std::uint32_t w, std::uint32_t h, std::uint8_t value) {
        return Raster(w, h, Bytes(static_cast<std::size_t>(w) * h, value));
    }

    std::size_t size() const noexcept { return pixels.size(); }

    std::uint8_t at(std::uint32_t row, std::uint32_t col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }

    friend bool operator==(const Raster&, const Raster&) = default;
};

namespace detail {

class PgmHeaderScanner {
public:
    explicit PgmHeaderScanner(ByteSpan data) : data_(data) {}

    // Skips whitespace and '#' comments up to the next token.
    void skip_separators() {
        while (pos_ < data_.size()) {
            const auto c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') {
                    ++pos_;
                }
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::uint64_t number(const char* what) {
        skip_separators();
        if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) {
            throw MalformedHeader(std::string("PGM header: expected ") + what);
        }
        std::uint64_t v = 0;
        while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
            v = v * 10 + (data_[pos_] - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) {
                throw MalformedHeader(std::string("PGM header: ") + what + " out of range");
            }
            ++pos_;
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_whitespace() {
        if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
            throw MalformedHeader("PGM header: missing whitespace after maxval");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    ByteSpan data_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a single binary PGM image. Color (P6) and ASCII (P2) variants are rejected.
inline Raster load_pgm(ByteSpan data) {
    if (data.size() < 2 || data[0] != 'P') {
        throw MalformedHeader("not a PNM stream (bad magic)");
    }
    if (data[1] != '5') {
        if (data[1] == '6' || data[1] == '3') {
            throw MalformedHeader("color PNM images are not supported; convert to grayscale P5");
        }
        throw MalformedHeader(std::string("unsupported PNM magic P") + static_cast<char>(data[1]));
    }
    detail::PgmHeaderScanner scan(data);
    scan.advance(2);
    const auto width = scan.number("width");
    const auto height = scan.number("height");
    const auto maxval = scan.number("maxval");
    if (width == 0 || height == 0) {
        throw MalformedHeader("PGM header: zero dimension");
    }
    if (maxval == 0) {
        throw MalformedHeader("PGM header: maxval must be positive");
    }
    if (maxval > 255) {
        throw UnsupportedMaxval("PGM maxval " + std::to_string(maxval) + " exceeds 255");
    }
    scan.single_whitespace();

    const std::size_t expected = static_cast<std::size_t>(width) * height;
    const std::size_t available = data.size() - scan.position();
    if (available < expected) {
        throw TruncatedPayload("PGM payload has " + std::to_string(available) + " bytes, expected " +
                               std::to_string(expected));
    }
    if (available > expected) {
        throw TrailingData("PGM stream carries " + std::to_string(available - expected) +
                           " bytes past the raster");
    }
    auto payload = data.subspan(scan.position());
    for (auto v : payload) {
        if (v > maxval) {
            throw MalformedHeader("PGM sample exceeds declared maxval");
        }
    }
    return Raster(static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                  Bytes(payload.begin(), payload.end()));
}

inline Bytes save_pgm(const Raster& img) {
    ByteWriter out;
    out.raw("P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n");
    out.raw(img.pixels);
    return std::move(out).take();
}

inline Raster load_pgm_file(const std::filesystem::path& path) { return load_pgm(read_file(path)); }

inline void save_pgm_file(const std::filesystem::path& path, const Raster& img) {
    write_file(path, save_pgm(img));
}

}  // namespace dnaz
