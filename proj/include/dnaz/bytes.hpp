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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaz/error.hpp"

namespace dnaz {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

/// Thrown when a file cannot be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

inline Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string() + ": no such file or unreadable");
    }
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    const Bytes raw = read_file(path);
    return std::string(raw.begin(), raw.end());
}

inline void write_file(const std::filesystem::path& path, ByteSpan data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string() + ": cannot open for writing");
    }
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw IoError(path.string() + ": write failed");
    }
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
    write_file(path, ByteSpan(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

/// Little-endian appender for the binary container formats.
class ByteWriter {
public:
    void raw(ByteSpan data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
    void raw(std::string_view text) { buf_.insert(buf_.end(), text.begin(), text.end()); }
    void u8(std::uint8_t v) { buf_.push_back(v); }

    template <typename UInt>
    void le(UInt v) {
        for (std::size_t i = 0; i < sizeof(UInt); ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    Bytes take() && { return std::move(buf_); }

private:
    Bytes buf_;
};

/// Bounds-checked little-endian cursor; running off the end throws TruncatedPayload.
class ByteReader {
public:
    explicit ByteReader(ByteSpan data) : data_(data) {}

    std::size_t remaining() const noexcept { return data_.size() - pos_; }

    ByteSpan raw(std::size_t n) {
        need(n);
        ByteSpan out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::uint8_t u8() { return raw(1)[0]; }

    template <typename UInt>
    UInt le() {
        ByteSpan b = raw(sizeof(UInt));
        UInt v = 0;
        for (std::size_t i = 0; i < sizeof(UInt); ++i) {
            v |= static_cast<UInt>(b[i]) << (8 * i);
        }
        return v;
    }

private:
    void need(std::size_t n) const {
        if (remaining() < n) {
            throw TruncatedPayload("unexpected end of data: need " + std::to_string(n) +
                                   " bytes, have " + std::to_string(remaining()));
        }
    }

    ByteSpan data_;
    std::size_t pos_ = 0;
};

}  // namespace dnaz
