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
 * @file cipher.hpp
 * @brief Reference-sequence substitution cipher.
 *
 * Encryption: the raster is read in zigzag order, each byte is spelled as a
 * 4-nucleotide quad, and the quad is replaced by the first position in the
 * key sequence at or after a per-position random start (wrapping) where that
 * quad occurs. Decryption reads the four bases at every recorded position and
 * undoes the zigzag.
 *
 * The start for position i is draw(seed, i, n), a stateless function, so
 * positions are independent and may be processed in any order or in parallel.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dnaz/bytes.hpp"
#include "dnaz/dna_codec.hpp"
#include "dnaz/error.hpp"
#include "dnaz/image_io.hpp"
#include "dnaz/keystore.hpp"
#include "dnaz/zigzag.hpp"

namespace dnaz {

enum class ScanMode : std::uint8_t { full_frame, block8 };

struct Ciphertext {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Digest key_fingerprint{};
    std::uint64_t seed = 0;
    ScanMode scan = ScanMode::full_frame;
    std::vector<std::uint32_t> indices;  // one base position per plaintext byte, zigzag order

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Search start for plaintext position i: the i-th splitmix64 output from state seed, mod n.
constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t i, std::uint64_t n) noexcept {
    return mix64(seed + (i + 1) * 0x9E3779B97F4A7C15ULL) % n;
}

inline ZigzagPerm scan_order(ScanMode mode, std::uint32_t height, std::uint32_t width) {
    return mode == ScanMode::block8 ? block_zigzag_order(height, width, 8) : zigzag_order(height, width);
}

struct EncryptOptions {
    ScanMode scan = ScanMode::full_frame;
    unsigned threads = 0;  // 0 = hardware concurrency
};

namespace detail {

inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    if (n < kParallelThreshold || threads == 1) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::jthread> workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        workers.emplace_back([&fn, begin, end = std::min(n, begin + chunk)] { fn(begin, end); });
    }
}

}  // namespace detail

inline Ciphertext encrypt(const Raster& img, const KeyStore& ks, std::uint64_t seed, const EncryptOptions& opts = {}) {
    const auto perm = scan_order(opts.scan, img.height, img.width);
    const Bytes stream = perm.apply(img.pixels);

    // Coverage is checked up front so the workers never throw.
    std::array<bool, 256> present{};
    for (auto b : stream) {
        present[b] = true;
    }
    for (std::size_t v = 0; v < 256; ++v) {
        if (present[v] && !ks.covers(static_cast<std::uint8_t>(v))) {
            throw KeyCoverageError(static_cast<std::uint8_t>(v),
                                   "key sequence cannot encrypt byte value " + std::to_string(v) + " (quad " +
                                       byte_to_quad(static_cast<std::uint8_t>(v)).str() + " never occurs)");
        }
    }

    Ciphertext ct;
    ct.width = img.width;
    ct.height = img.height;
    ct.key_fingerprint = ks.fingerprint();
    ct.seed = seed;
    ct.scan = opts.scan;
    ct.indices.resize(stream.size());

    const std::uint64_t n = ks.length();
    detail::parallel_for(stream.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ct.indices[i] = ks.lookup_from(stream[i], draw(seed, i, n));
            assert(ks.sequence().byte_at(ct.indices[i]) == stream[i]);
        }
    });
    return ct;
}

struct DecryptOptions {
    /// Test hook: skip the key fingerprint comparison to observe wrong-key output.
    bool verify_key = true;
};

inline Raster decrypt(const Ciphertext& ct, const KeyStore& ks, const DecryptOptions& opts = {}) {
    if (opts.verify_key && ct.key_fingerprint != ks.fingerprint()) {
        throw KeyMismatch("ciphertext was produced under key " + to_hex(ct.key_fingerprint) +
                          ", supplied key is " + to_hex(ks.fingerprint()));
    }
    const std::size_t expected = static_cast<std::size_t>(ct.width) * ct.height;
    if (ct.indices.size() != expected) {
        throw LengthMismatch("ciphertext holds " + std::to_string(ct.indices.size()) + " indices for a " +
                             std::to_string(ct.width) + "x" + std::to_string(ct.height) + " image");
    }
    const auto& seq = ks.sequence();
    Bytes stream(ct.indices.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        if (ct.indices[i] + std::uint64_t{4} > seq.length()) {
            throw IndexOutOfRange("ciphertext index " + std::to_string(ct.indices[i]) + " at position " +
                                  std::to_string(i) + " exceeds key length " + std::to_string(seq.length()));
        }
        stream[i] = seq.byte_at(ct.indices[i]);
    }
    const auto perm = scan_order(ct.scan, ct.height, ct.width);
    return Raster(ct.width, ct.height, perm.invert_apply(stream));
}

// ---------------------------------------------------------------------------
// DNAZ container, little-endian:
//   "DNAZ" | version u8 | flags u8 | width u32 | height u32 | seed u64 |
//   fingerprint[32] | payload
// flags bit0: payload is bit-packed (u8 bit width, then MSB-first indices)
// flags bit1: 8x8 block zigzag scan
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCiphertextMagic = "DNAZ";
inline constexpr std::uint8_t kCiphertextVersion = 1;
inline constexpr std::uint8_t kFlagPacked = 0x01;
inline constexpr std::uint8_t kFlagBlock8 = 0x02;

/// Bits per packed index for a key of n bases: ceil(log2(n - 3)), at least 1.
constexpr unsigned packed_index_bits(std::uint64_t key_length) noexcept {
    const std::uint64_t values = key_length > 3 ? key_length - 3 : 1;
    return std::max(1u, static_cast<unsigned>(std::bit_width(values - 1)));
}

struct WriteOptions {
    /// Bit width for packed output; nullopt writes plain u32 indices.
    std::optional<unsigned> packed_bits;
};

inline Bytes serialize(const Ciphertext& ct, const WriteOptions& opts = {}) {
    ByteWriter out;
    out.raw(kCiphertextMagic);
    out.u8(kCiphertextVersion);
    std::uint8_t flags = 0;
    if (opts.packed_bits) flags |= kFlagPacked;
    if (ct.scan == ScanMode::block8) flags |= kFlagBlock8;
    out.u8(flags);
    out.le<std::uint32_t>(ct.width);
    out.le<std::uint32_t>(ct.height);
    out.le<std::uint64_t>(ct.seed);
    out.raw(ct.key_fingerprint);

    if (!opts.packed_bits) {
        for (auto idx : ct.indices) {
            out.le<std::uint32_t>(idx);
        }
        return std::move(out).take();
    }

    const unsigned bits = *opts.packed_bits;
    if (bits == 0 || bits > 32) {
        throw InvalidArgument("packed index width must be 1..32 bits");
    }
    out.u8(static_cast<std::uint8_t>(bits));
    std::uint64_t acc = 0;
    unsigned filled = 0;
    for (auto idx : ct.indices) {
        if (bits < 32 && (idx >> bits) != 0) {
            throw InvalidArgument("index " + std::to_string(idx) + " does not fit in " + std::to_string(bits) +
                                  " bits");
        }
        acc = acc << bits | idx;
        filled += bits;
        while (filled >= 8) {
            filled -= 8;
            out.u8(static_cast<std::uint8_t>(acc >> filled));
        }
        acc &= (std::uint64_t{1} << filled) - 1;
    }
    if (filled > 0) {
        out.u8(static_cast<std::uint8_t>(acc << (8 - filled)));
    }
    return std::move(out).take();
}

inline Ciphertext parse_ciphertext(ByteSpan data) {
    ByteReader in(data);
    const auto magic = in.raw(4);
    if (!std::equal(magic.begin(), magic.end(), kCiphertextMagic.begin())) {
        throw MalformedHeader("not a DNAZ ciphertext (bad magic)");
    }
    if (const auto version = in.u8(); version != kCiphertextVersion) {
        throw MalformedHeader("unsupported ciphertext version " + std::to_string(version));
    }
    const auto flags = in.u8();
    if ((flags & ~(kFlagPacked | kFlagBlock8)) != 0) {
        throw MalformedHeader("unknown ciphertext flags");
    }
    Ciphertext ct;
    ct.width = in.le<std::uint32_t>();
    ct.height = in.le<std::uint32_t>();
    if (ct.width == 0 || ct.height == 0) {
        throw MalformedHeader("ciphertext has a zero dimension");
    }
    ct.seed = in.le<std::uint64_t>();
    const auto fp = in.raw(ct.key_fingerprint.size());
    std::copy(fp.begin(), fp.end(), ct.key_fingerprint.begin());
    ct.scan = (flags & kFlagBlock8) ? ScanMode::block8 : ScanMode::full_frame;

    const std::size_t count = static_cast<std::size_t>(ct.width) * ct.height;
    if (!(flags & kFlagPacked)) {
        if (in.remaining() / 4 < count) {
            throw TruncatedPayload("ciphertext payload shorter than " + std::to_string(count) + " indices");
        }
        ct.indices.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            ct.indices.push_back(in.le<std::uint32_t>());
        }
    } else {
        const unsigned bits = in.u8();
        if (bits == 0 || bits > 32) {
            throw MalformedHeader("packed index width must be 1..32 bits");
        }
        const std::size_t payload_bytes = (count * bits + 7) / 8;
        const auto payload = in.raw(payload_bytes);
        ct.indices.reserve(count);
        std::uint64_t acc = 0;
        unsigned filled = 0;
        std::size_t next = 0;
        for (std::size_t i = 0; i < count; ++i) {
            while (filled < bits) {
                acc = acc << 8 | payload[next++];
                filled += 8;
            }
            filled -= bits;
            ct.indices.push_back(static_cast<std::uint32_t>((acc >> filled) & ((std::uint64_t{1} << bits) - 1)));
            acc &= (std::uint64_t{1} << filled) - 1;
        }
    }
    if (in.remaining() != 0) {
        throw TrailingData("ciphertext has trailing bytes");
    }
    return ct;
}

inline Ciphertext load_ciphertext_file(const std::filesystem::path& path) { return parse_ciphertext(read_file(path)); }

inline void save_ciphertext_file(const std::filesystem::path& path, const Ciphertext& ct,
                                 const WriteOptions& opts = {}) {
    write_file(path, serialize(ct, opts));
}

}  // namespace dnaz
