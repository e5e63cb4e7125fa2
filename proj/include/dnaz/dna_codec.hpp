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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dnaz/error.hpp"

namespace dnaz {

// DNA digital coding: C=00, A=01, T=10, G=11. Complementary bases are
// bitwise complements of each other (A/T = 01/10, C/G = 00/11).
enum class Nucleotide : std::uint8_t { C = 0b00, A = 0b01, T = 0b10, G = 0b11 };

constexpr std::uint8_t code_of(Nucleotide n) noexcept { return static_cast<std::uint8_t>(n); }

constexpr Nucleotide nucleotide_from_code(std::uint8_t two_bits) noexcept {
    return static_cast<Nucleotide>(two_bits & 0b11);
}

constexpr char to_char(Nucleotide n) noexcept {
    constexpr std::array<char, 4> alphabet{'C', 'A', 'T', 'G'};
    return alphabet[code_of(n)];
}

/// Maps an (upper- or lowercase) base letter to its nucleotide; anything else yields nullopt.
constexpr std::optional<Nucleotide> nucleotide_from_char(char c) noexcept {
    switch (c) {
        case 'C': case 'c': return Nucleotide::C;
        case 'A': case 'a': return Nucleotide::A;
        case 'T': case 't': return Nucleotide::T;
        case 'G': case 'g': return Nucleotide::G;
        default: return std::nullopt;
    }
}

// Watson-Crick pairing: A-T, C-G.
constexpr Nucleotide complement(Nucleotide n) noexcept {
    return nucleotide_from_code(static_cast<std::uint8_t>(~code_of(n)));
}

/// Four nucleotides encoding one byte; bases[0] carries the most significant bit pair.
struct Quad {
    std::array<Nucleotide, 4> bases{};

    constexpr Nucleotide operator[](std::size_t i) const noexcept { return bases[i]; }

    std::string str() const {
        return {to_char(bases[0]), to_char(bases[1]), to_char(bases[2]), to_char(bases[3])};
    }

    static Quad parse(std::string_view text) {
        if (text.size() != 4) {
            throw InvalidArgument("a quad is exactly four bases, got '" + std::string(text) + "'");
        }
        Quad q;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto n = nucleotide_from_char(text[i]);
            if (!n) {
                throw InvalidArgument("invalid base '" + std::string(1, text[i]) + "' in quad");
            }
            q.bases[i] = *n;
        }
        return q;
    }

    friend constexpr bool operator==(const Quad&, const Quad&) = default;
};

constexpr Quad byte_to_quad(std::uint8_t b) noexcept {
    return Quad{{nucleotide_from_code(b >> 6), nucleotide_from_code(b >> 4), nucleotide_from_code(b >> 2),
                 nucleotide_from_code(b)}};
}

constexpr std::uint8_t quad_to_byte(const Quad& q) noexcept {
    return static_cast<std::uint8_t>(code_of(q[0]) << 6 | code_of(q[1]) << 4 | code_of(q[2]) << 2 | code_of(q[3]));
}

constexpr Quad complement(const Quad& q) noexcept {
    return Quad{{complement(q[0]), complement(q[1]), complement(q[2]), complement(q[3])}};
}

}  // namespace dnaz
