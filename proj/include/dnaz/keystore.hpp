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
 * @file keystore.hpp
 * @brief The shared reference sequence: FASTA ingestion, 2-bit packing,
 *        the 256-bucket 4-mer occurrence index and the DNAK key file.
 *
 * Positions are 0-based and counted in bases. A 4-mer window that touches an
 * ambiguity code (N, R, Y, ...) is never indexed, so every indexed position
 * decodes to exactly the quad it is filed under.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dnaz/bytes.hpp"
#include "dnaz/dna_codec.hpp"
#include "dnaz/error.hpp"
#include "dnaz/sha256.hpp"

namespace dnaz {

/// Half-open run [begin, end) of non-ACGT residues retained from the FASTA input.
struct GapRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    friend bool operator==(const GapRange&, const GapRange&) = default;
};

/// Reference nucleotide sequence packed four bases per byte, first base in the high bits.
class Sequence {
public:
    Sequence() = default;

    Sequence(std::uint64_t length, Bytes packed, std::vector<GapRange> gaps, std::string source_id = {})
        : length_(length), packed_(std::move(packed)), gaps_(std::move(gaps)), source_id_(std::move(source_id)) {
        if (length_ < 4) {
            throw EmptySequence("reference sequence needs at least 4 bases, got " + std::to_string(length_));
        }
        if (length_ > std::numeric_limits<std::uint32_t>::max()) {
            throw InvalidArgument("reference sequence longer than 2^32 - 1 bases");
        }
        if (packed_.size() != packed_size(length_)) {
            throw LengthMismatch("packed buffer size does not match base count");
        }
    }

    /// Builds a sequence from residue letters; ambiguity codes become gaps.
    static Sequence from_string(std::string_view residues, std::string source_id = {});

    static constexpr std::size_t packed_size(std::uint64_t bases) noexcept {
        return static_cast<std::size_t>((bases + 3) / 4);
    }

    std::uint64_t length() const noexcept { return length_; }
    const Bytes& packed() const noexcept { return packed_; }
    const std::vector<GapRange>& gaps() const noexcept { return gaps_; }
    const std::string& source_id() const noexcept { return source_id_; }

    /// Gap positions read back as C (the zero code).
    Nucleotide base_at(std::uint64_t pos) const noexcept {
        const auto shift = 6 - 2 * (pos % 4);
        return nucleotide_from_code(static_cast<std::uint8_t>(packed_[pos / 4] >> shift));
    }

    /// Byte value spelled by the four bases starting at pos.
    std::uint8_t byte_at(std::uint64_t pos) const {
        if (pos + 4 > length_) {
            throw IndexOutOfRange("position " + std::to_string(pos) + " leaves fewer than 4 bases in a " +
                                  std::to_string(length_) + "-base sequence");
        }
        std::uint8_t b = 0;
        for (std::uint64_t k = 0; k < 4; ++k) {
            b = static_cast<std::uint8_t>(b << 2 | code_of(base_at(pos + k)));
        }
        return b;
    }

    bool is_gap(std::uint64_t pos) const noexcept {
        auto it = std::upper_bound(gaps_.begin(), gaps_.end(), pos,
                                   [](std::uint64_t p, const GapRange& g) { return p < g.end; });
        return it != gaps_.end() && it->begin <= pos;
    }

    std::string to_string() const {
        std::string s(length_, 'C');
        for (std::uint64_t i = 0; i < length_; ++i) {
            s[i] = is_gap(i) ? 'N' : to_char(base_at(i));
        }
        return s;
    }

    /// Copy with one (non-gap) base replaced.
    Sequence with_base(std::uint64_t pos, Nucleotide n) const {
        if (pos >= length_ || is_gap(pos)) {
            throw InvalidArgument("cannot substitute base at position " + std::to_string(pos));
        }
        Sequence copy = *this;
        const auto shift = 6 - 2 * (pos % 4);
        auto& byte = copy.packed_[pos / 4];
        byte = static_cast<std::uint8_t>((byte & ~(0b11 << shift)) | (code_of(n) << shift));
        return copy;
    }

    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.length_ == b.length_ && a.packed_ == b.packed_ && a.gaps_ == b.gaps_;
    }

private:
    std::uint64_t length_ = 0;
    Bytes packed_;
    std::vector<GapRange> gaps_;
    std::string source_id_;
};

namespace detail {

constexpr bool is_ambiguity_code(char c) noexcept {
    switch (c) {
        case 'N': case 'R': case 'Y': case 'K': case 'M': case 'S': case 'W':
        case 'B': case 'D': case 'H': case 'V': case 'U': case '-':
            return true;
        default:
            return false;
    }
}

constexpr char upper(char c) noexcept { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

constexpr bool is_blank(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

/// Accumulates residues into packed form while tracking gap runs.
class SequenceBuilder {
public:
    void push(char residue) {
        const char c = upper(residue);
        Nucleotide n = Nucleotide::C;
        if (auto base = nucleotide_from_char(c)) {
            n = *base;
        } else if (is_ambiguity_code(c)) {
            if (!gaps_.empty() && gaps_.back().end == length_) {
                ++gaps_.back().end;
            } else {
                gaps_.push_back({length_, length_ + 1});
            }
        } else {
            throw InvalidResidue("invalid residue '" + std::string(1, residue) + "' at base " +
                                 std::to_string(length_));
        }
        if (length_ % 4 == 0) {
            packed_.push_back(0);
        }
        packed_.back() |= static_cast<std::uint8_t>(code_of(n) << (6 - 2 * (length_ % 4)));
        ++length_;
    }

    std::uint64_t length() const noexcept { return length_; }

    Sequence finish(std::string source_id) && {
        return Sequence(length_, std::move(packed_), std::move(gaps_), std::move(source_id));
    }

private:
    std::uint64_t length_ = 0;
    Bytes packed_;
    std::vector<GapRange> gaps_;
};

}  // namespace detail

inline Sequence Sequence::from_string(std::string_view residues, std::string source_id) {
    detail::SequenceBuilder builder;
    for (char c : residues) {
        if (!detail::is_blank(c)) {
            builder.push(c);
        }
    }
    if (builder.length() == 0) {
        throw EmptySequence("no residues");
    }
    return std::move(builder).finish(std::move(source_id));
}

/// Concatenates every record of a FASTA stream. source_id is the first header line without '>'.
inline Sequence parse_fasta(std::string_view text) {
    detail::SequenceBuilder builder;
    std::string source_id;
    bool seen_header = false;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == ';') {
            continue;
        }
        if (line.front() == '>') {
            if (!seen_header) {
                source_id = std::string(line.substr(1));
                seen_header = true;
            }
            continue;
        }
        if (!seen_header) {
            if (std::all_of(line.begin(), line.end(), detail::is_blank)) {
                continue;
            }
            throw NoHeader("FASTA input must start with a '>' header line");
        }
        for (char c : line) {
            if (!detail::is_blank(c)) {
                builder.push(c);
            }
        }
    }
    if (!seen_header) {
        throw NoHeader("FASTA input has no '>' header line");
    }
    if (builder.length() == 0) {
        throw EmptySequence("FASTA input holds no residues");
    }
    return std::move(builder).finish(std::move(source_id));
}

/// For each of the 256 quads, the sorted start positions where it occurs.
struct KmerIndex {
    std::array<std::vector<std::uint32_t>, 256> positions;

    const std::vector<std::uint32_t>& operator[](std::uint8_t quad_byte) const { return positions[quad_byte]; }
    const std::vector<std::uint32_t>& operator[](const Quad& q) const { return positions[quad_to_byte(q)]; }

    std::size_t total() const noexcept {
        std::size_t n = 0;
        for (const auto& list : positions) {
            n += list.size();
        }
        return n;
    }

    friend bool operator==(const KmerIndex&, const KmerIndex&) = default;
};

inline KmerIndex build_index(const Sequence& seq) {
    KmerIndex index;
    const auto& gaps = seq.gaps();
    auto next_gap = gaps.begin();
    std::uint8_t window = 0;
    std::uint64_t run = 0;  // consecutive non-gap bases ending at the current position

    for (std::uint64_t p = 0; p < seq.length(); ++p) {
        while (next_gap != gaps.end() && next_gap->end <= p) {
            ++next_gap;
        }
        if (next_gap != gaps.end() && next_gap->begin <= p) {
            run = 0;
            continue;
        }
        window = static_cast<std::uint8_t>(window << 2 | code_of(seq.base_at(p)));
        if (++run >= 4) {
            index.positions[window].push_back(static_cast<std::uint32_t>(p - 3));
        }
    }
    return index;
}

/// SHA-256 over (u64le base count || packed bases), plus the gap table when present.
inline Digest fingerprint(const Sequence& seq) {
    ByteWriter prefix;
    prefix.le<std::uint64_t>(seq.length());
    Sha256 h;
    h.update(std::move(prefix).take());
    h.update(seq.packed());
    if (!seq.gaps().empty()) {
        ByteWriter table;
        table.le<std::uint64_t>(seq.gaps().size());
        for (const auto& g : seq.gaps()) {
            table.le<std::uint64_t>(g.begin);
            table.le<std::uint64_t>(g.end);
        }
        h.update(std::move(table).take());
    }
    return h.finish();
}

struct CoverageReport {
    std::size_t min_count = 0;
    std::size_t max_count = 0;
    std::vector<std::uint8_t> missing;  // quads (as byte values) with no occurrence
};

/// The symmetric key: sequence, occurrence index and fingerprint. Immutable once built.
class KeyStore {
public:
    explicit KeyStore(Sequence seq)
        : sequence_(std::move(seq)), index_(build_index(sequence_)), fingerprint_(dnaz::fingerprint(sequence_)) {}

    const Sequence& sequence() const noexcept { return sequence_; }
    const KmerIndex& index() const noexcept { return index_; }
    const Digest& fingerprint() const noexcept { return fingerprint_; }
    std::uint64_t length() const noexcept { return sequence_.length(); }

    bool covers(std::uint8_t quad_byte) const noexcept { return !index_.positions[quad_byte].empty(); }

    /// Smallest indexed position >= start holding the quad, wrapping to the first
    /// occurrence when none lies at or after start.
    std::uint32_t lookup_from(std::uint8_t quad_byte, std::uint64_t start) const {
        const auto& list = index_.positions[quad_byte];
        if (list.empty()) {
            throw KeyCoverageError(quad_byte, "key sequence holds no occurrence of " + byte_to_quad(quad_byte).str() +
                                                  " (byte value " + std::to_string(quad_byte) + ")");
        }
        auto it = std::lower_bound(list.begin(), list.end(), start);
        return it == list.end() ? list.front() : *it;
    }

    CoverageReport coverage() const {
        CoverageReport r;
        r.min_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t q = 0; q < 256; ++q) {
            const auto n = index_.positions[q].size();
            r.min_count = std::min(r.min_count, n);
            r.max_count = std::max(r.max_count, n);
            if (n == 0) {
                r.missing.push_back(static_cast<std::uint8_t>(q));
            }
        }
        return r;
    }

private:
    Sequence sequence_;
    KmerIndex index_;
    Digest fingerprint_;
};

inline std::uint32_t lookup_from(const KeyStore& ks, const Quad& q, std::uint64_t start) {
    if (start >= ks.length()) {
        throw InvalidArgument("lookup start " + std::to_string(start) + " outside sequence of " +
                              std::to_string(ks.length()) + " bases");
    }
    return ks.lookup_from(quad_to_byte(q), start);
}

inline Digest fingerprint(const KeyStore& ks) { return ks.fingerprint(); }

// DNAK key file: magic | version | u64le base count | packed bases | [v2 gap table] | fingerprint.
inline constexpr std::string_view kKeystoreMagic = "DNAK";
inline constexpr std::uint8_t kKeystoreVersion = 0x01;
inline constexpr std::uint8_t kKeystoreVersionWithGaps = 0x02;

inline Bytes save_keystore(const KeyStore& ks) {
    const auto& seq = ks.sequence();
    ByteWriter out;
    out.raw(kKeystoreMagic);
    out.u8(seq.gaps().empty() ? kKeystoreVersion : kKeystoreVersionWithGaps);
    out.le<std::uint64_t>(seq.length());
    out.raw(seq.packed());
    if (!seq.gaps().empty()) {
        out.le<std::uint64_t>(seq.gaps().size());
        for (const auto& g : seq.gaps()) {
            out.le<std::uint64_t>(g.begin);
            out.le<std::uint64_t>(g.end);
        }
    }
    out.raw(ks.fingerprint());
    return std::move(out).take();
}

inline KeyStore load_keystore(ByteSpan data, std::string source_id = {}) {
    ByteReader in(data);
    const auto magic = in.raw(4);
    if (!std::equal(magic.begin(), magic.end(), kKeystoreMagic.begin())) {
        throw MalformedHeader("not a DNAK keystore (bad magic)");
    }
    const auto version = in.u8();
    if (version != kKeystoreVersion && version != kKeystoreVersionWithGaps) {
        throw MalformedHeader("unsupported keystore version " + std::to_string(version));
    }
    const auto length = in.le<std::uint64_t>();
    if (length > std::numeric_limits<std::uint32_t>::max()) {
        throw MalformedHeader("keystore base count out of range");
    }
    const auto packed = in.raw(Sequence::packed_size(length));
    std::vector<GapRange> gaps;
    if (version == kKeystoreVersionWithGaps) {
        const auto count = in.le<std::uint64_t>();
        if (count > in.remaining() / 16) {
            throw TruncatedPayload("keystore gap table truncated");
        }
        std::uint64_t prev_end = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            GapRange g{in.le<std::uint64_t>(), in.le<std::uint64_t>()};
            if (g.begin < prev_end || g.begin >= g.end || g.end > length) {
                throw MalformedHeader("keystore gap table is not sorted and in range");
            }
            prev_end = g.end;
            gaps.push_back(g);
        }
    }
    Digest stored{};
    const auto fp = in.raw(stored.size());
    std::copy(fp.begin(), fp.end(), stored.begin());
    if (in.remaining() != 0) {
        throw TrailingData("keystore file has trailing bytes");
    }
    KeyStore ks(Sequence(length, Bytes(packed.begin(), packed.end()), std::move(gaps), std::move(source_id)));
    if (ks.fingerprint() != stored) {
        throw FormatError("keystore fingerprint does not match its contents (corrupt file)");
    }
    return ks;
}

inline KeyStore load_keystore_file(const std::filesystem::path& path) {
    return load_keystore(read_file(path), path.filename().string());
}

/// Accepts either a DNAK key file or FASTA text.
inline KeyStore load_key_any(const std::filesystem::path& path) {
    const Bytes raw = read_file(path);
    if (raw.size() >= 4 && std::equal(kKeystoreMagic.begin(), kKeystoreMagic.end(), raw.begin())) {
        return load_keystore(raw, path.filename().string());
    }
    return KeyStore(parse_fasta(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size())));
}

}  // namespace dnaz
