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

#include <array>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dnaz/analysis.hpp"
#include "dnaz/cipher.hpp"
#include "test_support.hpp"

namespace dnaz {
namespace {

TEST(Draw, FrozenSplitmixValues) {
    // First outputs of splitmix64 seeded with 0 (reference values of the generator).
    EXPECT_EQ(mix64(0 + 0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(mix64(0 + 2 * 0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(draw(0, 0, ~0ULL), 0xE220A8397B1DCDAFULL);
}

TEST(Draw, DeterministicAndInRange) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        EXPECT_EQ(draw(99, i, 81211), draw(99, i, 81211));
        EXPECT_LT(draw(99, i, 81211), 81211u);
        EXPECT_LT(draw(99, i, 4), 4u);
    }
}

TEST(Draw, DecilesRoughlyUniform) {
    constexpr std::uint64_t n = 81211;
    constexpr std::uint64_t samples = 100000;
    std::array<std::uint64_t, 10> deciles{};
    for (std::uint64_t i = 0; i < samples; ++i) {
        ++deciles[draw(20130601, i, n) * 10 / n];
    }
    for (auto count : deciles) {
        const double share = static_cast<double>(count) / samples;
        EXPECT_NEAR(share, 0.10, 0.005);
    }
}

TEST(Draw, ConsecutivePositionsRarelyCollide) {
    constexpr std::uint64_t n = 81211;
    std::uint64_t equal = 0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        equal += draw(7, i, n) == draw(7, i + 1, n);
    }
    // Independent draws would coincide about 100000 / 81211 ~ 1.2 times.
    EXPECT_LE(equal, 10u);
}

TEST(Encrypt, OneByOneWithToyKey) {
    const auto ks = testing::toy_key();
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const auto ct = encrypt(Raster(1, 1, {0x1B}), ks, seed);
        ASSERT_EQ(ct.width, 1u);
        ASSERT_EQ(ct.height, 1u);
        ASSERT_EQ(ct.indices.size(), 1u);
        // Circular first match: starts 1..4 land on 4, the rest wrap to 0.
        const auto start = draw(seed, 0, 8);
        const std::uint32_t expected = (start >= 1 && start <= 4) ? 4 : 0;
        ASSERT_EQ(ct.indices[0], expected);
        ASSERT_EQ(ct.seed, seed);
        ASSERT_EQ(ct.key_fingerprint, ks.fingerprint());
    }
}

TEST(Encrypt, CoverageErrorNamesByte) {
    try {
        encrypt(Raster(1, 1, {0x00}), testing::toy_key(), 1);
        FAIL();
    } catch (const KeyCoverageError& e) {
        EXPECT_EQ(e.byte_value(), 0x00);
    }
}

TEST(Encrypt, Deterministic) {
    std::mt19937_64 rng(41);
    const auto ks = testing::bundled_toy_key();
    const auto img = testing::random_raster(rng, 33, 17);
    EXPECT_EQ(encrypt(img, ks, 1234), encrypt(img, ks, 1234));
}

TEST(Encrypt, ParallelMatchesSequential) {
    std::mt19937_64 rng(43);
    const auto ks = testing::bundled_toy_key();
    const auto img = testing::random_raster(rng, 300, 250);
    EXPECT_EQ(encrypt(img, ks, 9, {.threads = 1}), encrypt(img, ks, 9, {.threads = 7}));
}

TEST(Encrypt, EveryIndexSpellsItsZigzaggedByte) {
    std::mt19937_64 rng(47);
    const auto ks = testing::bundled_toy_key();
    const auto img = testing::random_raster(rng, 20, 13);
    const auto ct = encrypt(img, ks, 5);
    const auto stream = zigzag_order(13, 20).apply(img.pixels);
    for (std::size_t i = 0; i < stream.size(); ++i) {
        ASSERT_LE(ct.indices[i] + 4u, ks.length());
        ASSERT_EQ(ks.sequence().byte_at(ct.indices[i]), stream[i]);
        ASSERT_EQ(ct.indices[i], ks.lookup_from(stream[i], draw(5, i, ks.length())));
    }
}

TEST(Decrypt, ReadsQuadAtIndex) {
    Ciphertext ct;
    ct.width = 1;
    ct.height = 1;
    ct.key_fingerprint = testing::toy_key().fingerprint();
    ct.indices = {4};
    EXPECT_EQ(decrypt(ct, testing::toy_key()), Raster(1, 1, {0x1B}));
}

TEST(Decrypt, KeyMismatch) {
    auto ct = encrypt(Raster(1, 1, {0x1B}), testing::toy_key(), 3);
    EXPECT_THROW(decrypt(ct, testing::bundled_toy_key()), KeyMismatch);
}

TEST(Decrypt, IndexOutOfRange) {
    Ciphertext ct;
    ct.width = 1;
    ct.height = 1;
    ct.key_fingerprint = testing::toy_key().fingerprint();
    ct.indices = {5};
    EXPECT_THROW(decrypt(ct, testing::toy_key()), IndexOutOfRange);
}

TEST(RoundTrip, RandomImagesSeedsAndScans) {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::uint32_t> dim(1, 48);
    const auto ks = testing::bundled_toy_key();
    for (int trial = 0; trial < 60; ++trial) {
        const auto img = testing::random_raster(rng, dim(rng), dim(rng));
        const auto seed = rng();
        ASSERT_EQ(decrypt(encrypt(img, ks, seed), ks), img);
    }
    for (std::uint32_t side : {8u, 16u, 24u}) {
        const auto img = testing::random_raster(rng, side * 2, side);
        const auto ct = encrypt(img, ks, 77, {.scan = ScanMode::block8});
        ASSERT_EQ(ct.scan, ScanMode::block8);
        ASSERT_EQ(decrypt(ct, ks), img);
        ASSERT_EQ(decrypt(parse_ciphertext(serialize(ct)), ks), img);
    }
}

TEST(Differential, OnePixelChangesOneIndexUnderFixedSeed) {
    std::mt19937_64 rng(59);
    const auto ks = testing::bundled_toy_key();
    for (int trial = 0; trial < 20; ++trial) {
        auto img = testing::random_raster(rng, 31, 29);
        const auto a = encrypt(img, ks, 100);
        auto& px = img.pixels[rng() % img.size()];
        px = static_cast<std::uint8_t>(px + 1 + rng() % 255);
        const auto b = encrypt(img, ks, 100);
        ASSERT_DOUBLE_EQ(diff_metric(a, b), 1.0 / img.size());
    }
}

TEST(CiphertextFile, ExactHeaderLayout) {
    const auto ct = encrypt(Raster(2, 1, {0x1B, 0x1B}), testing::toy_key(), 0x0102030405060708ULL);
    const auto bytes = serialize(ct);
    ASSERT_EQ(bytes.size(), 4u + 1 + 1 + 4 + 4 + 8 + 32 + 2 * 4);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "DNAZ");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[5], 0);
    EXPECT_EQ(bytes[6], 2);
    EXPECT_EQ(bytes[10], 1);
    EXPECT_EQ(bytes[14], 0x08);
    EXPECT_EQ(bytes[21], 0x01);
    EXPECT_EQ(to_hex(ByteSpan(bytes).subspan(22, 32)), to_hex(ct.key_fingerprint));
    EXPECT_EQ(bytes[54], ct.indices[0]);
}

TEST(CiphertextFile, PackedIndexWidth) {
    EXPECT_EQ(packed_index_bits(81211), 17u);
    EXPECT_EQ(packed_index_bits(4), 1u);
    EXPECT_EQ(packed_index_bits(8), 3u);   // 5 possible starts
    EXPECT_EQ(packed_index_bits(4099), 12u);  // 4096 starts
    EXPECT_EQ(packed_index_bits(4100), 13u);
}

TEST(CiphertextFile, PackedBitLayout) {
    Ciphertext ct;
    ct.width = 3;
    ct.height = 1;
    ct.indices = {0b101, 0b011, 0b110};
    const auto bytes = serialize(ct, {.packed_bits = 3});
    ASSERT_EQ(bytes.size(), 54u + 1 + 2);
    EXPECT_EQ(bytes[5], kFlagPacked);
    EXPECT_EQ(bytes[54], 3);
    EXPECT_EQ(bytes[55], 0b10101111);
    EXPECT_EQ(bytes[56], 0b00000000);
    EXPECT_EQ(parse_ciphertext(bytes), ct);
    EXPECT_THROW(serialize(ct, {.packed_bits = 2}), InvalidArgument);
}

TEST(CiphertextFile, RoundTripProperty) {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<std::uint32_t> dim(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        Ciphertext ct;
        ct.width = dim(rng);
        ct.height = dim(rng);
        ct.seed = rng();
        ct.scan = ScanMode::full_frame;
        for (auto& b : ct.key_fingerprint) b = static_cast<std::uint8_t>(rng());
        const unsigned bits = 1 + rng() % 32;
        for (std::size_t i = 0; i < std::size_t{ct.width} * ct.height; ++i) {
            ct.indices.push_back(static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << bits) - 1)));
        }
        ASSERT_EQ(parse_ciphertext(serialize(ct)), ct);
        ASSERT_EQ(parse_ciphertext(serialize(ct, {.packed_bits = bits})), ct);
    }
}

TEST(CiphertextFile, MalformedInputs) {
    const auto bytes = serialize(encrypt(Raster(1, 1, {0x1B}), testing::toy_key(), 1));
    auto bad = bytes;
    bad[0] = 'X';
    EXPECT_THROW(parse_ciphertext(bad), MalformedHeader);
    bad = bytes;
    bad[4] = 9;
    EXPECT_THROW(parse_ciphertext(bad), MalformedHeader);
    bad = bytes;
    bad[5] = 0x80;
    EXPECT_THROW(parse_ciphertext(bad), MalformedHeader);
    EXPECT_THROW(parse_ciphertext(ByteSpan(bytes).first(bytes.size() - 1)), TruncatedPayload);
    bad = bytes;
    bad.push_back(0);
    EXPECT_THROW(parse_ciphertext(bad), TrailingData);
}

TEST(Golden, BundledSceneToyKeySeed42) {
    const auto img = load_pgm_file(testing::data_path("scene_a.pgm"));
    const auto ks = testing::bundled_toy_key();
    const auto golden = read_file(testing::data_path("golden_scene_a_toy_seed42.dnaz"));
    const auto ct = encrypt(img, ks, 42);
    EXPECT_EQ(serialize(ct), golden);
    EXPECT_EQ(decrypt(parse_ciphertext(golden), ks), img);
}

}  // namespace
}  // namespace dnaz
