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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dnaz/analysis.hpp"
#include "dnaz/report.hpp"
#include "test_support.hpp"

namespace dnaz {
namespace {

// Oracle: two-pass covariance / (sigma_x sigma_y) with centred data.
double textbook_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    return cov / std::sqrt(vx * vy);
}

TEST(Histogram, Examples) {
    const auto h = histogram(Bytes{0, 0, 0, 0});
    EXPECT_EQ(h.bins[0], 4u);
    EXPECT_EQ(h.total, 4u);
    for (int v = 1; v < 256; ++v) EXPECT_EQ(h.bins[v], 0u);

    const auto g = histogram(Bytes{0, 1, 2, 3});
    for (int v = 0; v < 4; ++v) EXPECT_EQ(g.bins[v], 1u);
}

TEST(Histogram, TotalsMatchInputLength) {
    std::mt19937_64 rng(2);
    const auto img = testing::random_raster(rng, 37, 11);
    const auto h = histogram(img);
    std::uint64_t sum = 0;
    for (auto b : h.bins) sum += b;
    EXPECT_EQ(sum, img.size());
    EXPECT_EQ(h.total, img.size());
}

TEST(Pearson, Examples) {
    EXPECT_DOUBLE_EQ(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), 1.0);
    EXPECT_DOUBLE_EQ(pearson(std::vector<double>{0, 1}, std::vector<double>{1, 0}), -1.0);
    // n=4: Sx=10 Sy=15 Sxy=41 Sxx=30 Syy=61 -> 14 / sqrt(20 * 19)
    EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 4, 5, 4}), 14.0 / std::sqrt(380.0),
                1e-15);
    EXPECT_NEAR(14.0 / std::sqrt(380.0), 0.71818, 5e-6);
}

TEST(Pearson, Errors) {
    EXPECT_THROW(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DegenerateInput);
    EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), LengthMismatch);
    EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), TooSmall);
}

TEST(Pearson, MatchesTextbookOracleAndIsBounded) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<std::size_t> len(2, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = len(rng);
        std::vector<double> x(n), y(n);
        const bool correlated = trial % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = byte(rng);
            y[i] = correlated ? std::min(255, static_cast<int>(x[i]) + byte(rng) / 8) : byte(rng);
        }
        double r;
        try {
            r = pearson(x, y);
        } catch (const DegenerateInput&) {
            continue;
        }
        ASSERT_NEAR(r, textbook_pearson(x, y), 1e-12);
        ASSERT_LE(std::abs(r), 1.0 + 1e-9);
    }
}

TEST(AdjacentPairs, TwoByTwo) {
    // [[a,b],[c,d]] = [[1,2],[3,4]]
    const Raster img(2, 2, {1, 2, 3, 4});
    const auto row = adjacent_pairs(img, Direction::row);
    EXPECT_EQ(row.x, (std::vector<double>{1, 3}));
    EXPECT_EQ(row.y, (std::vector<double>{2, 4}));
    const auto col = adjacent_pairs(img, Direction::col);
    EXPECT_EQ(col.x, (std::vector<double>{1, 2}));
    EXPECT_EQ(col.y, (std::vector<double>{3, 4}));
    const auto diag = adjacent_pairs(img, Direction::diag);
    EXPECT_EQ(diag.x, (std::vector<double>{1}));
    EXPECT_EQ(diag.y, (std::vector<double>{4}));
}

TEST(AdjacentPairs, Counts) {
    std::mt19937_64 rng(6);
    const auto img = testing::random_raster(rng, 7, 5);
    EXPECT_EQ(adjacent_pairs(img, Direction::row).x.size(), 5u * 6);
    EXPECT_EQ(adjacent_pairs(img, Direction::col).x.size(), 4u * 7);
    EXPECT_EQ(adjacent_pairs(img, Direction::diag).x.size(), 4u * 6);
}

TEST(AdjacentPairs, TooSmall) {
    EXPECT_THROW(adjacent_pairs(Raster(1, 3, {1, 2, 3}), Direction::row), TooSmall);
    EXPECT_THROW(adjacent_pairs(Raster(3, 1, {1, 2, 3}), Direction::col), TooSmall);
    EXPECT_NO_THROW(adjacent_pairs(Raster(3, 1, {1, 2, 3}), Direction::row));
    EXPECT_THROW(correlation_report(Raster(3, 1, {1, 2, 3})), TooSmall);
}

TEST(CorrelationReport, HorizontalGradient) {
    Bytes px;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 256; ++j) px.push_back(static_cast<std::uint8_t>(j));
    const auto report = correlation_report(Raster(256, 16, px));
    ASSERT_TRUE(report.row.r);
    EXPECT_NEAR(*report.row.r, 1.0, 1e-12);
    ASSERT_TRUE(report.col.r);
    EXPECT_NEAR(*report.col.r, 1.0, 1e-12);  // rows are identical
    EXPECT_EQ(report.row.n_pairs, 16u * 255);
}

TEST(CorrelationReport, ConstantPlaneIsNotApplicable) {
    const auto report = correlation_report(Raster::filled(4, 4, 9));
    EXPECT_FALSE(report.row.r);
    EXPECT_FALSE(report.col.r);
    EXPECT_FALSE(report.diag.r);
}

TEST(CorrelationReport, BundledSceneVersusCiphertext) {
    const auto img = load_pgm_file(testing::data_path("scene_a.pgm"));
    const auto plain = correlation_report(img);
    EXPECT_GT(*plain.row.r, 0.7);
    EXPECT_GT(*plain.col.r, 0.7);
    const auto ks = testing::bundled_toy_key();
    const auto cipher = correlation_report(cipher_view(encrypt(img, ks, 42)));
    for (auto d : {Direction::row, Direction::col, Direction::diag}) {
        ASSERT_TRUE(cipher[d].r);
        EXPECT_LT(std::abs(*cipher[d].r), 0.1) << to_string(d);
    }
}

TEST(XorMask, Examples) {
    const Raster c(2, 2, {1, 2, 3, 4});
    EXPECT_EQ(xor_mask(c, c), Raster::filled(2, 2, 0));
    EXPECT_EQ(xor_mask(Raster::filled(3, 1, 0xAA), Raster::filled(3, 1, 0x55)), Raster::filled(3, 1, 0xFF));
    EXPECT_THROW(xor_mask(c, Raster::filled(1, 4, 0)), DimensionMismatch);
}

TEST(XorMask, InvolutionProperty) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testing::random_raster(rng, 19, 23);
        const auto c1 = testing::random_raster(rng, 19, 23);
        ASSERT_EQ(xor_mask(xor_mask(c, c1), c1), c);
    }
}

TEST(MaskAttack, ClosesOnItsOwnPair) {
    std::mt19937_64 rng(10);
    const auto ks = testing::bundled_toy_key();
    const auto c = testing::random_raster(rng, 32, 32);
    const auto c1 = cipher_view(encrypt(c, ks, 1));
    const auto result = mask_attack(xor_mask(c, c1), c1, c);
    EXPECT_EQ(result.verdict, Verdict::broken);
    EXPECT_DOUBLE_EQ(result.match_fraction, 1.0);
}

TEST(MaskAttack, IndependentImageResists) {
    const auto ks = testing::bundled_toy_key();
    const auto c = load_pgm_file(testing::data_path("scene_a.pgm"));
    const auto z = load_pgm_file(testing::data_path("scene_b.pgm"));
    const auto m = xor_mask(c, cipher_view(encrypt(c, ks, 11)));
    const auto result = mask_attack(m, cipher_view(encrypt(z, ks, 12)), z);
    EXPECT_EQ(result.verdict, Verdict::resisted);
    EXPECT_LE(result.match_fraction, 0.05);
}

TEST(MaskAttack, DimensionMismatch) {
    EXPECT_THROW(mask_attack(Raster::filled(2, 2, 0), Raster::filled(2, 2, 0), Raster::filled(4, 1, 0)),
                 DimensionMismatch);
}

TEST(DiffMetric, Examples) {
    const KeyStore ks(parse_fasta(read_text_file(testing::data_path("reference_surrogate.fa"))));
    const auto img = load_pgm_file(testing::data_path("scene_a.pgm"));
    const auto a = encrypt(img, ks, 1);
    EXPECT_EQ(diff_metric(a, a), 0.0);
    EXPECT_GT(diff_metric(a, encrypt(img, ks, 2)), 0.9);
    auto small = a;
    small.width = 1;
    EXPECT_THROW(diff_metric(a, small), DimensionMismatch);
}

TEST(CipherView, SelectsIndexByte) {
    Ciphertext ct;
    ct.width = 2;
    ct.height = 1;
    ct.indices = {0x04030201, 0x08070605};
    EXPECT_EQ(cipher_view(ct, 0).pixels, (Bytes{0x01, 0x05}));
    EXPECT_EQ(cipher_view(ct, 3).pixels, (Bytes{0x04, 0x08}));
    EXPECT_THROW(cipher_view(ct, 4), InvalidArgument);
}

TEST(Report, JsonAndText) {
    const Raster img(2, 2, {1, 2, 3, 5});
    const auto report = analyze_raster(img);
    const auto j = to_json(report);
    EXPECT_EQ(j["source"], "image");
    EXPECT_TRUE(j["plane"].is_null());
    EXPECT_EQ(j["histogram"]["total"], 4);
    EXPECT_EQ(j["histogram"]["bins"].size(), 256u);
    EXPECT_EQ(j["correlation"]["diag"]["n_pairs"], 1);
    EXPECT_TRUE(j["correlation"]["diag"]["r"].is_null());
    const auto text = to_text(report);
    EXPECT_NE(text.find("row"), std::string::npos);
    EXPECT_NE(text.find("occupied 4/256"), std::string::npos);

    const auto csv = histogram_csv(report.hist);
    EXPECT_EQ(csv.rfind("value,count\n0,0\n1,1\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 257);

    Ciphertext ct;
    ct.width = 1;
    ct.height = 1;
    ct.indices = {7};
    const auto cj = to_json(analyze_ciphertext(ct, 2));
    EXPECT_EQ(cj["plane"], 2);
    EXPECT_TRUE(cj["correlation"].is_null());
}

}  // namespace
}  // namespace dnaz
