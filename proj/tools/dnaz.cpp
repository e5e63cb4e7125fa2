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

// dnaz command-line front end.
//
// Exit status: 0 success, 1 the attack command broke the cipher, 2 usage or I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "dnaz/dnaz.hpp"
#include "dnaz/genbank_client.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBroken = 1;
constexpr int kExitError = 2;

bool is_ciphertext(const std::filesystem::path& path) {
    const auto head = dnaz::read_file(path);
    return head.size() >= 4 && std::equal(dnaz::kCiphertextMagic.begin(), dnaz::kCiphertextMagic.end(), head.begin());
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_index(const std::string& fasta_path, const std::string& out_path) {
    const dnaz::KeyStore ks(dnaz::parse_fasta(dnaz::read_text_file(fasta_path)));
    dnaz::write_file(out_path, dnaz::save_keystore(ks));
    const auto cov = ks.coverage();
    std::cout << "source       " << ks.sequence().source_id() << "\n"
              << "bases        " << ks.length() << "\n"
              << "gaps         " << ks.sequence().gaps().size() << " runs\n"
              << "fingerprint  " << dnaz::to_hex(ks.fingerprint()) << "\n"
              << "occurrences  min " << cov.min_count << "  max " << cov.max_count << "\n"
              << "missing      " << cov.missing.size() << " quads";
    for (auto q : cov.missing) {
        std::cout << (q == cov.missing.front() ? ": " : " ") << dnaz::byte_to_quad(q).str();
    }
    std::cout << "\nwrote " << out_path << "\n";
    return kExitOk;
}

int cmd_encrypt(const std::string& image_path, const std::string& key_path, const std::string& out_path,
                std::optional<std::uint64_t> seed, bool pack, std::optional<unsigned> block) {
    const auto img = dnaz::load_pgm_file(image_path);
    const auto ks = dnaz::load_key_any(key_path);
    dnaz::EncryptOptions opts;
    if (block) {
        opts.scan = dnaz::ScanMode::block8;
    }
    const auto used_seed = seed.value_or(entropy_seed());
    const auto ct = dnaz::encrypt(img, ks, used_seed, opts);
    dnaz::WriteOptions wopts;
    if (pack) {
        wopts.packed_bits = dnaz::packed_index_bits(ks.length());
    }
    dnaz::save_ciphertext_file(out_path, ct, wopts);
    std::cout << "encrypted " << img.width << "x" << img.height << " seed " << used_seed << " -> " << out_path << "\n";
    return kExitOk;
}

int cmd_decrypt(const std::string& ct_path, const std::string& key_path, const std::string& out_path) {
    const auto ct = dnaz::load_ciphertext_file(ct_path);
    const auto ks = dnaz::load_key_any(key_path);
    dnaz::save_pgm_file(out_path, dnaz::decrypt(ct, ks));
    std::cout << "decrypted " << ct.width << "x" << ct.height << " -> " << out_path << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& input, unsigned plane, bool json, const std::string& csv_path) {
    const auto report = is_ciphertext(input) ? dnaz::analyze_ciphertext(dnaz::load_ciphertext_file(input), plane)
                                             : dnaz::analyze_raster(dnaz::load_pgm_file(input));
    if (json) {
        std::cout << dnaz::to_json(report).dump(2) << "\n";
    } else {
        std::cout << dnaz::to_text(report);
    }
    if (!csv_path.empty()) {
        dnaz::write_file(csv_path, dnaz::histogram_csv(report.hist));
    }
    return kExitOk;
}

int cmd_attack(const std::string& plain1, const std::string& cipher1, const std::string& plain2,
               const std::string& cipher2, bool json) {
    const auto c = dnaz::load_pgm_file(plain1);
    const auto c1 = dnaz::cipher_view(dnaz::load_ciphertext_file(cipher1));
    const auto z = dnaz::load_pgm_file(plain2);
    const auto z1 = dnaz::cipher_view(dnaz::load_ciphertext_file(cipher2));
    const auto result = dnaz::mask_attack(dnaz::xor_mask(c, c1), z1, z);
    if (json) {
        std::cout << dnaz::to_json(result).dump(2) << "\n";
    } else {
        std::cout << dnaz::to_string(result.verdict) << " match_fraction " << result.match_fraction << "\n";
    }
    return result.verdict == dnaz::Verdict::broken ? kExitBroken : kExitOk;
}

int cmd_diff(const std::string& a, const std::string& b) {
    const double d = dnaz::diff_metric(dnaz::load_ciphertext_file(a), dnaz::load_ciphertext_file(b));
    std::cout << d << "\n";
    return kExitOk;
}

int cmd_fetch(const std::string& accession, const std::string& out_path, const std::string& endpoint,
              double timeout) {
    dnaz::FetchRequest req;
    req.accession = accession;
    req.timeout_seconds = timeout;
    if (!endpoint.empty()) {
        req.endpoint_base = endpoint;
    }
    const auto body = dnaz::fetch_accession(req);
    if (out_path.empty()) {
        std::cout << body;
    } else {
        dnaz::write_file(out_path, body);
        std::cerr << "wrote " << out_path << " (" << dnaz::parse_fasta(body).length() << " bases)\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNA-coding + zigzag substitution image cipher and its security battery"};
    app.name("dnaz");
    app.require_subcommand(1);

    std::string a, b, c, d, key, out, csv, endpoint;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> block;
    bool pack = false, json = false;
    unsigned plane = 0;
    double timeout = 30.0;

    auto* index = app.add_subcommand("index", "Pack a FASTA reference into a DNAK keystore and report coverage");
    index->add_option("fasta", a, "Input FASTA")->required();
    index->add_option("keystore", b, "Output keystore path")->required();

    auto* enc = app.add_subcommand("encrypt", "Encrypt a P5 PGM image");
    enc->add_option("image", a, "Input image (binary PGM)")->required();
    enc->add_option("-k,--key", key, "Keystore or FASTA")->required();
    enc->add_option("-o,--out", out, "Output ciphertext")->required();
    enc->add_option("--seed", seed, "Draw-stream seed (default: OS entropy)");
    enc->add_flag("--pack", pack, "Bit-pack indices to ceil(log2(n-3)) bits");
    enc->add_option("--block", block, "Zigzag per NxN tile instead of full frame")->check(CLI::IsMember({8u}));

    auto* dec = app.add_subcommand("decrypt", "Decrypt a DNAZ ciphertext");
    dec->add_option("ciphertext", a, "Input ciphertext")->required();
    dec->add_option("-k,--key", key, "Keystore or FASTA")->required();
    dec->add_option("-o,--out", out, "Output image (binary PGM)")->required();

    auto* ana = app.add_subcommand("analyze", "Histogram and adjacent-pixel correlation of an image or ciphertext");
    ana->add_option("input", a, "PGM image or DNAZ ciphertext")->required();
    ana->add_option("--plane", plane, "Ciphertext index byte to analyse (0 = LSB)")->check(CLI::Range(0u, 3u));
    ana->add_flag("--json", json, "Emit JSON instead of text");
    ana->add_option("--hist-csv", csv, "Also write the histogram as CSV");

    auto* atk = app.add_subcommand("attack", "XOR-mask chosen/known-plaintext attack");
    atk->add_option("plain1", a, "Known plaintext image")->required();
    atk->add_option("cipher1", b, "Its ciphertext")->required();
    atk->add_option("plain2", c, "Target plaintext (ground truth)")->required();
    atk->add_option("cipher2", d, "Target ciphertext")->required();
    atk->add_flag("--json", json, "Emit JSON instead of text");

    auto* dif = app.add_subcommand("diff", "Fraction of differing indices between two ciphertexts");
    dif->add_option("a", a)->required();
    dif->add_option("b", b)->required();

    auto* fet = app.add_subcommand("fetch", "Download a nucleotide record as FASTA from NCBI E-utilities");
    fet->add_option("accession", a, "Accession, e.g. NZ_AFQN01000062.1")->required();
    fet->add_option("-o,--out", out, "Output file (default: stdout)");
    fet->add_option("--endpoint", endpoint, "E-utilities base URL (default: $DNAZ_EUTILS_BASE or NCBI)");
    fet->add_option("--timeout", timeout, "Timeout in seconds")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*index) return cmd_index(a, b);
        if (*enc) return cmd_encrypt(a, key, out, seed, pack, block);
        if (*dec) return cmd_decrypt(a, key, out);
        if (*ana) return cmd_analyze(a, plane, json, csv);
        if (*atk) return cmd_attack(a, b, c, d, json);
        if (*dif) return cmd_diff(a, b);
        if (*fet) return cmd_fetch(a, out, endpoint, timeout);
    } catch (const std::exception& e) {
        std::cerr << "dnaz: error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
