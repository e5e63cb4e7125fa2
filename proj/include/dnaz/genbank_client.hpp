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
 * @file genbank_client.hpp
 * @brief Fetches a nucleotide record as FASTA from NCBI E-utilities (efetch).
 *
 * The endpoint base defaults to the public service and can be pointed at a
 * mirror or a local stub via FetchRequest::endpoint_base or DNAZ_EUTILS_BASE.
 */

#pragma once

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <string>

#include <httplib.h>

#include "dnaz/error.hpp"

namespace dnaz {

inline constexpr const char* kDefaultEutilsBase = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils";
inline constexpr const char* kEutilsEnvVar = "DNAZ_EUTILS_BASE";

/// DNAZ_EUTILS_BASE when set and non-empty, the public endpoint otherwise.
inline std::string default_endpoint_base() {
    const char* env = std::getenv(kEutilsEnvVar);
    return (env && *env) ? std::string(env) : std::string(kDefaultEutilsBase);
}

struct FetchRequest {
    std::string accession;
    double timeout_seconds = 30.0;
    std::string endpoint_base = default_endpoint_base();
};

namespace detail {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // path prefix without trailing '/'
};

inline SplitUrl split_url(const std::string& base) {
    const auto scheme_end = base.find("://");
    if (scheme_end == std::string::npos) {
        throw InvalidArgument("endpoint base '" + base + "' lacks a scheme");
    }
    const auto path_begin = base.find('/', scheme_end + 3);
    SplitUrl out;
    out.origin = base.substr(0, path_begin);
    out.path = path_begin == std::string::npos ? "" : base.substr(path_begin);
    while (!out.path.empty() && out.path.back() == '/') {
        out.path.pop_back();
    }
    return out;
}

inline std::string percent_encode(const std::string& s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

}  // namespace detail

/// Path and query of the efetch call for an accession.
inline std::string efetch_target(const std::string& path_prefix, const std::string& accession) {
    return path_prefix + "/efetch.fcgi?db=nuccore&id=" + detail::percent_encode(accession) +
           "&rettype=fasta&retmode=text";
}

/// Blocking GET; returns the FASTA body untouched.
inline std::string fetch_accession(const FetchRequest& req) {
    if (req.accession.empty()) {
        throw InvalidArgument("accession must not be empty");
    }
    if (!(req.timeout_seconds > 0)) {
        throw InvalidArgument("timeout must be positive");
    }
    const auto url = detail::split_url(req.endpoint_base);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.origin.rfind("https://", 0) == 0) {
        throw NetworkError("this build has no TLS support; cannot reach " + url.origin);
    }
#endif
    httplib::Client client(url.origin);
    const auto timeout = std::chrono::duration<double>(req.timeout_seconds);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_follow_location(true);

    const auto res = client.Get(efetch_target(url.path, req.accession));
    if (!res) {
        throw NetworkError("request to " + url.origin + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status == 429) {
        throw RateLimited("E-utilities rate limit hit (HTTP 429); retry with backoff");
    }
    if (res->status >= 500) {
        throw NetworkError("E-utilities server error (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status != 200) {
        throw NotFound("accession '" + req.accession + "' not retrievable (HTTP " + std::to_string(res->status) + ")");
    }
    const auto first = res->body.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || res->body[first] != '>') {
        throw NotFound("accession '" + req.accession + "' returned no FASTA record");
    }
    return res->body;
}

}  // namespace dnaz
