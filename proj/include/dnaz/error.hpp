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
#include <stdexcept>
#include <string>

namespace dnaz {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file or byte stream does not follow its declared format.
class FormatError : public Error {
public:
    using Error::Error;
};

class MalformedHeader : public FormatError {
public:
    using FormatError::FormatError;
};

class TruncatedPayload : public FormatError {
public:
    using FormatError::FormatError;
};

class TrailingData : public FormatError {
public:
    using FormatError::FormatError;
};

class UnsupportedMaxval : public FormatError {
public:
    using FormatError::FormatError;
};

// FASTA ingestion
class NoHeader : public FormatError {
public:
    using FormatError::FormatError;
};

class EmptySequence : public FormatError {
public:
    using FormatError::FormatError;
};

class InvalidResidue : public FormatError {
public:
    using FormatError::FormatError;
};

/// A caller-side precondition was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ZeroDimension : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class LengthMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class TooSmall : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DegenerateInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The key sequence holds no occurrence of the quad for some plaintext byte.
class KeyCoverageError : public Error {
public:
    KeyCoverageError(std::uint8_t byte_value, const std::string& what)
        : Error(what), byte_value_(byte_value) {}

    std::uint8_t byte_value() const noexcept { return byte_value_; }

private:
    std::uint8_t byte_value_;
};

/// Ciphertext was produced under a different key sequence.
class KeyMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// GenBank fetch
class NetworkError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class RateLimited : public Error {
public:
    using Error::Error;
};

}  // namespace dnaz
