/*
 * Copyright (C) 2026 The Caseforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace caseforge {

using Bytes = std::vector<uint8_t>;

// Error vocabulary shared by every component. Wire-level failures (FAIL
// responses) are data, not exceptions; these codes cover local contract
// violations and parse failures.
enum class Errc {
    // framing
    PayloadTooLarge,
    BadLengthHeader,
    Truncated,
    MissingTerminator,
    // networking
    NetworkError,
    ChannelUnavailable,
    // device simulator
    SignatureCheckActive,
    // acquisition
    WipeGuardTriggered,
    WrongKey,
    BootRefused,
    TransferFailed,
    StreamTruncated,
    HashMismatch,
    UnknownPartition,
    // evidence archive + search
    BadMagic,
    TruncatedEntry,
    DuplicatePath,
    NotFound,
    IsDirectory,
    EmptyPattern,
    // artifact parsers
    MalformedXml,
    DuplicateKey,
    BadHeader,
    UnsupportedEncoding,
    OverflowPageUnsupported,
    CorruptPage,
    UnsupportedFeature,
    // app scan
    NoDataDirectory,
    // accounts
    MissingAccountsTable,
    SchemaMismatch,
    // heap analysis
    UnsupportedIdSize,
    UnknownHeapSubRecord,
    DanglingReference,
    UnknownId,
    Unreachable,
    ParseError,
    UnknownField,
    TypeMismatch,
    // reporting / case handling
    MissingJustification,
    EmptyCase,
    EvidenceExists,
    StageOrder,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::PayloadTooLarge: return "PayloadTooLarge";
        case Errc::BadLengthHeader: return "BadLengthHeader";
        case Errc::Truncated: return "Truncated";
        case Errc::MissingTerminator: return "MissingTerminator";
        case Errc::NetworkError: return "NetworkError";
        case Errc::ChannelUnavailable: return "ChannelUnavailable";
        case Errc::SignatureCheckActive: return "SignatureCheckActive";
        case Errc::WipeGuardTriggered: return "WipeGuardTriggered";
        case Errc::WrongKey: return "WrongKey";
        case Errc::BootRefused: return "BootRefused";
        case Errc::TransferFailed: return "TransferFailed";
        case Errc::StreamTruncated: return "StreamTruncated";
        case Errc::HashMismatch: return "HashMismatch";
        case Errc::UnknownPartition: return "UnknownPartition";
        case Errc::BadMagic: return "BadMagic";
        case Errc::TruncatedEntry: return "TruncatedEntry";
        case Errc::DuplicatePath: return "DuplicatePath";
        case Errc::NotFound: return "NotFound";
        case Errc::IsDirectory: return "IsDirectory";
        case Errc::EmptyPattern: return "EmptyPattern";
        case Errc::MalformedXml: return "MalformedXml";
        case Errc::DuplicateKey: return "DuplicateKey";
        case Errc::BadHeader: return "BadHeader";
        case Errc::UnsupportedEncoding: return "UnsupportedEncoding";
        case Errc::OverflowPageUnsupported: return "OverflowPageUnsupported";
        case Errc::CorruptPage: return "CorruptPage";
        case Errc::UnsupportedFeature: return "UnsupportedFeature";
        case Errc::NoDataDirectory: return "NoDataDirectory";
        case Errc::MissingAccountsTable: return "MissingAccountsTable";
        case Errc::SchemaMismatch: return "SchemaMismatch";
        case Errc::UnsupportedIdSize: return "UnsupportedIdSize";
        case Errc::UnknownHeapSubRecord: return "UnknownHeapSubRecord";
        case Errc::DanglingReference: return "DanglingReference";
        case Errc::UnknownId: return "UnknownId";
        case Errc::Unreachable: return "Unreachable";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownField: return "UnknownField";
        case Errc::TypeMismatch: return "TypeMismatch";
        case Errc::MissingJustification: return "MissingJustification";
        case Errc::EmptyCase: return "EmptyCase";
        case Errc::EvidenceExists: return "EvidenceExists";
        case Errc::StageOrder: return "StageOrder";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline std::string strf(const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    va_list ap2;
    va_copy(ap2, ap);
    int n = std::vsnprintf(nullptr, 0, fmt, ap);
    va_end(ap);
    std::string out(n > 0 ? static_cast<size_t>(n) : 0, '\0');
    if (n > 0) std::vsnprintf(out.data(), out.size() + 1, fmt, ap2);
    va_end(ap2);
    return out;
}

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(const Bytes& b) {
    return std::string(b.begin(), b.end());
}

inline std::string to_hex(const uint8_t* data, size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 2);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0F]);
    }
    return out;
}

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

inline int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline std::optional<Bytes> from_hex(std::string_view s) {
    if (s.size() % 2 != 0) return std::nullopt;
    Bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = hex_digit(s[i]);
        int lo = hex_digit(s[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Seconds-since-epoch source, injectable so simulator logs and ledgers can be
// reproduced byte for byte in tests.
using Clock = std::function<int64_t()>;

inline Clock fixed_clock(int64_t t) {
    return [t]() { return t; };
}

// Counter clock: first call returns start, each subsequent call start+1, ...
inline Clock counter_clock(int64_t start) {
    auto n = std::make_shared<int64_t>(0);
    return [start, n]() { return start + (*n)++; };
}

}  // namespace caseforge
