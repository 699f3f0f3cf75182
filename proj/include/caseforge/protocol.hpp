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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

#include "caseforge/common.hpp"

// Wire protocol shared by the device simulator and the acquisition client.
//
// Framing (both channels): a frame is 4 ASCII hex digits giving the payload
// length, followed by exactly that many payload bytes. The encoder emits
// uppercase digits; the decoder accepts either case. The zero-length frame
// "0000" terminates a stream and carries no payload.
//
// Service channel (ADB-host style), one request per connection:
//   client -> server: one framed request, one of
//       getprop:<name> | shell:<cmd> | forward:<device-path> | logcat
//   server -> client: one framed status reply, "OKAY"[<text>] or "FAIL"<reason>;
//       for shell/forward/logcat an OKAY reply is followed by a framed byte
//       stream terminated by "0000". getprop carries its value in the OKAY
//       frame itself.
//
// Fastboot channel, persistent connection:
//   client -> server: framed command text ("getvar:product", "oem unlock", ...)
//   server -> client: framed reply whose payload is a 4-byte status
//       (OKAY/FAIL/INFO/DATA) followed by UTF-8 body text. A DATA reply's body
//       is 8 hex digits giving the byte count the client must then send raw
//       (unframed); the server answers that transfer with another status frame.

namespace caseforge::protocol {

constexpr size_t kMaxFramePayload = 65535;

inline Bytes encode_frame(const uint8_t* payload, size_t n) {
    if (n > kMaxFramePayload)
        fail(Errc::PayloadTooLarge, strf("frame payload of %zu bytes exceeds 65535", n));
    static const char* digits = "0123456789ABCDEF";
    Bytes out;
    out.reserve(4 + n);
    out.push_back(digits[(n >> 12) & 0xF]);
    out.push_back(digits[(n >> 8) & 0xF]);
    out.push_back(digits[(n >> 4) & 0xF]);
    out.push_back(digits[n & 0xF]);
    out.insert(out.end(), payload, payload + n);
    return out;
}

inline Bytes encode_frame(const Bytes& payload) {
    return encode_frame(payload.data(), payload.size());
}

inline Bytes encode_frame(std::string_view payload) {
    return encode_frame(reinterpret_cast<const uint8_t*>(payload.data()), payload.size());
}

struct DecodedFrame {
    Bytes payload;
    size_t consumed = 0;  // 4 + payload length
    bool terminator() const { return payload.empty(); }
};

// Decodes one frame from in[offset..]. Requires the full frame to be present.
inline DecodedFrame decode_frame(const Bytes& in, size_t offset = 0) {
    if (offset > in.size() || in.size() - offset < 4)
        fail(Errc::Truncated, "stream ends inside a frame length header");
    uint32_t len = 0;
    for (size_t i = 0; i < 4; ++i) {
        int d = hex_digit(static_cast<char>(in[offset + i]));
        if (d < 0)
            fail(Errc::BadLengthHeader,
                 strf("non-hex byte 0x%02X in frame length header", in[offset + i]));
        len = (len << 4) | static_cast<uint32_t>(d);
    }
    if (in.size() - offset - 4 < len)
        fail(Errc::Truncated,
             strf("frame declares %u payload bytes but only %zu remain", len,
                  in.size() - offset - 4));
    DecodedFrame f;
    f.payload.assign(in.begin() + static_cast<long>(offset + 4),
                     in.begin() + static_cast<long>(offset + 4 + len));
    f.consumed = 4 + len;
    return f;
}

// Concatenates frame payloads up to (excluding) the first terminator frame.
inline Bytes read_stream(const Bytes& in) {
    Bytes out;
    size_t off = 0;
    while (true) {
        if (off == in.size())
            fail(Errc::MissingTerminator, "stream ended without a 0000 terminator frame");
        DecodedFrame f = decode_frame(in, off);
        off += f.consumed;
        if (f.terminator()) return out;
        out.insert(out.end(), f.payload.begin(), f.payload.end());
    }
}

// Splits a payload into maximal frames followed by the terminator.
inline Bytes encode_stream(const Bytes& payload) {
    Bytes out;
    size_t off = 0;
    while (off < payload.size()) {
        size_t n = std::min(payload.size() - off, kMaxFramePayload);
        Bytes frame = encode_frame(payload.data() + off, n);
        out.insert(out.end(), frame.begin(), frame.end());
        off += n;
    }
    Bytes term = encode_frame(Bytes{});
    out.insert(out.end(), term.begin(), term.end());
    return out;
}

// ---------------------------------------------------------------------------
// Incremental framing over a pull source (socket or buffer).
// ---------------------------------------------------------------------------

// Reader: callable (uint8_t* dst, size_t n) -> size_t bytes actually read
// (short only at end of stream).
using ByteReader = std::function<size_t(uint8_t*, size_t)>;

inline ByteReader memory_reader(const Bytes& data) {
    auto pos = std::make_shared<size_t>(0);
    return [&data, pos](uint8_t* dst, size_t n) -> size_t {
        size_t avail = data.size() - *pos;
        size_t take = std::min(n, avail);
        std::memcpy(dst, data.data() + *pos, take);
        *pos += take;
        return take;
    };
}

// Reads one frame; nullopt = terminator frame.
inline std::optional<Bytes> read_frame(const ByteReader& read) {
    uint8_t hdr[4];
    size_t got = 0;
    while (got < 4) {
        size_t r = read(hdr + got, 4 - got);
        if (r == 0)
            fail(Errc::Truncated, "stream ends inside a frame length header");
        got += r;
    }
    uint32_t len = 0;
    for (uint8_t c : hdr) {
        int d = hex_digit(static_cast<char>(c));
        if (d < 0)
            fail(Errc::BadLengthHeader, strf("non-hex byte 0x%02X in frame length header", c));
        len = (len << 4) | static_cast<uint32_t>(d);
    }
    Bytes payload(len);
    got = 0;
    while (got < len) {
        size_t r = read(payload.data() + got, len - got);
        if (r == 0)
            fail(Errc::Truncated,
                 strf("frame declares %u payload bytes but stream ended after %zu", len, got));
        got += r;
    }
    if (len == 0) return std::nullopt;
    return payload;
}

// Feeds every payload to sink until the terminator arrives; returns total bytes.
inline uint64_t read_stream(const ByteReader& read,
                            const std::function<void(const Bytes&)>& sink) {
    uint64_t total = 0;
    while (true) {
        auto frame = read_frame(read);
        if (!frame) return total;
        total += frame->size();
        sink(*frame);
    }
}

// ---------------------------------------------------------------------------
// Message shapes.
// ---------------------------------------------------------------------------

struct ServiceRequest {
    enum class Kind { GetProp, Shell, Forward, Logcat };
    Kind kind = Kind::Logcat;
    std::string arg;  // property name, shell command, or device path

    std::string render() const {
        switch (kind) {
            case Kind::GetProp: return "getprop:" + arg;
            case Kind::Shell: return "shell:" + arg;
            case Kind::Forward: return "forward:" + arg;
            case Kind::Logcat: return "logcat";
        }
        return "";
    }

    static std::optional<ServiceRequest> parse(std::string_view text) {
        if (text.find('\n') != std::string_view::npos) return std::nullopt;
        if (text == "logcat") return ServiceRequest{Kind::Logcat, ""};
        if (starts_with(text, "getprop:"))
            return ServiceRequest{Kind::GetProp, std::string(text.substr(8))};
        if (starts_with(text, "shell:"))
            return ServiceRequest{Kind::Shell, std::string(text.substr(6))};
        if (starts_with(text, "forward:"))
            return ServiceRequest{Kind::Forward, std::string(text.substr(8))};
        return std::nullopt;
    }
};

struct FastbootResponse {
    enum class Status { Okay, Fail, Info, Data };
    Status status = Status::Okay;
    std::string body;

    bool ok() const { return status == Status::Okay; }

    static const char* status_name(Status s) {
        switch (s) {
            case Status::Okay: return "OKAY";
            case Status::Fail: return "FAIL";
            case Status::Info: return "INFO";
            case Status::Data: return "DATA";
        }
        return "FAIL";
    }

    std::string render() const { return std::string(status_name(status)) + body; }

    static std::optional<FastbootResponse> parse(std::string_view text) {
        if (text.size() < 4) return std::nullopt;
        std::string_view prefix = text.substr(0, 4);
        FastbootResponse r;
        if (prefix == "OKAY") r.status = Status::Okay;
        else if (prefix == "FAIL") r.status = Status::Fail;
        else if (prefix == "INFO") r.status = Status::Info;
        else if (prefix == "DATA") r.status = Status::Data;
        else return std::nullopt;
        r.body = std::string(text.substr(4));
        return r;
    }

    // For DATA replies: expected raw byte count from the 8-hex-digit body.
    std::optional<uint64_t> data_length() const {
        if (status != Status::Data || body.size() != 8) return std::nullopt;
        uint64_t n = 0;
        for (char c : body) {
            int d = hex_digit(c);
            if (d < 0) return std::nullopt;
            n = (n << 4) | static_cast<uint64_t>(d);
        }
        return n;
    }
};

inline FastbootResponse okay(std::string body = "") {
    return FastbootResponse{FastbootResponse::Status::Okay, std::move(body)};
}

inline FastbootResponse fail_response(std::string reason) {
    return FastbootResponse{FastbootResponse::Status::Fail, std::move(reason)};
}

inline FastbootResponse data_response(uint64_t n) {
    return FastbootResponse{FastbootResponse::Status::Data, strf("%08llX", (unsigned long long)n)};
}

}  // namespace caseforge::protocol
