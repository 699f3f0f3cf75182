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

#include <optional>
#include <string>
#include <vector>

#include "caseforge/common.hpp"
#include "caseforge/snapshot.hpp"

// Raw keyword/signature search over image bytes, plus magic-byte file typing.

namespace caseforge::evidence {

struct Pattern {
    std::string label;  // as given on the command line, e.g. "token" or "hex:FFD8FF"
    Bytes bytes;

    // "hex:<digits>" parses as a binary signature, anything else as UTF-8 text.
    static Pattern from_text(const std::string& text) {
        if (starts_with(text, "hex:")) {
            auto bytes = from_hex(std::string_view(text).substr(4));
            if (!bytes || bytes->empty())
                fail(Errc::EmptyPattern, "bad hex pattern: " + text);
            return Pattern{text, *bytes};
        }
        if (text.empty()) fail(Errc::EmptyPattern, "empty search pattern");
        return Pattern{text, to_bytes(text)};
    }
};

struct SearchHit {
    uint64_t offset = 0;
    std::string pattern;            // the pattern's label
    bool allocated = false;         // true when inside a file entry's data extent
    std::string path;               // entry path when allocated
};

// Reports every occurrence of every pattern, overlapping matches included.
// A hit is labeled allocated(path) when the whole match lies inside a single
// entry's data extent; slack and structural bytes are unallocated. When no
// parsed archive is supplied every hit is unallocated.
inline std::vector<SearchHit> keyword_search(const Bytes& image,
                                             const std::vector<Pattern>& patterns,
                                             const SnapshotArchive* archive = nullptr) {
    if (patterns.empty()) fail(Errc::EmptyPattern, "no search patterns given");
    for (const auto& p : patterns) {
        if (p.bytes.empty()) fail(Errc::EmptyPattern, "empty search pattern");
        if (p.bytes.size() > 1024)
            fail(Errc::EmptyPattern, strf("pattern longer than 1024 bytes: %s", p.label.c_str()));
    }

    std::vector<SearchHit> hits;
    for (const auto& p : patterns) {
        if (p.bytes.size() > image.size()) continue;
        auto it = image.begin();
        while (true) {
            it = std::search(it, image.end(), p.bytes.begin(), p.bytes.end());
            if (it == image.end()) break;
            uint64_t off = static_cast<uint64_t>(it - image.begin());
            SearchHit hit{off, p.label, false, ""};
            if (archive) {
                for (const auto& ext : archive->data_extents) {
                    if (off >= ext.begin && off + p.bytes.size() <= ext.end) {
                        hit.allocated = true;
                        hit.path = archive->entries[ext.entry_index].path;
                        break;
                    }
                }
            }
            hits.push_back(std::move(hit));
            ++it;  // overlapping matches count
        }
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        return a.offset != b.offset ? a.offset < b.offset : a.pattern < b.pattern;
    });
    return hits;
}

enum class FileKind { Sqlite, Hprof, Xml, Jpeg, Zip, Unknown };

inline const char* file_kind_name(FileKind k) {
    switch (k) {
        case FileKind::Sqlite: return "sqlite";
        case FileKind::Hprof: return "hprof";
        case FileKind::Xml: return "xml";
        case FileKind::Jpeg: return "jpeg";
        case FileKind::Zip: return "zip/apk";
        case FileKind::Unknown: return "unknown";
    }
    return "unknown";
}

// Magic-byte table for header analysis of recovered files.
inline FileKind identify_file_type(const Bytes& header) {
    auto has = [&](std::string_view magic) {
        return header.size() >= magic.size() &&
               std::memcmp(header.data(), magic.data(), magic.size()) == 0;
    };
    if (has(std::string_view("SQLite format 3\0", 16))) return FileKind::Sqlite;
    if (has("JAVA PROFILE ")) return FileKind::Hprof;
    if (has("<?xml")) return FileKind::Xml;
    if (header.size() >= 3 && header[0] == 0xFF && header[1] == 0xD8 && header[2] == 0xFF)
        return FileKind::Jpeg;
    if (has("PK\x03\x04")) return FileKind::Zip;
    return FileKind::Unknown;
}

// The same table as byte patterns, for signature sweeps over raw images.
inline std::vector<Pattern> signature_patterns() {
    return {
        Pattern{"sig:sqlite", to_bytes(std::string_view("SQLite format 3\0", 16))},
        Pattern{"sig:hprof", to_bytes("JAVA PROFILE ")},
        Pattern{"sig:xml", to_bytes("<?xml")},
        Pattern{"sig:jpeg", Bytes{0xFF, 0xD8, 0xFF}},
        Pattern{"sig:zip", to_bytes("PK\x03\x04")},
    };
}

}  // namespace caseforge::evidence
