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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "caseforge/common.hpp"

// Snapshot archive: the evidence image format produced by the simulated
// device's userdata/sdcard partitions.
//
//   magic   "AEVDSNP1"                                     8 bytes
//   entry*  kind(1) path_len(u16 BE) path mtime(u64 BE)
//           files additionally: size(u64 BE) data
//   0x00    terminator
//   slack   remaining bytes, outside any file extent
//
// Canonical archives list each path once, '/'-separated with no leading '/',
// sorted lexicographically.

namespace caseforge::evidence {

constexpr char kArchiveMagic[] = "AEVDSNP1";
constexpr size_t kArchiveMagicLen = 8;
constexpr uint8_t kKindDir = 0x01;
constexpr uint8_t kKindFile = 0x02;

struct FsEntry {
    uint8_t kind = kKindFile;
    std::string path;
    uint64_t mtime = 0;
    Bytes data;  // files only

    bool is_dir() const { return kind == kKindDir; }
    bool is_file() const { return kind == kKindFile; }
};

struct SnapshotArchive {
    std::vector<FsEntry> entries;
    Bytes slack;
    std::vector<std::string> warnings;  // e.g. non-canonical entry order

    // Byte range [begin, end) of each file entry's data in the serialized
    // image, recorded during parse; used to label search hits.
    struct Extent {
        uint64_t begin = 0;
        uint64_t end = 0;
        size_t entry_index = 0;
    };
    std::vector<Extent> data_extents;
    uint64_t slack_offset = 0;

    const FsEntry* find(const std::string& path) const {
        for (const auto& e : entries)
            if (e.path == path) return &e;
        return nullptr;
    }

    bool has_dir(const std::string& path) const {
        std::string prefix = path + "/";
        for (const auto& e : entries) {
            if (e.path == path && e.is_dir()) return true;
            if (starts_with(e.path, prefix)) return true;
        }
        return false;
    }

    // Immediate child names of a directory, from explicit entries and path
    // prefixes alike. Empty dirpath lists the root.
    std::vector<std::string> list_children(const std::string& dirpath) const {
        std::string prefix = dirpath.empty() ? "" : dirpath + "/";
        std::set<std::string> names;
        for (const auto& e : entries) {
            if (!starts_with(e.path, prefix) || e.path == dirpath) continue;
            std::string rest = e.path.substr(prefix.size());
            if (rest.empty()) continue;
            size_t slash = rest.find('/');
            names.insert(slash == std::string::npos ? rest : rest.substr(0, slash));
        }
        return {names.begin(), names.end()};
    }
};

namespace detail {

inline void put_u16be(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void put_u64be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<uint8_t>(v >> shift));
}

inline uint16_t get_u16be(const uint8_t* p) {
    return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

inline uint64_t get_u64be(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

}  // namespace detail

inline Bytes serialize(const SnapshotArchive& archive) {
    Bytes out(kArchiveMagic, kArchiveMagic + kArchiveMagicLen);
    for (const auto& e : archive.entries) {
        if (e.path.size() > 0xFFFF)
            fail(Errc::TruncatedEntry, "entry path longer than 65535 bytes: " + e.path);
        out.push_back(e.kind);
        detail::put_u16be(out, static_cast<uint16_t>(e.path.size()));
        out.insert(out.end(), e.path.begin(), e.path.end());
        detail::put_u64be(out, e.mtime);
        if (e.is_file()) {
            detail::put_u64be(out, e.data.size());
            out.insert(out.end(), e.data.begin(), e.data.end());
        }
    }
    out.push_back(0x00);
    out.insert(out.end(), archive.slack.begin(), archive.slack.end());
    return out;
}

inline SnapshotArchive parse_archive(const Bytes& image) {
    if (image.size() < kArchiveMagicLen ||
        std::memcmp(image.data(), kArchiveMagic, kArchiveMagicLen) != 0)
        fail(Errc::BadMagic, "image does not begin with the snapshot archive magic");

    SnapshotArchive archive;
    std::set<std::string> seen;
    std::string prev_path;
    size_t off = kArchiveMagicLen;
    auto need = [&](size_t n, const char* what) {
        if (image.size() - off < n)
            fail(Errc::TruncatedEntry, strf("image ends inside %s", what));
    };

    while (true) {
        need(1, "an entry kind byte");
        uint8_t kind = image[off];
        if (kind == 0x00) {
            ++off;
            break;
        }
        if (kind != kKindDir && kind != kKindFile)
            fail(Errc::TruncatedEntry, strf("unknown entry kind 0x%02X at offset %zu", kind, off));
        ++off;

        need(2, "a path length");
        uint16_t path_len = detail::get_u16be(image.data() + off);
        off += 2;
        need(path_len, "an entry path");
        FsEntry e;
        e.kind = kind;
        e.path.assign(image.begin() + static_cast<long>(off),
                      image.begin() + static_cast<long>(off + path_len));
        off += path_len;

        if (e.path.empty() || e.path.front() == '/' || e.path.back() == '/')
            fail(Errc::TruncatedEntry, "malformed entry path: '" + e.path + "'");
        if (!seen.insert(e.path).second)
            fail(Errc::DuplicatePath, "duplicate entry path: " + e.path);
        if (!prev_path.empty() && e.path < prev_path)
            archive.warnings.push_back("NotCanonicalOrder: '" + e.path + "' after '" +
                                       prev_path + "'");
        prev_path = e.path;

        need(8, "an mtime");
        e.mtime = detail::get_u64be(image.data() + off);
        off += 8;

        if (kind == kKindFile) {
            need(8, "a file size");
            uint64_t size = detail::get_u64be(image.data() + off);
            off += 8;
            need(size, "file data");
            e.data.assign(image.begin() + static_cast<long>(off),
                          image.begin() + static_cast<long>(off + size));
            archive.data_extents.push_back({off, off + size, archive.entries.size()});
            off += size;
        }
        archive.entries.push_back(std::move(e));
    }

    archive.slack_offset = off;
    archive.slack.assign(image.begin() + static_cast<long>(off), image.end());
    return archive;
}

inline const Bytes& read_file(const SnapshotArchive& archive, const std::string& path) {
    const FsEntry* e = archive.find(path);
    if (!e) {
        if (archive.has_dir(path)) fail(Errc::IsDirectory, path + " is a directory");
        fail(Errc::NotFound, "no such file in archive: " + path);
    }
    if (e->is_dir()) fail(Errc::IsDirectory, path + " is a directory");
    return e->data;
}

// Convenience builder used by simulator profiles and tests.
inline SnapshotArchive make_archive(std::vector<FsEntry> entries, Bytes slack = {}) {
    std::sort(entries.begin(), entries.end(),
              [](const FsEntry& a, const FsEntry& b) { return a.path < b.path; });
    SnapshotArchive a;
    a.entries = std::move(entries);
    a.slack = std::move(slack);
    return a;
}

}  // namespace caseforge::evidence
