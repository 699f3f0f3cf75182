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

#include <openssl/evp.h>

#include <string>

#include "caseforge/common.hpp"

namespace caseforge {

// Incremental MD5/SHA1 wrapper. Images are hashed while they stream so the
// evidence file never needs a second read during collection.
class Digest {
public:
    explicit Digest(const EVP_MD* md) : ctx_(EVP_MD_CTX_new()) {
        EVP_DigestInit_ex(ctx_, md, nullptr);
    }
    ~Digest() { EVP_MD_CTX_free(ctx_); }
    Digest(const Digest&) = delete;
    Digest& operator=(const Digest&) = delete;

    void update(const uint8_t* data, size_t n) { EVP_DigestUpdate(ctx_, data, n); }
    void update(const Bytes& b) { update(b.data(), b.size()); }
    void update(std::string_view s) {
        update(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }

    // Lowercase hex digest; the context is finalized and must not be reused.
    std::string hex() {
        unsigned char out[EVP_MAX_MD_SIZE];
        unsigned int n = 0;
        EVP_DigestFinal_ex(ctx_, out, &n);
        return to_hex(out, n);
    }

private:
    EVP_MD_CTX* ctx_;
};

class Md5 : public Digest {
public:
    Md5() : Digest(EVP_md5()) {}
};

class Sha1 : public Digest {
public:
    Sha1() : Digest(EVP_sha1()) {}
};

inline std::string md5_hex(const uint8_t* data, size_t n) {
    Md5 d;
    d.update(data, n);
    return d.hex();
}

inline std::string md5_hex(const Bytes& b) { return md5_hex(b.data(), b.size()); }

inline std::string sha1_hex(const uint8_t* data, size_t n) {
    Sha1 d;
    d.update(data, n);
    return d.hex();
}

inline std::string sha1_hex(const Bytes& b) { return sha1_hex(b.data(), b.size()); }

}  // namespace caseforge
