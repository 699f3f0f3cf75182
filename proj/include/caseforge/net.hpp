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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>
#include <utility>

#include "caseforge/common.hpp"
#include "caseforge/protocol.hpp"

namespace caseforge::net {

// Minimal blocking TCP wrappers; IPv4 loopback is all the simulator needs.

class TcpStream {
public:
    TcpStream() = default;
    explicit TcpStream(int fd) : fd_(fd) {}
    ~TcpStream() { close(); }

    TcpStream(TcpStream&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
    TcpStream& operator=(TcpStream&& other) noexcept {
        if (this != &other) {
            close();
            fd_ = std::exchange(other.fd_, -1);
        }
        return *this;
    }
    TcpStream(const TcpStream&) = delete;
    TcpStream& operator=(const TcpStream&) = delete;

    bool valid() const { return fd_ >= 0; }

    static TcpStream connect(const std::string& host, uint16_t port, int timeout_sec = 10) {
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) fail(Errc::NetworkError, strf("socket: %s", std::strerror(errno)));
        TcpStream s(fd);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
            fail(Errc::NetworkError, "inet_pton: bad address " + host);
        if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
            fail(Errc::ChannelUnavailable,
                 strf("connect %s:%u: %s", host.c_str(), port, std::strerror(errno)));
        s.set_timeout(timeout_sec);
        return s;
    }

    void set_timeout(int seconds) {
        timeval tv{};
        tv.tv_sec = seconds;
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
        ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
    }

    size_t read_some(uint8_t* dst, size_t n) {
        while (true) {
            ssize_t r = ::recv(fd_, dst, n, 0);
            if (r >= 0) return static_cast<size_t>(r);
            if (errno == EINTR) continue;
            fail(Errc::NetworkError, strf("recv: %s", std::strerror(errno)));
        }
    }

    void write_all(const uint8_t* data, size_t n) {
        size_t sent = 0;
        while (sent < n) {
            ssize_t r = ::send(fd_, data + sent, n - sent, MSG_NOSIGNAL);
            if (r < 0) {
                if (errno == EINTR) continue;
                fail(Errc::NetworkError, strf("send: %s", std::strerror(errno)));
            }
            sent += static_cast<size_t>(r);
        }
    }

    void write_all(const Bytes& b) { write_all(b.data(), b.size()); }
    void write_all(std::string_view s) {
        write_all(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }

    void shutdown_write() { ::shutdown(fd_, SHUT_WR); }

    void close() {
        if (fd_ >= 0) {
            ::close(fd_);
            fd_ = -1;
        }
    }

    protocol::ByteReader reader() {
        return [this](uint8_t* dst, size_t n) { return read_some(dst, n); };
    }

    // Drains the socket until EOF; returns everything read.
    Bytes read_to_end() {
        Bytes out;
        uint8_t buf[4096];
        while (true) {
            size_t r = read_some(buf, sizeof(buf));
            if (r == 0) return out;
            out.insert(out.end(), buf, buf + r);
        }
    }

private:
    int fd_ = -1;
};

class TcpListener {
public:
    TcpListener() = default;
    ~TcpListener() { close(); }
    TcpListener(TcpListener&& other) noexcept
        : fd_(std::exchange(other.fd_, -1)), port_(other.port_) {}
    TcpListener& operator=(TcpListener&& other) noexcept {
        if (this != &other) {
            close();
            fd_ = std::exchange(other.fd_, -1);
            port_ = other.port_;
        }
        return *this;
    }
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    // port 0 binds an ephemeral port; the chosen one is available via port().
    static TcpListener bind(uint16_t port) {
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) fail(Errc::NetworkError, strf("socket: %s", std::strerror(errno)));
        TcpListener l;
        l.fd_ = fd;
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
            fail(Errc::NetworkError, strf("bind port %u: %s", port, std::strerror(errno)));
        if (::listen(fd, 16) != 0)
            fail(Errc::NetworkError, strf("listen: %s", std::strerror(errno)));
        socklen_t len = sizeof(addr);
        ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
        l.port_ = ntohs(addr.sin_port);
        return l;
    }

    TcpStream accept() {
        while (true) {
            int fd = ::accept(fd_, nullptr, nullptr);
            if (fd >= 0) return TcpStream(fd);
            if (errno == EINTR) continue;
            fail(Errc::NetworkError, strf("accept: %s", std::strerror(errno)));
        }
    }

    uint16_t port() const { return port_; }
    bool valid() const { return fd_ >= 0; }

    void close() {
        if (fd_ >= 0) {
            ::shutdown(fd_, SHUT_RDWR);
            ::close(fd_);
            fd_ = -1;
        }
    }

private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

}  // namespace caseforge::net
