// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <openssl/evp.h>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "relog/bytes.hpp"

namespace relog {

// 32-byte SHA-256 digest. All record identities and the trust chain hash-link
// are built from this.
struct Hash {
  std::array<std::uint8_t, 32> v{};

  auto operator<=>(const Hash&) const = default;

  std::string hex() const { return to_hex(v); }

  static Hash from_hex(std::string_view s) {
    Bytes b = relog::from_hex(s);
    if (b.size() != 32) throw CodecError("hash must be 32 bytes");
    Hash h;
    std::copy(b.begin(), b.end(), h.v.begin());
    return h;
  }
};

inline Hash hash_bytes(std::span<const std::uint8_t> data) {
  Hash out;
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.v.data(), &len, EVP_sha256(), nullptr);
  return out;
}

inline Hash hash_bytes(const Bytes& data) {
  return hash_bytes(std::span<const std::uint8_t>(data));
}

}  // namespace relog

template <>
struct std::hash<relog::Hash> {
  std::size_t operator()(const relog::Hash& h) const noexcept {
    std::size_t s;
    std::memcpy(&s, h.v.data(), sizeof(s));
    return s;
  }
};
