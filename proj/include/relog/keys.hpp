// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "relog/bytes.hpp"
#include "relog/hash.hpp"

namespace relog {

/* Signing scheme. The protocol needs attributable, tamper-evident signatures;
   it does not need production asymmetric crypto at simulation scale. The
   default scheme is a deterministic keyed digest: sig = H(key ‖ domain ‖ msg),
   with the public key equal to the key bytes. Verification recomputes the
   digest. A real asymmetric scheme can be swapped in behind sign()/verify()
   without touching any caller. */

struct PublicKey {
  std::array<std::uint8_t, 32> v{};
  auto operator<=>(const PublicKey&) const = default;
  std::string hex() const { return to_hex(v); }
};

struct SigningKey {
  std::array<std::uint8_t, 32> v{};

  static SigningKey from_bytes(std::span<const std::uint8_t> b) {
    if (b.size() != 32) throw CodecError("signing key must be 32 bytes");
    SigningKey k;
    std::copy(b.begin(), b.end(), k.v.begin());
    return k;
  }

  PublicKey pub() const {
    PublicKey p;
    p.v = v;
    return p;
  }
};

struct Signature {
  std::array<std::uint8_t, 32> v{};
  auto operator<=>(const Signature&) const = default;
  std::string hex() const { return to_hex(v); }
};

inline Signature sign(std::span<const std::uint8_t> msg, const SigningKey& key) {
  ByteWriter w;
  w.raw(key.v);
  w.lp_str("relog.sig");
  w.lp(msg);
  Signature s;
  s.v = hash_bytes(w.bytes()).v;
  return s;
}

inline bool verify(std::span<const std::uint8_t> msg, const Signature& sig,
                   const PublicKey& pub) {
  ByteWriter w;
  w.raw(pub.v);
  w.lp_str("relog.sig");
  w.lp(msg);
  return hash_bytes(w.bytes()).v == sig.v;
}

// Deterministic per-replica key material; fixed by (epoch, index) so scenarios
// are reproducible without key distribution (a stated non-goal).
inline SigningKey derive_key(std::uint64_t epoch, std::uint32_t index) {
  ByteWriter w;
  w.lp_str("relog.key");
  w.u64(epoch);
  w.u32(index);
  SigningKey k;
  k.v = hash_bytes(w.bytes()).v;
  return k;
}

}  // namespace relog
