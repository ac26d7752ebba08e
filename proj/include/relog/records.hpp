// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "relog/bytes.hpp"
#include "relog/hash.hpp"
#include "relog/keys.hpp"
#include "relog/types.hpp"

namespace relog {

/* System transactions and the handover certificate.

   EpochChange announces the next configuration inside the current epoch's
   inner log. Ready is an incoming member's signed attestation, committed in
   the old epoch's log. The handover certificate ends the old epoch at inner
   position h and hash-links to its predecessor; Done carries it, signed by an
   old-epoch member, into the new epoch's log. */

struct EpochChange {
  EpochId from = 0;
  EpochConfig next;

  void encode(ByteWriter& w) const {
    w.u64(from);
    next.encode(w);
  }
  static EpochChange decode(ByteReader& r) {
    EpochChange ec;
    ec.from = r.u64();
    ec.next = EpochConfig::decode(r);
    return ec;
  }
  bool operator==(const EpochChange&) const = default;
};

struct HandoverCertificate {
  EpochId old_epoch = 0;
  EpochConfig next_config;
  Pos h = 0;  // inner position of the last counted Ready in the old log
  Hash prev_cert_hash;

  void encode(ByteWriter& w) const {
    w.u64(old_epoch);
    next_config.encode(w);
    w.u64(h);
    w.raw(prev_cert_hash.v);
  }
  static HandoverCertificate decode(ByteReader& r) {
    HandoverCertificate c;
    c.old_epoch = r.u64();
    c.next_config = EpochConfig::decode(r);
    c.h = r.u64();
    r.raw(c.prev_cert_hash.v);
    return c;
  }
  bool operator==(const HandoverCertificate&) const = default;

  Bytes bytes() const {
    ByteWriter w;
    w.lp_str("relog.cert");
    encode(w);
    return w.take();
  }
  Hash hash() const { return hash_bytes(bytes()); }
};

struct Ready {
  EpochId from = 0;
  EpochId to = 0;
  Hash ec_hash;  // hash of the EpochChange this Ready answers
  ReplicaId signer;
  Signature sig;

  Bytes signed_bytes() const {
    ByteWriter w;
    w.lp_str("relog.ready");
    w.u64(from);
    w.u64(to);
    w.raw(ec_hash.v);
    signer.encode(w);
    return w.take();
  }

  void encode(ByteWriter& w) const {
    w.u64(from);
    w.u64(to);
    w.raw(ec_hash.v);
    signer.encode(w);
    w.raw(sig.v);
  }
  static Ready decode(ByteReader& r) {
    Ready rd;
    rd.from = r.u64();
    rd.to = r.u64();
    r.raw(rd.ec_hash.v);
    rd.signer = ReplicaId::decode(r);
    r.raw(rd.sig.v);
    return rd;
  }
  bool operator==(const Ready&) const = default;
};

struct Done {
  HandoverCertificate cert;
  ReplicaId signer;
  Signature sig;  // over cert.bytes()

  void encode(ByteWriter& w) const {
    cert.encode(w);
    signer.encode(w);
    w.raw(sig.v);
  }
  static Done decode(ByteReader& r) {
    Done d;
    d.cert = HandoverCertificate::decode(r);
    d.signer = ReplicaId::decode(r);
    r.raw(d.sig.v);
    return d;
  }
  bool operator==(const Done&) const = default;

  bool sig_valid() const { return verify(cert.bytes(), sig, signer.pub); }
};

using SystemTx = std::variant<EpochChange, Ready, Done>;

inline Bytes encode_system_tx(const SystemTx& tx) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(tx.index() + 1));
  std::visit([&](const auto& v) { v.encode(w); }, tx);
  return w.take();
}

inline SystemTx decode_system_tx(ByteReader& r) {
  std::uint8_t tag = r.u8();
  switch (tag) {
    case 1: return EpochChange::decode(r);
    case 2: return Ready::decode(r);
    case 3: return Done::decode(r);
    default: throw CodecError("bad system tx tag");
  }
}

inline Hash epoch_change_hash(const EpochChange& ec) {
  ByteWriter w;
  w.lp_str("relog.epoch-change");
  ec.encode(w);
  return hash_bytes(w.bytes());
}

// No-op filler used by multi-lane consensus to keep positions contiguous when
// a lane is quiet. Occupies an inner position; never reaches the outer log.
struct Noop {
  EpochId epoch = 0;
  std::uint32_t lane = 0;
  std::uint64_t slot = 0;
  bool operator==(const Noop&) const = default;
};

using EntryContent = std::variant<Transaction, SystemTx, Noop>;

inline bool is_client_tx(const EntryContent& c) {
  return std::holds_alternative<Transaction>(c);
}
inline bool is_noop(const EntryContent& c) { return std::holds_alternative<Noop>(c); }

inline Bytes encode_content(const EntryContent& c) {
  ByteWriter w;
  if (const auto* tx = std::get_if<Transaction>(&c)) {
    w.u8(1);
    tx->encode(w);
  } else if (const auto* sys = std::get_if<SystemTx>(&c)) {
    w.u8(2);
    w.lp(encode_system_tx(*sys));
  } else {
    const auto& n = std::get<Noop>(c);
    w.u8(3);
    w.u64(n.epoch);
    w.u32(n.lane);
    w.u64(n.slot);
  }
  return w.take();
}

inline EntryContent decode_content(ByteReader& r) {
  std::uint8_t tag = r.u8();
  if (tag == 1) return Transaction::decode(r);
  if (tag == 2) {
    Bytes b = r.lp();
    ByteReader inner(b);
    SystemTx tx = decode_system_tx(inner);
    inner.expect_done();
    return tx;
  }
  if (tag == 3) {
    Noop n;
    n.epoch = r.u64();
    n.lane = r.u32();
    n.slot = r.u64();
    return n;
  }
  throw CodecError("bad entry content tag");
}

/* Identity used for duplicate suppression inside one inner log. Client
   transactions key on TxId so a resubmission of the same payload cannot be
   decided twice; system transactions key on their full content. Noops are
   keyed per slot and never collide. */
inline Hash content_key(const EntryContent& c) {
  if (const auto* tx = std::get_if<Transaction>(&c)) {
    ByteWriter w;
    w.lp_str("relog.ck.tx");
    w.raw(tx->id.h.v);
    return hash_bytes(w.bytes());
  }
  ByteWriter w;
  w.lp_str(is_noop(c) ? "relog.ck.noop" : "relog.ck.sys");
  w.lp(encode_content(c));
  return hash_bytes(w.bytes());
}

struct InnerLogEntry {
  EpochId epoch = 0;
  Pos position = 0;  // contiguous from 1 within the epoch
  EntryContent content;

  bool operator==(const InnerLogEntry&) const = default;

  void encode(ByteWriter& w) const {
    w.u64(epoch);
    w.u64(position);
    w.lp(encode_content(content));
  }
  static InnerLogEntry decode(ByteReader& r) {
    InnerLogEntry e;
    e.epoch = r.u64();
    e.position = r.u64();
    Bytes b = r.lp();
    ByteReader inner(b);
    e.content = decode_content(inner);
    inner.expect_done();
    return e;
  }

  Bytes bytes() const {
    ByteWriter w;
    encode(w);
    return w.take();
  }
};

struct OuterEntry {
  Pos outer_position = 0;  // contiguous from 1, global across epochs
  Transaction tx;
  EpochId source_epoch = 0;
  Pos source_position = 0;

  bool operator==(const OuterEntry&) const = default;

  void encode(ByteWriter& w) const {
    w.u64(outer_position);
    tx.encode(w);
    w.u64(source_epoch);
    w.u64(source_position);
  }
  static OuterEntry decode(ByteReader& r) {
    OuterEntry e;
    e.outer_position = r.u64();
    e.tx = Transaction::decode(r);
    e.source_epoch = r.u64();
    e.source_position = r.u64();
    return e;
  }

  // Line format of the outer-log export; bit-exact across replicas.
  std::string line() const {
    return std::to_string(outer_position) + " " + tx.id.hex() + " " +
           std::to_string(source_epoch) + " " + std::to_string(source_position);
  }
};

// Anchor of the trust chain: the paper leaves the first epoch's predecessor
// hash undefined, so the chain is rooted at the genesis configuration record.
inline Hash genesis_hash(const EpochConfig& genesis) {
  ByteWriter w;
  w.lp_str("relog.genesis");
  genesis.encode(w);
  return hash_bytes(w.bytes());
}

}  // namespace relog
