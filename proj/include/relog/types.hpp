// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relog/bytes.hpp"
#include "relog/hash.hpp"
#include "relog/keys.hpp"

namespace relog {

using EpochId = std::uint64_t;  // 1 = genesis epoch
using Pos = std::uint64_t;      // log positions, 1-based
using Time = std::uint64_t;     // simulated time, ticks

// Content hash of a transaction payload. Identical payloads map to the same
// id, which is what makes at-most-once enforceable across resubmissions.
struct TxId {
  Hash h;
  auto operator<=>(const TxId&) const = default;
  std::string hex() const { return h.hex(); }
};

struct Transaction {
  TxId id;
  Bytes payload;
  std::string submitter;

  bool operator==(const Transaction&) const = default;

  static Transaction make(Bytes payload, std::string submitter) {
    Transaction t;
    t.id.h = hash_bytes(payload);
    t.payload = std::move(payload);
    t.submitter = std::move(submitter);
    return t;
  }

  bool id_matches() const { return id.h == hash_bytes(payload); }

  void encode(ByteWriter& w) const {
    w.lp(payload);
    w.lp_str(submitter);
  }
  static Transaction decode(ByteReader& r) {
    Bytes p = r.lp();
    std::string s = r.lp_str();
    return make(std::move(p), std::move(s));
  }
};

enum class FaultModel : std::uint8_t { Crash = 0, Byzantine = 1 };
enum class ConsensusKind : std::uint8_t { Sequencer = 0, MultiLane = 1 };

inline const char* name(FaultModel m) {
  return m == FaultModel::Crash ? "crash" : "byzantine";
}
inline const char* name(ConsensusKind k) {
  return k == ConsensusKind::Sequencer ? "sequencer" : "multilane";
}

// Fresh identity per epoch: the same operator joining two epochs runs two
// replica instances with distinct (epoch, index) identities.
struct ReplicaId {
  EpochId epoch = 0;
  std::uint32_t index = 0;
  PublicKey pub;

  auto operator<=>(const ReplicaId&) const = default;

  void encode(ByteWriter& w) const {
    w.u64(epoch);
    w.u32(index);
    w.raw(pub.v);
  }
  static ReplicaId decode(ByteReader& r) {
    ReplicaId id;
    id.epoch = r.u64();
    id.index = r.u32();
    r.raw(id.pub.v);
    return id;
  }

  std::string str() const { return std::to_string(epoch) + "/" + std::to_string(index); }
};

struct EpochConfig {
  EpochId epoch = 0;
  std::vector<ReplicaId> members;  // ordered by index
  std::uint32_t f = 0;
  FaultModel fault_model = FaultModel::Crash;
  ConsensusKind consensus_kind = ConsensusKind::Sequencer;

  bool operator==(const EpochConfig&) const = default;

  std::size_t n() const { return members.size(); }

  const ReplicaId* member_by_index(std::uint32_t index) const {
    for (const auto& m : members)
      if (m.index == index) return &m;
    return nullptr;
  }

  bool is_member(const ReplicaId& id) const {
    return std::find(members.begin(), members.end(), id) != members.end();
  }

  void encode(ByteWriter& w) const {
    w.u64(epoch);
    w.u32(static_cast<std::uint32_t>(members.size()));
    for (const auto& m : members) m.encode(w);
    w.u32(f);
    w.u8(static_cast<std::uint8_t>(fault_model));
    w.u8(static_cast<std::uint8_t>(consensus_kind));
  }
  static EpochConfig decode(ByteReader& r) {
    EpochConfig c;
    c.epoch = r.u64();
    std::uint32_t n = r.u32();
    c.members.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) c.members.push_back(ReplicaId::decode(r));
    c.f = r.u32();
    c.fault_model = static_cast<FaultModel>(r.u8());
    c.consensus_kind = static_cast<ConsensusKind>(r.u8());
    return c;
  }
};

// Builds a config whose member identities carry the scheme's derived keys.
inline EpochConfig make_config(EpochId epoch, const std::vector<std::uint32_t>& indices,
                               std::uint32_t f, FaultModel fm, ConsensusKind ck) {
  EpochConfig c;
  c.epoch = epoch;
  c.f = f;
  c.fault_model = fm;
  c.consensus_kind = ck;
  for (std::uint32_t i : indices) {
    ReplicaId id;
    id.epoch = epoch;
    id.index = i;
    id.pub = derive_key(epoch, i).pub();
    c.members.push_back(id);
  }
  return c;
}

// nullopt = valid; otherwise a description naming the failed inequality.
inline std::optional<std::string> validate_epoch_config(const EpochConfig& cfg) {
  if (cfg.epoch == 0) return "epoch must be >= 1";
  for (std::size_t i = 0; i < cfg.members.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.members.size(); ++j)
      if (cfg.members[i].epoch == cfg.members[j].epoch &&
          cfg.members[i].index == cfg.members[j].index)
        return "duplicate member " + cfg.members[i].str();
  const std::uint64_t n = cfg.members.size();
  if (cfg.fault_model == FaultModel::Byzantine) {
    if (n < 3ull * cfg.f + 1) return std::to_string(n) + " < 3f+1";
  } else {
    if (n < 2ull * cfg.f + 1) return std::to_string(n) + " < 2f+1";
  }
  return std::nullopt;
}

}  // namespace relog

template <>
struct std::hash<relog::TxId> {
  std::size_t operator()(const relog::TxId& id) const noexcept {
    return std::hash<relog::Hash>{}(id.h);
  }
};
