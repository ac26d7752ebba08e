// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relog/records.hpp"
#include "relog/types.hpp"

namespace relog {

/* Three-phase reconfiguration state machine, one instance per epoch boundary
   per replica.

   Outgoing replicas (members of the old epoch) feed it their own inner log
   and, once a handover certificate is formed, the new epoch's log as learners
   to count Done transactions before shutting down. Incoming replicas (members
   of the next epoch) feed it the old epoch's log as learners and their own
   log for Done counting before activating. Both roles derive the same
   certificate from the same log prefix; only outgoing replicas sign it.

   All decisions are functions of committed log entries, so every correct
   replica takes them identically. */

enum class Phase : std::uint8_t {
  Idle,
  AwaitingReady,
  HandoverFormed,
  AwaitingDone,
  Active,    // terminal for incoming
  ShutDown,  // terminal for outgoing (and for aborted incoming prepares)
};

inline const char* name(Phase p) {
  switch (p) {
    case Phase::Idle: return "idle";
    case Phase::AwaitingReady: return "awaiting_ready";
    case Phase::HandoverFormed: return "handover_formed";
    case Phase::AwaitingDone: return "awaiting_done";
    case Phase::Active: return "active";
    case Phase::ShutDown: return "shut_down";
  }
  return "?";
}

inline std::optional<Phase> phase_by_name(const std::string& s) {
  for (auto p : {Phase::Idle, Phase::AwaitingReady, Phase::HandoverFormed, Phase::AwaitingDone,
                 Phase::Active, Phase::ShutDown})
    if (s == name(p)) return p;
  return std::nullopt;
}

enum class Role : std::uint8_t { Outgoing, Incoming };

// One completed epoch boundary: the certificate plus the first f_old+1
// matching Done signatures in new-log order (deterministic across replicas).
struct TrustLink {
  HandoverCertificate cert;
  std::vector<std::pair<ReplicaId, Signature>> sigs;

  bool operator==(const TrustLink&) const = default;

  void encode(ByteWriter& w) const {
    cert.encode(w);
    w.u32(static_cast<std::uint32_t>(sigs.size()));
    for (const auto& [id, sig] : sigs) {
      id.encode(w);
      w.raw(sig.v);
    }
  }
  static TrustLink decode(ByteReader& r) {
    TrustLink l;
    l.cert = HandoverCertificate::decode(r);
    std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      ReplicaId id = ReplicaId::decode(r);
      Signature s;
      r.raw(s.v);
      l.sigs.emplace_back(id, s);
    }
    return l;
  }

  Bytes bytes() const {
    ByteWriter w;
    encode(w);
    return w.take();
  }
};

inline Bytes encode_chain(const std::vector<TrustLink>& chain) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(chain.size()));
  for (const auto& l : chain) l.encode(w);
  return w.take();
}

inline std::vector<TrustLink> decode_chain(ByteReader& r) {
  std::uint32_t n = r.u32();
  std::vector<TrustLink> chain;
  chain.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) chain.push_back(TrustLink::decode(r));
  return chain;
}

struct ChainBreak {
  std::size_t link_index;  // 0-based into the chain
  std::string reason;
};

/* Walks the certificate chain from the genesis anchor: hash links, strictly
   increasing epochs, epoch continuity, and at least f_old+1 valid member
   signatures per link. Returns the first broken link, or nullopt if valid. */
inline std::optional<ChainBreak> verify_trust_chain(const std::vector<TrustLink>& chain,
                                                    const Hash& genesis_anchor,
                                                    const EpochConfig& genesis_config) {
  Hash prev = genesis_anchor;
  const EpochConfig* old_cfg = &genesis_config;
  EpochId prev_epoch = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& link = chain[i];
    const auto& cert = link.cert;
    if (cert.old_epoch != old_cfg->epoch)
      return ChainBreak{i, "certificate ends epoch " + std::to_string(cert.old_epoch) +
                               " but chain is at epoch " + std::to_string(old_cfg->epoch)};
    if (cert.next_config.epoch <= prev_epoch || cert.next_config.epoch <= cert.old_epoch)
      return ChainBreak{i, "epochs not strictly increasing"};
    if (cert.prev_cert_hash != prev) return ChainBreak{i, "hash mismatch with previous link"};
    std::set<std::uint32_t> seen;
    std::size_t valid = 0;
    Bytes cb = cert.bytes();
    for (const auto& [signer, sig] : link.sigs) {
      if (!old_cfg->is_member(signer)) continue;
      if (seen.count(signer.index)) continue;
      if (!verify(cb, sig, signer.pub)) continue;
      seen.insert(signer.index);
      ++valid;
    }
    if (valid < static_cast<std::size_t>(old_cfg->f) + 1)
      return ChainBreak{i, "insufficient signatures: " + std::to_string(valid) + " < f+1 = " +
                               std::to_string(old_cfg->f + 1)};
    prev = cert.hash();
    prev_epoch = cert.next_config.epoch;
    old_cfg = &cert.next_config;
  }
  return std::nullopt;
}

// --- Engine actions -----------------------------------------------------

struct ActSubmitReady {
  Ready ready;  // to be submitted to the old epoch's consensus
};
struct ActSubmitDone {
  Done done;  // to be submitted to the new epoch's consensus
};
// Certificate derived from the old log; every correct replica of either role
// produces the identical value. signed_by_self is true for outgoing replicas.
struct ActHandover {
  HandoverCertificate cert;
  bool signed_by_self;
};
struct ActActivate {
  EpochId epoch;
  std::uint32_t counted;
  TrustLink link;
};
struct ActShutdown {
  EpochId old_epoch;
};
struct ActAbortPrepare {
  EpochId abandoned;
};
struct ActPhase {
  Phase from, to;
};
struct ActEcObserved {
  EpochId target;
  Pos pos;
};
struct ActPreempted {
  EpochId old_target, new_target;
  Pos pos;
};
struct ActReadyCounted {
  ReplicaId signer;
  std::uint32_t count;
  Pos pos;
};
struct ActDoneCounted {
  ReplicaId signer;
  std::uint32_t count;
};
struct ActDoneMismatch {
  ReplicaId signer;  // valid member signature over a conflicting certificate
};
struct ActNote {
  std::string kind;
  std::string detail;
};

using EngineAction =
    std::variant<ActSubmitReady, ActSubmitDone, ActHandover, ActActivate, ActShutdown,
                 ActAbortPrepare, ActPhase, ActEcObserved, ActPreempted, ActReadyCounted,
                 ActDoneCounted, ActDoneMismatch, ActNote>;

class ReconfigEngine {
 public:
  // `self_key` signs Ready (incoming) or Done (outgoing). `chain_tip` is the
  // hash of the certificate that installed `old_config` (genesis anchor for
  // epoch 1). Incoming engines pass the config they were provisioned with.
  ReconfigEngine(Role role, ReplicaId self, SigningKey self_key, EpochConfig old_config,
                 Hash chain_tip, std::optional<EpochConfig> own_next_config = std::nullopt)
      : role_(role),
        self_(std::move(self)),
        key_(self_key),
        old_config_(std::move(old_config)),
        chain_tip_(chain_tip),
        own_config_(std::move(own_next_config)) {}

  Phase phase() const { return phase_; }
  Role role() const { return role_; }
  EpochId old_epoch() const { return old_config_.epoch; }
  const std::optional<HandoverCertificate>& certificate() const { return cert_; }
  const std::optional<EpochChange>& pending() const { return pending_; }
  std::uint32_t ready_count() const { return static_cast<std::uint32_t>(counted_ready_.size()); }
  std::uint32_t done_count() const { return static_cast<std::uint32_t>(done_sigs_.size()); }
  std::uint32_t done_quorum() const { return old_config_.f + 1; }

  // Entry committed in the old epoch's inner log, in position order. The
  // caller must stop feeding entries past h once a handover is formed; those
  // positions are void.
  std::vector<EngineAction> on_old_entry(const InnerLogEntry& entry) {
    std::vector<EngineAction> acts;
    if (entry.epoch != old_config_.epoch || phase_ == Phase::ShutDown) return acts;
    const auto* sys = std::get_if<SystemTx>(&entry.content);
    if (!sys) return acts;
    if (const auto* ec = std::get_if<EpochChange>(sys)) {
      on_epoch_change(*ec, entry.position, acts);
    } else if (const auto* rd = std::get_if<Ready>(sys)) {
      on_ready(*rd, entry.position, acts);
    }
    return acts;
  }

  // Entry committed in the next epoch's inner log (Done counting). Entries
  // arriving before the certificate is derived are buffered: a Done can only
  // be validated against the certificate this replica derives itself.
  std::vector<EngineAction> on_new_entry(const InnerLogEntry& entry) {
    std::vector<EngineAction> acts;
    if (phase_ == Phase::Active || phase_ == Phase::ShutDown) return acts;
    const auto* sys = std::get_if<SystemTx>(&entry.content);
    if (!sys) return acts;
    const auto* done = std::get_if<Done>(sys);
    if (!done) return acts;
    if (!cert_) {
      buffered_dones_.push_back(*done);
      return acts;
    }
    count_done(*done, acts);
    return acts;
  }

 private:
  void set_phase(Phase to, std::vector<EngineAction>& acts) {
    acts.push_back(ActPhase{phase_, to});
    phase_ = to;
  }

  void on_epoch_change(const EpochChange& ec, Pos pos, std::vector<EngineAction>& acts) {
    if (phase_ != Phase::Idle && phase_ != Phase::AwaitingReady) return;
    if (ec.from != old_config_.epoch || ec.next.epoch <= old_config_.epoch) {
      acts.push_back(ActNote{"ec_ignored", "bad epoch numbering"});
      return;
    }
    if (auto violation = validate_epoch_config(ec.next)) {
      acts.push_back(ActNote{"ec_ignored", *violation});
      return;
    }
    acts.push_back(ActEcObserved{ec.next.epoch, pos});
    const bool preempting = phase_ == Phase::AwaitingReady;
    if (preempting) {
      acts.push_back(ActPreempted{pending_->next.epoch, ec.next.epoch, pos});
      // An incoming replica whose own epoch just got superseded abandons its
      // prepare entirely.
      if (role_ == Role::Incoming && own_config_ && pending_->next == *own_config_ &&
          !(ec.next == *own_config_)) {
        pending_ = ec;
        set_phase(Phase::ShutDown, acts);
        acts.push_back(ActAbortPrepare{own_config_->epoch});
        return;
      }
      // The diagram stays in AwaitingReady; the expected-signer set and the
      // pending hash are replaced and the counted set resets.
      acts.push_back(ActPhase{Phase::AwaitingReady, Phase::AwaitingReady});
    }
    pending_ = ec;
    pending_hash_ = epoch_change_hash(ec);
    counted_ready_.clear();
    if (!preempting) set_phase(Phase::AwaitingReady, acts);
    if (role_ == Role::Incoming && own_config_ && ec.next == *own_config_) {
      Ready rd;
      rd.from = old_config_.epoch;
      rd.to = own_config_->epoch;
      rd.ec_hash = pending_hash_;
      rd.signer = self_;
      rd.sig = sign(rd.signed_bytes(), key_);
      acts.push_back(ActSubmitReady{rd});
    }
  }

  void on_ready(const Ready& rd, Pos pos, std::vector<EngineAction>& acts) {
    if (phase_ != Phase::AwaitingReady) {
      acts.push_back(ActNote{"ready_ignored", "no pending transition"});
      return;
    }
    if (rd.ec_hash != pending_hash_) {
      acts.push_back(ActNote{"ready_ignored", "stale epoch-change hash"});
      return;
    }
    if (!pending_->next.is_member(rd.signer)) {
      acts.push_back(ActNote{"ready_ignored", "signer not in next config"});
      return;
    }
    if (counted_ready_.count(rd.signer.index)) {
      acts.push_back(ActNote{"ready_ignored", "duplicate signer"});
      return;
    }
    if (!verify(rd.signed_bytes(), rd.sig, rd.signer.pub)) {
      acts.push_back(ActNote{"ready_ignored", "bad signature"});
      return;
    }
    counted_ready_.insert(rd.signer.index);
    acts.push_back(
        ActReadyCounted{rd.signer, static_cast<std::uint32_t>(counted_ready_.size()), pos});
    if (counted_ready_.size() == pending_->next.members.size()) form_handover(pos, acts);
  }

  // All Ready transactions are committed; h is the position of the last one.
  void form_handover(Pos h, std::vector<EngineAction>& acts) {
    HandoverCertificate cert;
    cert.old_epoch = old_config_.epoch;
    cert.next_config = pending_->next;
    cert.h = h;
    cert.prev_cert_hash = chain_tip_;
    cert_ = cert;
    set_phase(Phase::HandoverFormed, acts);
    acts.push_back(ActHandover{cert, role_ == Role::Outgoing});
    if (role_ == Role::Outgoing) {
      Done d;
      d.cert = cert;
      d.signer = self_;
      d.sig = sign(cert.bytes(), key_);
      acts.push_back(ActSubmitDone{d});
    }
    set_phase(Phase::AwaitingDone, acts);
    auto buffered = std::move(buffered_dones_);
    buffered_dones_.clear();
    for (const auto& d : buffered) {
      if (phase_ != Phase::AwaitingDone) break;
      count_done(d, acts);
    }
  }

  void count_done(const Done& d, std::vector<EngineAction>& acts) {
    if (!old_config_.is_member(d.signer)) {
      acts.push_back(ActNote{"done_ignored", "signer not an old-epoch member"});
      return;
    }
    if (!(d.cert == *cert_)) {
      acts.push_back(ActDoneMismatch{d.signer});
      return;
    }
    if (counted_done_.count(d.signer.index)) {
      acts.push_back(ActNote{"done_ignored", "duplicate signer"});
      return;
    }
    if (!d.sig_valid()) {
      acts.push_back(ActNote{"done_ignored", "bad signature"});
      return;
    }
    counted_done_.insert(d.signer.index);
    done_sigs_.emplace_back(d.signer, d.sig);
    acts.push_back(ActDoneCounted{d.signer, static_cast<std::uint32_t>(done_sigs_.size())});
    if (done_sigs_.size() < done_quorum()) return;
    // f_old+1 matching Done transactions: at least one is from a correct
    // old-epoch member, so the certificate is genuine and unique.
    TrustLink link;
    link.cert = *cert_;
    link.sigs = done_sigs_;
    if (role_ == Role::Incoming) {
      set_phase(Phase::Active, acts);
      acts.push_back(ActActivate{cert_->next_config.epoch, done_quorum(), link});
    } else {
      set_phase(Phase::ShutDown, acts);
      acts.push_back(ActShutdown{old_config_.epoch});
    }
  }

  Role role_;
  ReplicaId self_;
  SigningKey key_;
  EpochConfig old_config_;
  Hash chain_tip_;
  std::optional<EpochConfig> own_config_;  // incoming: the config we belong to

  Phase phase_ = Phase::Idle;
  std::optional<EpochChange> pending_;
  Hash pending_hash_;
  std::set<std::uint32_t> counted_ready_;
  std::optional<HandoverCertificate> cert_;
  std::set<std::uint32_t> counted_done_;
  std::vector<std::pair<ReplicaId, Signature>> done_sigs_;
  std::deque<Done> buffered_dones_;
};

}  // namespace relog
