// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "relog/consensus/port.hpp"
#include "relog/sim/messages.hpp"
#include "relog/types.hpp"

namespace relog::consensus {

/* Reference implementation A: a leader sequences submissions in arrival
   order and broadcasts assignments; every member's decided stream is the
   assignment stream. Stands in for a leader-based CFT protocol.

   Leader failover is deterministic round-robin on heartbeat silence. The
   failover timeout exceeds the network's maximum delay by a wide margin, so
   by the time a new leader starts assigning it has seen every assignment the
   dead leader made; positions therefore never conflict. That bounded-delay
   assumption is a property of the simulated network, which is exactly the
   setting this reference implementation is specified for. */
class Sequencer {
 public:
  struct Wiring {
    std::function<void(std::uint32_t, sim::Message)> send;  // by member-order index
    std::function<void(Time, sim::TimerPayload)> schedule;
    std::function<void(Pos, const EntryContent&)> internal_commit;
    std::function<Time()> now;
  };

  Sequencer(EpochConfig cfg, std::uint32_t self_order, Time max_link_delay, Wiring w)
      : cfg_(std::move(cfg)),
        self_(self_order),
        hb_interval_(2 * max_link_delay),
        failover_timeout_(6 * max_link_delay),
        w_(std::move(w)) {}

  void start() {
    started_ = true;
    last_activity_ = w_.now();
    w_.schedule(hb_interval_, sim::TimSeqTick{});
  }

  bool halted() const { return halted_; }
  void halt() { halted_ = true; }

  // propose(): accepted unless halted. Duplicate contents are accepted and
  // collapsed by the leader's assignment dedup plus the release buffer.
  bool submit(const EntryContent& content) {
    if (halted_ || !started_) return false;
    Hash key = content_key(content);
    if (keys_seen_.count(key)) return true;
    keys_seen_.insert(key);
    if (leader() == self_) {
      assign(content);
    } else {
      pending_.emplace_back(key, content);
      w_.send(leader(), sim::MsgSeqForward{cfg_.epoch, content});
    }
    return true;
  }

  void on_forward(const sim::MsgSeqForward& m) {
    if (halted_) return;
    if (leader() == self_) {
      assign(m.content);
    } else {
      // Stale routing during failover; pass along.
      Hash key = content_key(m.content);
      if (!keys_seen_.count(key)) {
        keys_seen_.insert(key);
        pending_.emplace_back(key, m.content);
      }
      w_.send(leader(), sim::MsgSeqForward{cfg_.epoch, m.content});
    }
  }

  void on_assign(const sim::MsgSeqAssign& m) {
    if (halted_) return;
    if (m.era >= era_) last_activity_ = w_.now();
    if (m.era > era_) era_ = m.era;
    auto [it, fresh] = assigned_.emplace(m.pos, m.content);
    if (!fresh) return;  // duplicate delivery
    keys_seen_.insert(content_key(m.content));
    drop_pending(content_key(m.content));
    w_.internal_commit(m.pos, m.content);
  }

  void on_heartbeat(const sim::MsgSeqHeartbeat& m) {
    if (halted_) return;
    if (m.era >= era_) {
      era_ = m.era;
      last_activity_ = w_.now();
    }
  }

  void on_tick() {
    if (halted_ || !started_) return;
    if (leader() == self_) {
      for (std::uint32_t i = 0; i < cfg_.members.size(); ++i)
        w_.send(i, sim::MsgSeqHeartbeat{cfg_.epoch, era_});
    } else if (w_.now() - last_activity_ > failover_timeout_) {
      ++era_;
      last_activity_ = w_.now();
      if (leader() == self_) {
        // Continue past everything the previous leader assigned.
        next_pos_ = assigned_.empty() ? 1 : assigned_.rbegin()->first + 1;
        auto pend = std::move(pending_);
        pending_.clear();
        for (auto& [key, content] : pend)
          if (!is_assigned(key)) assign(content);
        for (std::uint32_t i = 0; i < cfg_.members.size(); ++i)
          w_.send(i, sim::MsgSeqHeartbeat{cfg_.epoch, era_});
      } else {
        for (auto& [key, content] : pending_)
          w_.send(leader(), sim::MsgSeqForward{cfg_.epoch, content});
      }
    }
    w_.schedule(hb_interval_, sim::TimSeqTick{});
  }

  std::uint32_t leader() const {
    return static_cast<std::uint32_t>(era_ % cfg_.members.size());
  }

 private:
  void assign(const EntryContent& content) {
    Hash key = content_key(content);
    if (is_assigned(key)) return;
    Pos pos = next_pos_++;
    assigned_keys_.insert(key);
    for (std::uint32_t i = 0; i < cfg_.members.size(); ++i)
      w_.send(i, sim::MsgSeqAssign{cfg_.epoch, era_, pos, content});
  }

  bool is_assigned(const Hash& key) const { return assigned_keys_.count(key) > 0; }

  void drop_pending(const Hash& key) {
    assigned_keys_.insert(key);
    for (auto it = pending_.begin(); it != pending_.end(); ++it) {
      if (it->first == key) {
        pending_.erase(it);
        return;
      }
    }
  }

  EpochConfig cfg_;
  std::uint32_t self_;
  Time hb_interval_;
  Time failover_timeout_;
  Wiring w_;

  bool started_ = false;
  bool halted_ = false;
  std::uint64_t era_ = 0;
  Time last_activity_ = 0;
  Pos next_pos_ = 1;
  std::map<Pos, EntryContent> assigned_;
  std::unordered_set<Hash> assigned_keys_;  // leader view: content already sequenced
  std::unordered_set<Hash> keys_seen_;
  std::vector<std::pair<Hash, EntryContent>> pending_;
};

}  // namespace relog::consensus
