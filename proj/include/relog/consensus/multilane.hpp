// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "relog/consensus/port.hpp"
#include "relog/sim/messages.hpp"
#include "relog/types.hpp"

namespace relog::consensus {

/* Reference implementation B: every member owns a lane; lane slots interleave
   round-robin into global positions (slot s of lane l maps to s*n + l + 1).
   A slot commits once a quorum acknowledges one value for it, so commits
   complete out of global order: position h can be the agreed handover point
   while positions beyond h are already internally committed. The release
   buffer still delivers in order.

   Quiet lanes are kept contiguous with noops. A live owner fills its own
   empty slots after a short holddown once it sees higher slots elsewhere; a
   silent owner's slots are filled by the others voting for the slot's noop
   value after a much longer timeout. Members acknowledge at most one value
   per slot, so two values can never both reach a quorum. If an owner's
   proposal loses its slot to a noop, the owner proposes the content again in
   a fresh slot. */
class MultiLane {
 public:
  struct Wiring {
    std::function<void(std::uint32_t, sim::Message)> send;  // by member-order index
    std::function<void(Time, sim::TimerPayload)> schedule;
    std::function<void(Pos, const EntryContent&)> internal_commit;
    std::function<Time()> now;
  };

  MultiLane(EpochConfig cfg, std::uint32_t self_order, Time max_link_delay, Time fill_holddown,
            Wiring w)
      : cfg_(std::move(cfg)),
        self_(self_order),
        n_(static_cast<std::uint32_t>(cfg_.members.size())),
        holddown_(fill_holddown),
        fill_timeout_(10 * max_link_delay + fill_holddown),
        w_(std::move(w)) {
    lanes_.resize(n_);
    quorum_ = cfg_.fault_model == FaultModel::Byzantine ? 2 * cfg_.f + 1 : cfg_.f + 1;
  }

  void start() { started_ = true; }
  bool halted() const { return halted_; }
  void halt() { halted_ = true; }

  bool submit(const EntryContent& content) {
    if (halted_ || !started_) return false;
    Hash key = content_key(content);
    if (keys_seen_.count(key)) return true;
    propose(content);
    return true;
  }

  void on_proposal(const sim::MsgLaneProposal& m) {
    if (halted_ || m.lane >= n_) return;
    auto& lane = lanes_[m.lane];
    if (!lane.proposals.count(m.slot)) {
      lane.proposals.emplace(m.slot, m.content);
      keys_seen_.insert(content_key(m.content));
    }
    if (m.slot >= max_slot_) max_slot_ = m.slot;
    maybe_ack(m.lane, m.slot);
    if (m.lane != self_ && m.slot >= my_next_slot_) arm_self_fill(m.slot);
    check_frontier();
  }

  void on_ack(const sim::MsgLaneAck& m) {
    if (halted_ || m.lane >= n_ || m.voter >= n_) return;
    auto& votes = lanes_[m.lane].acks[m.slot][m.key];
    votes.insert(m.voter);
    try_commit(m.lane, m.slot, m.key);
  }

  void on_self_fill() {
    fill_armed_ = false;
    if (halted_) return;
    // Noops only up to existing activity; the log must not grow on its own.
    while (my_next_slot_ <= fill_target_) {
      if (!lanes_[self_].proposals.count(my_next_slot_)) propose_noop();
      else ++my_next_slot_;
    }
    check_frontier();
  }

  void on_fill_timer(const sim::TimLaneFill& t) {
    if (halted_ || t.lane >= n_) return;
    auto& lane = lanes_[t.lane];
    lane.fill_scheduled.erase(t.slot);
    if (lane.proposals.count(t.slot) || lane.committed.count(t.slot)) return;
    // Presume the owner silent: vote noop for the whole known range of the lane.
    for (std::uint64_t s = t.slot; s <= max_slot_; ++s)
      if (!lane.proposals.count(s) && !lane.committed.count(s)) vote(t.lane, s, noop_key(t.lane, s));
  }

 private:
  struct Lane {
    std::map<std::uint64_t, EntryContent> proposals;
    std::map<std::uint64_t, std::map<Hash, std::set<std::uint32_t>>> acks;
    std::map<std::uint64_t, EntryContent> committed;
    std::set<std::uint64_t> fill_scheduled;
  };

  Pos global_pos(std::uint32_t lane, std::uint64_t slot) const {
    return slot * n_ + lane + 1;
  }

  Hash noop_key(std::uint32_t lane, std::uint64_t slot) const {
    return content_key(Noop{cfg_.epoch, lane, slot});
  }

  void propose(const EntryContent& content) {
    std::uint64_t slot = my_next_slot_++;
    keys_seen_.insert(content_key(content));
    if (!is_noop(content)) my_proposals_.emplace(slot, content);
    for (std::uint32_t i = 0; i < n_; ++i)
      w_.send(i, sim::MsgLaneProposal{cfg_.epoch, self_, slot, content});
  }

  void propose_noop() {
    std::uint64_t slot = my_next_slot_;
    propose(Noop{cfg_.epoch, self_, slot});
  }

  void maybe_ack(std::uint32_t lane, std::uint64_t slot) {
    auto& l = lanes_[lane];
    auto it = l.proposals.find(slot);
    if (it == l.proposals.end()) return;
    vote(lane, slot, content_key(it->second));
  }

  // At most one acknowledged value per slot, ever.
  void vote(std::uint32_t lane, std::uint64_t slot, const Hash& key) {
    auto [it, fresh] = my_acked_.emplace(std::make_pair(lane, slot), key);
    if (!fresh) return;
    for (std::uint32_t i = 0; i < n_; ++i)
      w_.send(i, sim::MsgLaneAck{cfg_.epoch, lane, slot, key, self_});
  }

  void try_commit(std::uint32_t lane, std::uint64_t slot, const Hash& key) {
    auto& l = lanes_[lane];
    if (l.committed.count(slot)) return;
    auto sit = l.acks.find(slot);
    if (sit == l.acks.end()) return;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end() || kit->second.size() < quorum_) return;
    EntryContent content;
    if (key == noop_key(lane, slot)) {
      content = Noop{cfg_.epoch, lane, slot};
    } else {
      auto pit = l.proposals.find(slot);
      if (pit == l.proposals.end() || content_key(pit->second) != key) return;
      content = pit->second;
    }
    l.committed.emplace(slot, content);
    keys_seen_.insert(key);
    committed_keys_.insert(key);
    w_.internal_commit(global_pos(lane, slot), content);
    if (lane == self_) {
      // A noop beat our proposal to this slot: the content was decided
      // nowhere, so give it a fresh slot.
      auto mine = my_proposals_.find(slot);
      if (mine != my_proposals_.end()) {
        if (content_key(mine->second) != key && !committed_keys_.count(content_key(mine->second))) {
          EntryContent again = mine->second;
          my_proposals_.erase(mine);
          propose(again);
        } else {
          my_proposals_.erase(mine);
        }
      }
    }
    check_frontier();
  }

  // Fill logic runs off the lowest uncommitted global position; it only acts
  // when something beyond the frontier is waiting to be released.
  void check_frontier() {
    while (true) {
      auto [lane, slot] = decompose(frontier_);
      if (!lanes_[lane].committed.count(slot)) break;
      ++frontier_;
    }
    if (!activity_beyond_frontier()) return;
    auto [lane, slot] = decompose(frontier_);
    auto& l = lanes_[lane];
    if (l.proposals.count(slot)) return;  // ack round in progress
    if (lane == self_) {
      if (slot >= my_next_slot_) arm_self_fill(slot);
      return;
    }
    if (!l.fill_scheduled.count(slot) && !my_acked_.count({lane, slot})) {
      l.fill_scheduled.insert(slot);
      w_.schedule(fill_timeout_, sim::TimLaneFill{lane, slot});
    }
  }

  bool activity_beyond_frontier() const {
    for (std::uint32_t lane = 0; lane < n_; ++lane) {
      const auto& l = lanes_[lane];
      if (!l.proposals.empty() && global_pos(lane, l.proposals.rbegin()->first) > frontier_)
        return true;
      if (!l.committed.empty() && global_pos(lane, l.committed.rbegin()->first) > frontier_)
        return true;
    }
    return false;
  }

  std::pair<std::uint32_t, std::uint64_t> decompose(Pos global) const {
    return {static_cast<std::uint32_t>((global - 1) % n_), (global - 1) / n_};
  }

  void arm_self_fill(std::uint64_t upto) {
    if (upto > fill_target_) fill_target_ = upto;
    if (!fill_armed_) {
      fill_armed_ = true;
      w_.schedule(holddown_, sim::TimLaneSelfFill{});
    }
  }

  EpochConfig cfg_;
  std::uint32_t self_;
  std::uint32_t n_;
  std::uint32_t quorum_;
  Time holddown_;
  Time fill_timeout_;
  Wiring w_;

  bool started_ = false;
  bool halted_ = false;
  std::vector<Lane> lanes_;
  std::uint64_t my_next_slot_ = 0;
  std::uint64_t max_slot_ = 0;
  std::uint64_t fill_target_ = 0;
  bool fill_armed_ = false;
  Pos frontier_ = 1;
  std::map<std::pair<std::uint32_t, std::uint64_t>, Hash> my_acked_;
  std::map<std::uint64_t, EntryContent> my_proposals_;  // awaiting commit in my lane
  std::unordered_set<Hash> keys_seen_;
  std::unordered_set<Hash> committed_keys_;
};

}  // namespace relog::consensus
