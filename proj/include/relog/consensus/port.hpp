// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <unordered_set>

#include "relog/records.hpp"
#include "relog/types.hpp"

namespace relog::consensus {

/* Delivery side of the consensus port. Implementations decide values for
   slots, possibly out of order; this buffer releases them to the local
   consumer strictly in slot order and maps them onto inner-log positions.

   Duplicate contents (the same client transaction proposed through two
   replicas, or a system transaction submitted to every member) are dropped
   deterministically at release: only a content's first slot receives an inner
   position. Every correct replica sees the same slot sequence, so all derive
   the identical inner log, which gives at-most-once per inner log without
   coordination among proposers. Noops keep their slot-unique identity and do
   occupy positions. */
class InOrderRelease {
 public:
  using ReleaseFn = std::function<void(const InnerLogEntry&)>;

  InOrderRelease(EpochId epoch, ReleaseFn fn) : epoch_(epoch), release_(std::move(fn)) {}

  void offer(Pos slot_pos, EntryContent content) {
    pending_.emplace(slot_pos, std::move(content));
    drain();
  }

  Pos released() const { return next_inner_ - 1; }

 private:
  void drain() {
    auto it = pending_.find(next_slot_);
    while (it != pending_.end()) {
      Hash key = content_key(it->second);
      if (released_keys_.insert(key).second) {
        InnerLogEntry e;
        e.epoch = epoch_;
        e.position = next_inner_++;
        e.content = std::move(it->second);
        release_(e);
      }
      pending_.erase(it);
      ++next_slot_;
      it = pending_.find(next_slot_);
    }
  }

  EpochId epoch_;
  ReleaseFn release_;
  Pos next_slot_ = 1;
  Pos next_inner_ = 1;
  std::map<Pos, EntryContent> pending_;
  std::unordered_set<Hash> released_keys_;
};

}  // namespace relog::consensus
