// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "relog/engine.hpp"
#include "relog/records.hpp"
#include "relog/sim/trace.hpp"
#include "relog/types.hpp"

namespace relog::sim {

// Operator/deployment action waking a member of a freshly announced epoch.
// Trust in old_config is established afterwards by chain validation; the
// provision only supplies addressing.
struct MsgProvision {
  EpochConfig config;      // the epoch this replica belongs to
  EpochConfig old_config;  // the epoch currently running, to sync from
};

// Client or protocol submission into the recipient's consensus instance.
struct MsgSubmit {
  EpochId epoch = 0;
  EntryContent content;
};

// Sequencer internals.
struct MsgSeqForward {
  EpochId epoch = 0;
  EntryContent content;
};
struct MsgSeqAssign {
  EpochId epoch = 0;
  std::uint64_t era = 0;
  Pos pos = 0;
  EntryContent content;
};
struct MsgSeqHeartbeat {
  EpochId epoch = 0;
  std::uint64_t era = 0;
};

// Multi-lane internals. Lanes are member-order indices; a slot commits when a
// quorum acknowledges one value for it. Noop votes reuse MsgLaneAck with the
// slot's noop content key.
struct MsgLaneProposal {
  EpochId epoch = 0;
  std::uint32_t lane = 0;
  std::uint64_t slot = 0;
  EntryContent content;
};
struct MsgLaneAck {
  EpochId epoch = 0;
  std::uint32_t lane = 0;
  std::uint64_t slot = 0;
  Hash key;
  std::uint32_t voter = 0;  // member-order index
};

// Learner protocol: released inner-log entries served by epoch members.
struct MsgFetchReq {
  EpochId epoch = 0;
  Pos from_pos = 1;
  ActorRef requester;
};
struct MsgFetchResp {
  EpochId epoch = 0;
  Pos from_pos = 1;
  std::vector<InnerLogEntry> entries;
};

// Snapshot for incoming-replica state sync: trust chain plus the outer-log
// prefix emitted from epochs before the one being synced.
struct MsgSyncReq {
  EpochId epoch = 0;
  ActorRef requester;
};
struct MsgSyncResp {
  EpochId epoch = 0;
  std::vector<TrustLink> chain;
  std::vector<OuterEntry> outer_prefix;
};

using Message =
    std::variant<MsgProvision, MsgSubmit, MsgSeqForward, MsgSeqAssign, MsgSeqHeartbeat,
                 MsgLaneProposal, MsgLaneAck, MsgFetchReq, MsgFetchResp, MsgSyncReq, MsgSyncResp>;

inline const char* kind_name(const Message& m) {
  static constexpr const char* names[] = {"provision", "submit",   "seq_fwd",   "seq_assign",
                                          "seq_hb",    "lane_prop", "lane_ack", "fetch_req",
                                          "fetch_resp", "sync_req", "sync_resp"};
  return names[m.index()];
}

// Self-scheduled wakeups.
struct TimSeqTick {};
struct TimLaneSelfFill {};
struct TimLaneFill {
  std::uint32_t lane = 0;
  std::uint64_t slot = 0;
};
struct TimLearnerPoll {
  EpochId epoch = 0;
};

using TimerPayload = std::variant<TimSeqTick, TimLaneSelfFill, TimLaneFill, TimLearnerPoll>;

}  // namespace relog::sim
