// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relog/types.hpp"

namespace relog::sim {

/* Trace model: one flat record per observable event, stamped with simulated
   time and the acting replica. A trace is a pure function of (scenario, seed)
   and serializes to line-delimited text with a stable field order, so rerun
   traces diff clean and the verifier can work from a file alone. */

struct ActorRef {
  EpochId epoch = 0;     // 0 = non-replica
  std::uint32_t index = 0;  // under epoch 0: 0 = harness, 1 = client

  auto operator<=>(const ActorRef&) const = default;

  bool is_replica() const { return epoch != 0; }

  std::string str() const {
    if (epoch == 0) return index == 1 ? "client" : "-";
    return std::to_string(epoch) + "/" + std::to_string(index);
  }

  static ActorRef parse(const std::string& s) {
    ActorRef a;
    if (s == "-") return a;
    if (s == "client") {
      a.index = 1;
      return a;
    }
    auto slash = s.find('/');
    a.epoch = std::stoull(s.substr(0, slash));
    a.index = static_cast<std::uint32_t>(std::stoul(s.substr(slash + 1)));
    return a;
  }
};

enum class Ev : std::uint8_t {
  Meta,
  Config,
  ClientSubmit,
  Fault,
  MsgSend,
  MsgDeliver,
  DecideInternal,
  InnerCommit,
  OuterEmit,
  OuterAdopt,
  PhaseChange,
  EcObserved,
  ReadyCounted,
  DoneCounted,
  DoneMismatch,
  Preempted,
  CertFormed,
  Activated,
  HaltConsensus,
  AbortPrepare,
  SyncInstalled,
  EpochBoundary,
  Note,
  Violation,
};

inline const char* name(Ev e) {
  switch (e) {
    case Ev::Meta: return "meta";
    case Ev::Config: return "config";
    case Ev::ClientSubmit: return "submit";
    case Ev::Fault: return "fault";
    case Ev::MsgSend: return "send";
    case Ev::MsgDeliver: return "deliver";
    case Ev::DecideInternal: return "decide";
    case Ev::InnerCommit: return "inner";
    case Ev::OuterEmit: return "outer";
    case Ev::OuterAdopt: return "adopt";
    case Ev::PhaseChange: return "phase";
    case Ev::EcObserved: return "ec";
    case Ev::ReadyCounted: return "ready";
    case Ev::DoneCounted: return "done";
    case Ev::DoneMismatch: return "done_mismatch";
    case Ev::Preempted: return "preempt";
    case Ev::CertFormed: return "cert";
    case Ev::Activated: return "activate";
    case Ev::HaltConsensus: return "halt";
    case Ev::AbortPrepare: return "abort";
    case Ev::SyncInstalled: return "sync";
    case Ev::EpochBoundary: return "boundary";
    case Ev::Note: return "note";
    case Ev::Violation: return "violation";
  }
  return "?";
}

struct TraceEvent {
  Ev kind = Ev::Note;
  Time t = 0;
  ActorRef actor;
  ActorRef peer;             // message recipient / counted signer / tx target
  EpochId epoch = 0;         // primary epoch the event concerns
  EpochId target_epoch = 0;  // next epoch (ec / cert / preempt / boundary)
  Pos pos = 0;               // inner or slot position
  Pos outer_pos = 0;
  std::uint64_t n1 = 0;  // count / msg id / amount / attempt
  std::uint64_t n2 = 0;  // until / aux
  std::string s1;        // names: content kind, phase-from, fault kind, ...
  std::string s2;        // phase-to / detail / link hex
  std::string txid;      // hex
  std::string key;       // content key or cert hash, hex
  std::string payload;   // hex (client submissions)

  std::string line() const;
};

namespace detail {
inline std::string tok(const std::string& s) {
  std::string o = s;
  std::replace(o.begin(), o.end(), ' ', '_');
  return o.empty() ? "_" : o;
}
}  // namespace detail

inline std::string TraceEvent::line() const {
  std::ostringstream o;
  o << name(kind) << " t=" << t << " a=" << actor.str();
  switch (kind) {
    case Ev::Meta:
      o << " name=" << detail::tok(s1) << " seed=" << n1 << " horizon=" << n2
        << " exval=" << detail::tok(s2) << " resubmit=" << pos << " dmin=" << epoch
        << " dmax=" << target_epoch;
      break;
    case Ev::Config:
      o << " epoch=" << epoch << " kind=" << s1 << " fm=" << s2 << " f=" << n1
        << " members=" << payload;  // comma-separated indices
      break;
    case Ev::ClientSubmit:
      o << " txid=" << txid << " to=" << peer.str() << " attempt=" << n1
        << " payload=" << payload;
      break;
    case Ev::Fault:
      o << " kind=" << s1 << " target=" << peer.str() << " amount=" << n1 << " until=" << n2;
      break;
    case Ev::MsgSend:
      o << " id=" << n1 << " to=" << peer.str() << " kind=" << s1;
      break;
    case Ev::MsgDeliver:
      o << " id=" << n1;
      break;
    case Ev::DecideInternal:
      o << " epoch=" << epoch << " slot=" << pos << " key=" << key;
      break;
    case Ev::InnerCommit:
      o << " epoch=" << epoch << " pos=" << pos << " kind=" << s1 << " txid=" << txid
        << " key=" << key << " tepoch=" << target_epoch << " signer=" << peer.str();
      break;
    case Ev::OuterEmit:
    case Ev::OuterAdopt:
      o << " opos=" << outer_pos << " txid=" << txid << " sepoch=" << epoch << " spos=" << pos;
      break;
    case Ev::PhaseChange:
      o << " attempt=" << n1 << " from=" << s1 << " to=" << s2;
      break;
    case Ev::EcObserved:
      o << " tepoch=" << target_epoch << " pos=" << pos;
      break;
    case Ev::ReadyCounted:
      o << " signer=" << peer.str() << " count=" << n1 << " pos=" << pos;
      break;
    case Ev::DoneCounted:
      o << " signer=" << peer.str() << " count=" << n1;
      break;
    case Ev::DoneMismatch:
      o << " signer=" << peer.str();
      break;
    case Ev::Preempted:
      o << " old=" << n1 << " tepoch=" << target_epoch << " pos=" << pos;
      break;
    case Ev::CertFormed:
      o << " epoch=" << epoch << " tepoch=" << target_epoch << " h=" << pos << " hash=" << key
        << " signed=" << n1;
      break;
    case Ev::Activated:
      o << " epoch=" << epoch << " count=" << n1 << " link=" << s2;
      break;
    case Ev::HaltConsensus:
    case Ev::AbortPrepare:
      o << " epoch=" << epoch;
      break;
    case Ev::SyncInstalled:
      o << " epoch=" << epoch << " outer_len=" << n1 << " chain_len=" << n2;
      break;
    case Ev::EpochBoundary:
      o << " epoch=" << epoch << " tepoch=" << target_epoch;
      break;
    case Ev::Note:
    case Ev::Violation:
      o << " kind=" << detail::tok(s1) << " detail=" << detail::tok(s2);
      break;
  }
  return o.str();
}

struct Trace {
  std::vector<TraceEvent> events;

  void add(TraceEvent e) { events.push_back(std::move(e)); }

  std::string text() const {
    std::string out;
    for (const auto& e : events) {
      out += e.line();
      out += '\n';
    }
    return out;
  }
};

// Parses one serialized trace line. Field values never contain spaces.
inline TraceEvent parse_trace_line(const std::string& line) {
  std::istringstream in(line);
  std::string kind_name;
  in >> kind_name;
  TraceEvent e;
  bool found = false;
  for (int k = 0; k <= static_cast<int>(Ev::Violation); ++k) {
    if (kind_name == name(static_cast<Ev>(k))) {
      e.kind = static_cast<Ev>(k);
      found = true;
      break;
    }
  }
  if (!found) throw CodecError("unknown trace event: " + kind_name);
  std::map<std::string, std::string> kv;
  std::string tokpair;
  while (in >> tokpair) {
    auto eq = tokpair.find('=');
    if (eq == std::string::npos) throw CodecError("bad trace field: " + tokpair);
    kv[tokpair.substr(0, eq)] = tokpair.substr(eq + 1);
  }
  auto num = [&](const char* k) -> std::uint64_t {
    auto it = kv.find(k);
    return it == kv.end() ? 0 : std::stoull(it->second);
  };
  auto str = [&](const char* k) -> std::string {
    auto it = kv.find(k);
    return it == kv.end() ? std::string() : it->second;
  };
  auto actor = [&](const char* k) -> ActorRef {
    auto it = kv.find(k);
    return it == kv.end() ? ActorRef{} : ActorRef::parse(it->second);
  };
  e.t = num("t");
  e.actor = actor("a");
  switch (e.kind) {
    case Ev::Meta:
      e.s1 = str("name");
      e.n1 = num("seed");
      e.n2 = num("horizon");
      e.s2 = str("exval");
      e.pos = num("resubmit");
      e.epoch = num("dmin");
      e.target_epoch = num("dmax");
      break;
    case Ev::Config:
      e.epoch = num("epoch");
      e.s1 = str("kind");
      e.s2 = str("fm");
      e.n1 = num("f");
      e.payload = str("members");
      break;
    case Ev::ClientSubmit:
      e.txid = str("txid");
      e.peer = actor("to");
      e.n1 = num("attempt");
      e.payload = str("payload");
      break;
    case Ev::Fault:
      e.s1 = str("kind");
      e.peer = actor("target");
      e.n1 = num("amount");
      e.n2 = num("until");
      break;
    case Ev::MsgSend:
      e.n1 = num("id");
      e.peer = actor("to");
      e.s1 = str("kind");
      break;
    case Ev::MsgDeliver:
      e.n1 = num("id");
      break;
    case Ev::DecideInternal:
      e.epoch = num("epoch");
      e.pos = num("slot");
      e.key = str("key");
      break;
    case Ev::InnerCommit:
      e.epoch = num("epoch");
      e.pos = num("pos");
      e.s1 = str("kind");
      e.txid = str("txid");
      e.key = str("key");
      e.target_epoch = num("tepoch");
      e.peer = actor("signer");
      break;
    case Ev::OuterEmit:
    case Ev::OuterAdopt:
      e.outer_pos = num("opos");
      e.txid = str("txid");
      e.epoch = num("sepoch");
      e.pos = num("spos");
      break;
    case Ev::PhaseChange:
      e.n1 = num("attempt");
      e.s1 = str("from");
      e.s2 = str("to");
      break;
    case Ev::EcObserved:
      e.target_epoch = num("tepoch");
      e.pos = num("pos");
      break;
    case Ev::ReadyCounted:
      e.peer = actor("signer");
      e.n1 = num("count");
      e.pos = num("pos");
      break;
    case Ev::DoneCounted:
      e.peer = actor("signer");
      e.n1 = num("count");
      break;
    case Ev::DoneMismatch:
      e.peer = actor("signer");
      break;
    case Ev::Preempted:
      e.n1 = num("old");
      e.target_epoch = num("tepoch");
      e.pos = num("pos");
      break;
    case Ev::CertFormed:
      e.epoch = num("epoch");
      e.target_epoch = num("tepoch");
      e.pos = num("h");
      e.key = str("hash");
      e.n1 = num("signed");
      break;
    case Ev::Activated:
      e.epoch = num("epoch");
      e.n1 = num("count");
      e.s2 = str("link");
      break;
    case Ev::HaltConsensus:
    case Ev::AbortPrepare:
      e.epoch = num("epoch");
      break;
    case Ev::SyncInstalled:
      e.epoch = num("epoch");
      e.n1 = num("outer_len");
      e.n2 = num("chain_len");
      break;
    case Ev::EpochBoundary:
      e.epoch = num("epoch");
      e.target_epoch = num("tepoch");
      break;
    case Ev::Note:
    case Ev::Violation:
      e.s1 = str("kind");
      e.s2 = str("detail");
      break;
  }
  return e;
}

inline Trace parse_trace(const std::string& text) {
  Trace tr;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    tr.add(parse_trace_line(line));
  }
  return tr;
}

}  // namespace relog::sim
