// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relog/sanitizer.hpp"
#include "relog/sim/trace.hpp"
#include "relog/types.hpp"

namespace relog::verify {

using sim::ActorRef;
using sim::Ev;
using sim::Trace;
using sim::TraceEvent;

/* Indexed view over a trace: everything the property checks and the oracle
   need, keyed for direct lookup. Works identically on a live trace and on one
   parsed back from a file. */
struct ParsedTrace {
  // meta
  std::string scenario_name;
  std::uint64_t seed = 0;
  Time horizon = 0;
  Time delay_min = 1, delay_max = 1;
  Time resubmit_timeout = 0;
  std::string exval_name = "accept_all";

  std::map<EpochId, EpochConfig> configs;
  Hash genesis_anchor;

  // fault bookkeeping
  std::set<ActorRef> crashed;      // crash + byz_silence
  std::set<ActorRef> byzantine;    // byz_silence + equivocate + tamper
  std::map<ActorRef, Time> crash_time;
  Time max_extra_delay = 0;

  struct OuterRec {
    Pos outer_pos;
    std::string txid;
    EpochId source_epoch;
    Pos source_pos;
    Time t;
    bool adopted;
    std::size_t event_index;
  };
  struct InnerRec {
    Pos pos;
    std::string kind;  // tx | ec | ready | done | noop
    std::string txid;
    std::string key;
    EpochId target_epoch;
    ActorRef signer;
    Time t;
    std::size_t event_index;
  };
  struct SubmitRec {
    std::string txid;
    Bytes payload;
    Time first_t;
    bool resubmit;
  };
  struct CertRec {
    EpochId old_epoch, next_epoch;
    Pos h;
    std::string hash;
    Time t;
    ActorRef actor;
    std::size_t event_index;
  };
  struct ActivationRec {
    EpochId epoch;
    std::uint64_t counted;
    std::string link_hex;
    Time t;
    ActorRef actor;
    std::size_t event_index;
  };

  std::map<ActorRef, std::vector<OuterRec>> outer;
  std::map<ActorRef, std::map<EpochId, std::vector<InnerRec>>> inner;
  std::map<std::string, SubmitRec> submits;  // by txid hex
  std::vector<CertRec> certs;
  std::vector<ActivationRec> activations;
  std::set<EpochId> preempted_targets;  // abandoned by preemption (correct observers)

  // per-actor ordered event indices for phase / quorum checks
  std::map<ActorRef, std::vector<std::size_t>> actor_events;

  const Trace* trace = nullptr;

  bool is_correct(const ActorRef& a) const {
    return !crashed.count(a) && !byzantine.count(a);
  }

  std::vector<ActorRef> correct_members(EpochId e) const {
    std::vector<ActorRef> out;
    auto it = configs.find(e);
    if (it == configs.end()) return out;
    for (const auto& m : it->second.members) {
      ActorRef r{m.epoch, m.index};
      if (is_correct(r)) out.push_back(r);
    }
    return out;
  }

  // Highest epoch any correct replica activated; 1 if none.
  EpochId final_epoch() const {
    EpochId e = 1;
    for (const auto& a : activations)
      if (is_correct(a.actor) && a.epoch > e) e = a.epoch;
    return e;
  }
};

inline ParsedTrace parse(const Trace& tr) {
  ParsedTrace p;
  p.trace = &tr;
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    const TraceEvent& e = tr.events[i];
    if (e.actor.is_replica()) p.actor_events[e.actor].push_back(i);
    switch (e.kind) {
      case Ev::Meta:
        p.scenario_name = e.s1;
        p.seed = e.n1;
        p.horizon = e.n2;
        p.exval_name = e.s2;
        p.resubmit_timeout = e.pos;
        p.delay_min = e.epoch;
        p.delay_max = e.target_epoch;
        break;
      case Ev::Config: {
        std::vector<std::uint32_t> members;
        std::string cur;
        for (char c : e.payload + ",") {
          if (c == ',') {
            if (!cur.empty()) members.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
            cur.clear();
          } else {
            cur.push_back(c);
          }
        }
        FaultModel fm = e.s2 == "byzantine" ? FaultModel::Byzantine : FaultModel::Crash;
        ConsensusKind ck = e.s1 == "multilane" ? ConsensusKind::MultiLane : ConsensusKind::Sequencer;
        p.configs[e.epoch] =
            make_config(e.epoch, members, static_cast<std::uint32_t>(e.n1), fm, ck);
        break;
      }
      case Ev::ClientSubmit: {
        auto it = p.submits.find(e.txid);
        if (it == p.submits.end()) {
          ParsedTrace::SubmitRec r;
          r.txid = e.txid;
          r.payload = from_hex(e.payload);
          r.first_t = e.t;
          r.resubmit = e.n2 == 1;
          p.submits.emplace(e.txid, std::move(r));
        }
        break;
      }
      case Ev::Fault:
        if (e.s1 == "crash" || e.s1 == "byz_silence") {
          p.crashed.insert(e.peer);
          p.crash_time.emplace(e.peer, e.t);
        }
        if (e.s1 == "byz_silence" || e.s1 == "equivocate" || e.s1 == "tamper")
          p.byzantine.insert(e.peer);
        if (e.s1 == "delay") p.max_extra_delay = std::max(p.max_extra_delay, e.n1);
        break;
      case Ev::OuterEmit:
      case Ev::OuterAdopt:
        p.outer[e.actor].push_back(
            {e.outer_pos, e.txid, e.epoch, e.pos, e.t, e.kind == Ev::OuterAdopt, i});
        break;
      case Ev::InnerCommit:
        p.inner[e.actor][e.epoch].push_back(
            {e.pos, e.s1, e.txid, e.key, e.target_epoch, e.peer, e.t, i});
        break;
      case Ev::CertFormed:
        p.certs.push_back({e.epoch, e.target_epoch, e.pos, e.key, e.t, e.actor, i});
        break;
      case Ev::Activated:
        p.activations.push_back({e.epoch, e.n1, e.s2, e.t, e.actor, i});
        break;
      case Ev::Preempted:
        p.preempted_targets.insert(e.n1);
        break;
      default:
        break;
    }
  }
  if (p.configs.count(1)) p.genesis_anchor = genesis_hash(p.configs.at(1));
  return p;
}

}  // namespace relog::verify
