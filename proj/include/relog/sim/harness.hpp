// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <queue>
#include <set>
#include <unordered_set>
#include <variant>
#include <vector>

#include "relog/sim/actor.hpp"
#include "relog/sim/messages.hpp"
#include "relog/sim/rng.hpp"
#include "relog/sim/scenario.hpp"
#include "relog/sim/trace.hpp"

namespace relog::sim {

/* Deterministic discrete-event simulation. A single priority queue ordered
   by (time, insertion sequence) drives every replica, the client workload,
   and fault injection; per-message latencies are the only randomness and are
   drawn from one seeded generator in a fixed order. Rerunning a scenario with
   the same seed replays the identical event sequence and byte-identical
   trace.

   Fairness: every message sent to a replica that never crashes is delivered
   within the delay model's bounds. Crashed replicas silently swallow
   everything addressed to them. The client stub submits directly to replicas
   of the currently active epoch (data dissemination is out of scope) and
   resubmits transactions that miss the outer log within the configured
   timeout, preserving the TxId. */
class Simulation final : public ReplicaActor::Ctx {
 public:
  explicit Simulation(Scenario sc)
      : sc_(std::move(sc)), rng_(sc_.seed), genesis_cfg_(sc_.config_of(1)) {
    knobs_.delay_min = sc_.delay_min;
    knobs_.delay_max = sc_.delay_max;
    knobs_.fill_holddown = sc_.fill_holddown;
    knobs_.poll_interval = sc_.poll_interval;
    exval_ = exval_by_name(sc_.exval);
  }

  // --- Ctx ------------------------------------------------------------------

  Time now() const override { return now_; }

  void send(const ActorRef& from, const ActorRef& to, Message m) override {
    std::uint64_t id = ++msg_seq_;
    TraceEvent e;
    e.kind = Ev::MsgSend;
    e.actor = from;
    e.peer = to;
    e.n1 = id;
    e.s1 = kind_name(m);
    trace(std::move(e));
    if (crashed_.count(to)) return;
    Time lat = 0;
    if (!(from == to)) {
      lat = rng_.range(sc_.delay_min, sc_.delay_max);
      lat += extra_delay(from);
    }
    push(now_ + lat, EvDeliver{from, to, id, std::move(m)});
  }

  void schedule_timer(const ActorRef& who, Time delay, TimerPayload p) override {
    push(now_ + delay, EvTimer{who, std::move(p)});
  }

  void trace(TraceEvent e) override {
    e.t = now_;
    // Harness-side observations used for client routing.
    if (e.kind == Ev::OuterEmit || e.kind == Ev::OuterAdopt) {
      emitted_.insert(e.txid);
    } else if (e.kind == Ev::Activated && e.epoch > active_epoch_) {
      active_epoch_ = e.epoch;
    }
    trace_.add(std::move(e));
  }

  // --- run -------------------------------------------------------------------

  Trace run() {
    emit_header();
    build_actors();
    for (std::size_t i = 0; i < sc_.events.size(); ++i)
      push(sc_.events[i].t, EvScenario{i});
    for (const auto& m : genesis_cfg_.members)
      actor(ActorRef{1, m.index})->start_genesis();
    while (!q_.empty()) {
      const QItem& top = q_.top();
      if (top.t > sc_.horizon) break;
      QItem item = top;
      q_.pop();
      now_ = item.t;
      dispatch(item);
    }
    now_ = sc_.horizon;
    return trace_;
  }

  ReplicaActor* actor(const ActorRef& ref) {
    auto it = actors_.find(ref);
    return it == actors_.end() ? nullptr : it->second.get();
  }

  const std::map<ActorRef, std::unique_ptr<ReplicaActor>>& actors() const { return actors_; }
  const Trace& trace_ref() const { return trace_; }

 private:
  struct EvDeliver {
    ActorRef from, to;
    std::uint64_t id;
    Message msg;
  };
  struct EvTimer {
    ActorRef who;
    TimerPayload p;
  };
  struct EvScenario {
    std::size_t index;
  };
  struct EvClientCheck {
    std::string txid_hex;
  };
  using Payload = std::variant<EvDeliver, EvTimer, EvScenario, EvClientCheck>;

  struct QItem {
    Time t;
    std::uint64_t seq;
    std::shared_ptr<Payload> p;
    bool operator>(const QItem& o) const { return std::tie(t, seq) > std::tie(o.t, o.seq); }
  };

  void push(Time t, Payload p) {
    q_.push(QItem{t, ++ev_seq_, std::make_shared<Payload>(std::move(p))});
  }

  void emit_header() {
    TraceEvent meta;
    meta.kind = Ev::Meta;
    meta.s1 = sc_.name;
    meta.n1 = sc_.seed;
    meta.n2 = sc_.horizon;
    meta.s2 = sc_.exval;
    meta.pos = sc_.resubmit_timeout;
    meta.epoch = sc_.delay_min;
    meta.target_epoch = sc_.delay_max;
    trace(meta);
    for (const auto& spec : sc_.epochs) {
      TraceEvent c;
      c.kind = Ev::Config;
      c.epoch = spec.epoch;
      c.s1 = name(spec.consensus);
      c.s2 = name(spec.fault_model);
      c.n1 = spec.f;
      std::string members;
      for (auto m : spec.members) members += (members.empty() ? "" : ",") + std::to_string(m);
      c.payload = members;
      trace(c);
    }
  }

  void build_actors() {
    for (const auto& spec : sc_.epochs) {
      EpochConfig cfg = sc_.config_of(spec.epoch);
      for (const auto& m : cfg.members) {
        auto a = std::make_unique<ReplicaActor>(*this, m, cfg, genesis_cfg_, exval_, knobs_);
        actors_.emplace(ActorRef{m.epoch, m.index}, std::move(a));
      }
    }
  }

  void dispatch(const QItem& item) {
    if (const auto* d = std::get_if<EvDeliver>(item.p.get())) {
      if (crashed_.count(d->to)) return;
      ReplicaActor* a = actor(d->to);
      if (!a) return;
      TraceEvent e;
      e.kind = Ev::MsgDeliver;
      e.actor = d->to;
      e.n1 = d->id;
      trace(std::move(e));
      a->on_message(d->from, d->msg);
    } else if (const auto* t = std::get_if<EvTimer>(item.p.get())) {
      if (crashed_.count(t->who)) return;
      if (ReplicaActor* a = actor(t->who)) a->on_timer(t->p);
    } else if (const auto* s = std::get_if<EvScenario>(item.p.get())) {
      run_scenario_event(sc_.events[s->index]);
    } else if (const auto* c = std::get_if<EvClientCheck>(item.p.get())) {
      client_check(c->txid_hex);
    }
  }

  // --- scenario events --------------------------------------------------------

  void run_scenario_event(const ScenarioEvent& ev) {
    switch (ev.kind) {
      case ScenarioEvent::Kind::ClientTx:
        submit_client_tx(ev.payload, ev.target, ev.resubmit);
        break;
      case ScenarioEvent::Kind::ClientBatch:
        for (std::uint32_t i = 0; i < ev.count; ++i)
          submit_client_tx("", std::nullopt, true);
        break;
      case ScenarioEvent::Kind::EpochChange:
        inject_epoch_change(ev);
        break;
      case ScenarioEvent::Kind::Crash:
      case ScenarioEvent::Kind::ByzSilence: {
        ActorRef ref{ev.epoch, ev.index};
        crashed_.insert(ref);
        trace_fault(ev.kind == ScenarioEvent::Kind::Crash ? "crash" : "byz_silence", ref, 0, 0);
        break;
      }
      case ScenarioEvent::Kind::Equivocate: {
        ActorRef ref{ev.epoch, ev.index};
        if (ReplicaActor* a = actor(ref)) a->set_equivocate();
        trace_fault("equivocate", ref, 0, 0);
        break;
      }
      case ScenarioEvent::Kind::Tamper: {
        ActorRef ref{ev.epoch, ev.index};
        if (ReplicaActor* a = actor(ref)) a->set_tamper();
        trace_fault("tamper", ref, 0, 0);
        break;
      }
      case ScenarioEvent::Kind::Delay: {
        ActorRef ref{ev.epoch, ev.index};
        delays_.push_back({ref, ev.amount, now_, ev.until});
        trace_fault("delay", ref, ev.amount, ev.until);
        break;
      }
    }
  }

  void trace_fault(const std::string& kind, const ActorRef& target, Time amount, Time until) {
    TraceEvent e;
    e.kind = Ev::Fault;
    e.s1 = kind;
    e.peer = target;
    e.n1 = amount;
    e.n2 = until;
    trace(std::move(e));
  }

  Time extra_delay(const ActorRef& sender) const {
    Time extra = 0;
    for (const auto& d : delays_)
      if (d.target == sender && now_ >= d.from && now_ < d.until) extra += d.amount;
    return extra;
  }

  void submit_client_tx(const std::string& payload_text, std::optional<std::uint32_t> target,
                        bool resubmit) {
    std::string payload = payload_text.empty()
                              ? "set k" + std::to_string(++auto_tx_) + "=" +
                                    std::to_string(auto_tx_)
                              : payload_text;
    Transaction tx = Transaction::make(str_bytes(payload), "client");
    auto [it, fresh] = pending_.emplace(tx.id.hex(), PendingTx{tx, resubmit, 0});
    if (!fresh) return;  // same payload scheduled twice: one identity, one tracker
    deliver_to_active(tx, target, 0, resubmit);
    if (resubmit) push(now_ + sc_.resubmit_timeout, EvClientCheck{tx.id.hex()});
  }

  void deliver_to_active(const Transaction& tx, std::optional<std::uint32_t> target,
                         std::uint64_t attempt, bool resubmit) {
    EpochConfig cfg = sc_.config_of(active_epoch_);
    std::uint32_t order = target ? *target % cfg.members.size()
                                 : static_cast<std::uint32_t>(rr_++ % cfg.members.size());
    const ReplicaId& member = cfg.members[order];
    ActorRef to{member.epoch, member.index};
    TraceEvent e;
    e.kind = Ev::ClientSubmit;
    e.actor = ActorRef{0, 1};
    e.txid = tx.id.hex();
    e.peer = to;
    e.n1 = attempt;
    e.n2 = resubmit ? 1 : 0;
    e.payload = to_hex(tx.payload);
    trace(std::move(e));
    send(ActorRef{0, 1}, to, MsgSubmit{cfg.epoch, EntryContent{tx}});
  }

  void client_check(const std::string& txid_hex) {
    if (emitted_.count(txid_hex)) return;
    auto it = pending_.find(txid_hex);
    if (it == pending_.end()) return;
    PendingTx& p = it->second;
    p.attempts += 1;
    deliver_to_active(p.tx, std::nullopt, p.attempts, true);
    push(now_ + sc_.resubmit_timeout, EvClientCheck{txid_hex});
  }

  void inject_epoch_change(const ScenarioEvent& ev) {
    EpochConfig from_cfg = sc_.config_of(active_epoch_);
    EpochConfig next_cfg = sc_.config_of(ev.next);
    EpochChange ec;
    ec.from = from_cfg.epoch;
    ec.next = next_cfg;
    std::vector<std::uint32_t> orders = ev.targets;
    if (orders.empty())
      for (std::uint32_t i = 0; i < from_cfg.members.size(); ++i) orders.push_back(i);
    for (std::uint32_t o : orders) {
      const ReplicaId& m = from_cfg.members[o % from_cfg.members.size()];
      send(ActorRef{0, 0}, ActorRef{m.epoch, m.index},
           MsgSubmit{from_cfg.epoch, EntryContent{SystemTx{ec}}});
    }
    // Deployment action: wake the incoming replicas so they can sync.
    for (const ReplicaId& m : next_cfg.members)
      send(ActorRef{0, 0}, ActorRef{m.epoch, m.index}, MsgProvision{next_cfg, from_cfg});
    TraceEvent e;
    e.kind = Ev::Note;
    e.actor = ActorRef{0, 0};
    e.s1 = "inject_epoch_change";
    e.s2 = std::to_string(from_cfg.epoch) + "->" + std::to_string(next_cfg.epoch);
    trace(std::move(e));
  }

  struct DelayRule {
    ActorRef target;
    Time amount;
    Time from, until;
  };
  struct PendingTx {
    Transaction tx;
    bool resubmit;
    std::uint64_t attempts;
  };

  Scenario sc_;
  Rng rng_;
  EpochConfig genesis_cfg_;
  SimKnobs knobs_;
  ExvalPredicate exval_;

  Time now_ = 0;
  std::uint64_t ev_seq_ = 0;
  std::uint64_t msg_seq_ = 0;
  std::uint64_t auto_tx_ = 0;
  std::uint64_t rr_ = 0;
  EpochId active_epoch_ = 1;

  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> q_;
  std::map<ActorRef, std::unique_ptr<ReplicaActor>> actors_;
  std::set<ActorRef> crashed_;
  std::vector<DelayRule> delays_;
  std::unordered_set<std::string> emitted_;  // txid hex
  std::map<std::string, PendingTx> pending_;
  Trace trace_;
};

inline Trace run_scenario(const Scenario& sc) {
  Simulation sim(sc);
  return sim.run();
}

}  // namespace relog::sim
