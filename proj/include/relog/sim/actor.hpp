// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "relog/consensus/multilane.hpp"
#include "relog/consensus/port.hpp"
#include "relog/consensus/sequencer.hpp"
#include "relog/engine.hpp"
#include "relog/kv.hpp"
#include "relog/sanitizer.hpp"
#include "relog/sim/messages.hpp"
#include "relog/sim/trace.hpp"

namespace relog::sim {

struct SimKnobs {
  Time delay_min = 1;
  Time delay_max = 3;
  Time fill_holddown = 16;   // multi-lane own-lane noop batching delay
  Time poll_interval = 4;    // learner fetch/sync cadence
  std::size_t fetch_batch = 64;
};

/* One replica instance: a fresh identity bound to a single epoch, assembling
   the consensus endpoint, the reconfiguration engine, the log sanitizer, the
   learner protocol for foreign inner logs, and a toy key-value execution
   stub fed by the outer log.

   Life cycle: genesis members start Running at time zero; members of later
   epochs are provisioned when the EpochChange is injected, sync a snapshot
   (trust chain + outer prefix) from the old epoch, replay the old epoch's
   inner log through their own sanitizer, and switch to their own log at the
   handover point. An actor that outlives its epoch keeps serving snapshot
   and log fetches as an archive. */
class ReplicaActor {
 public:
  struct Ctx {
    virtual ~Ctx() = default;
    virtual Time now() const = 0;
    virtual void send(const ActorRef& from, const ActorRef& to, Message m) = 0;
    virtual void schedule_timer(const ActorRef& who, Time delay, TimerPayload p) = 0;
    virtual void trace(TraceEvent e) = 0;
  };

  enum class Status { Dormant, Syncing, Running, Aborted, ShutDown };

  ReplicaActor(Ctx& ctx, ReplicaId self, EpochConfig cfg, EpochConfig genesis_cfg,
               ExvalPredicate exval, SimKnobs knobs)
      : ctx_(ctx),
        self_(std::move(self)),
        cfg_(std::move(cfg)),
        genesis_cfg_(std::move(genesis_cfg)),
        anchor_(genesis_hash(genesis_cfg_)),
        exval_(std::move(exval)),
        knobs_(knobs),
        key_(derive_key(self_.epoch, self_.index)),
        ref_{self_.epoch, self_.index} {}

  const ActorRef& ref() const { return ref_; }
  Status status() const { return status_; }
  bool activated() const { return activated_; }
  const std::vector<InnerLogEntry>& inner_log() const { return my_log_; }
  const std::vector<OuterEntry>& outer_log() const { return outer_; }
  const std::vector<TrustLink>& chain() const { return chain_; }
  const KvState& kv() const { return kv_; }

  void set_equivocate() { equivocate_ = true; }
  void set_tamper() { tamper_ = true; }

  // Genesis members are active from the start: epoch 1 is installed from the
  // genesis record, not handed over.
  void start_genesis() {
    status_ = Status::Running;
    chain_tip_ = anchor_;
    san_.emplace(cfg_.epoch, exval_);
    activated_ = true;
    retire_ = std::make_unique<ReconfigEngine>(Role::Outgoing, self_, key_, cfg_, chain_tip_);
    retire_attempt_ = attempt_seq_++;
    start_consensus();
    TraceEvent e;
    e.kind = Ev::Activated;
    e.actor = ref_;
    e.epoch = cfg_.epoch;
    ctx_.trace(e);
  }

  void on_message(const ActorRef& from, const Message& m) {
    std::visit([&](const auto& msg) { handle(from, msg); }, m);
  }

  void on_timer(const TimerPayload& p) {
    if (auto* seq = std::get_if<consensus::Sequencer>(&cons_)) {
      if (std::holds_alternative<TimSeqTick>(p)) {
        seq->on_tick();
        return;
      }
    }
    if (auto* ml = std::get_if<consensus::MultiLane>(&cons_)) {
      if (std::holds_alternative<TimLaneSelfFill>(p)) {
        ml->on_self_fill();
        return;
      }
      if (const auto* f = std::get_if<TimLaneFill>(&p)) {
        ml->on_fill_timer(*f);
        return;
      }
    }
    if (const auto* lp = std::get_if<TimLearnerPoll>(&p)) learner_poll(lp->epoch);
  }

 private:
  // --- message handlers ---------------------------------------------------

  void handle(const ActorRef&, const MsgProvision& m) {
    if (status_ != Status::Dormant) return;
    status_ = Status::Syncing;
    source_cfg_ = m.old_config;
    learner_.emplace();
    learner_->epoch = m.old_config.epoch;
    learner_->src = m.old_config;
    learner_->syncing = true;
    learner_poll(learner_->epoch);
  }

  void handle(const ActorRef&, const MsgSubmit& m) {
    if (m.epoch != cfg_.epoch) return;
    bool accepted = false;
    if (status_ == Status::Running) {
      accepted = std::visit(
          [&](auto& c) -> bool {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, std::monostate>)
              return false;
            else
              return c.submit(m.content);
          },
          cons_);
    }
    if (!accepted) note("submit_rejected", "halted");
  }

  void handle(const ActorRef&, const MsgSeqForward& m) {
    if (auto* s = seq(); s && m.epoch == cfg_.epoch) s->on_forward(m);
  }
  void handle(const ActorRef&, const MsgSeqAssign& m) {
    if (auto* s = seq(); s && m.epoch == cfg_.epoch) s->on_assign(m);
  }
  void handle(const ActorRef&, const MsgSeqHeartbeat& m) {
    if (auto* s = seq(); s && m.epoch == cfg_.epoch) s->on_heartbeat(m);
  }
  void handle(const ActorRef&, const MsgLaneProposal& m) {
    if (auto* l = lanes(); l && m.epoch == cfg_.epoch) l->on_proposal(m);
  }
  void handle(const ActorRef&, const MsgLaneAck& m) {
    if (auto* l = lanes(); l && m.epoch == cfg_.epoch) l->on_ack(m);
  }

  void handle(const ActorRef& from, const MsgSyncReq& m) {
    if (m.epoch != cfg_.epoch) return;
    if (status_ != Status::Running && status_ != Status::ShutDown) return;
    MsgSyncResp resp;
    resp.epoch = cfg_.epoch;
    resp.chain = chain_;
    for (const auto& oe : outer_)
      if (oe.source_epoch < cfg_.epoch) resp.outer_prefix.push_back(oe);
    if (tamper_) corrupt(resp);
    ctx_.send(ref_, from, std::move(resp));
  }

  void handle(const ActorRef& from, const MsgFetchReq& m) {
    if (m.epoch != cfg_.epoch || status_ == Status::Dormant || status_ == Status::Syncing)
      return;
    if (my_log_.size() + 1 <= m.from_pos) return;  // nothing new yet
    MsgFetchResp resp;
    resp.epoch = cfg_.epoch;
    resp.from_pos = m.from_pos;
    for (Pos p = m.from_pos; p <= my_log_.size() && resp.entries.size() < knobs_.fetch_batch; ++p)
      resp.entries.push_back(my_log_[p - 1]);
    if (tamper_ && !resp.entries.empty()) resp.entries.front().position += 1;
    ctx_.send(ref_, from, std::move(resp));
  }

  void handle(const ActorRef& from, const MsgSyncResp& m) {
    if (!learner_ || !learner_->syncing || m.epoch != learner_->epoch) return;
    ByteWriter w;
    w.raw(encode_chain(m.chain));
    w.u32(static_cast<std::uint32_t>(m.outer_prefix.size()));
    for (const auto& oe : m.outer_prefix) oe.encode(w);
    std::string digest = hash_bytes(w.bytes()).hex();
    auto& cand = learner_->sync_cand[digest];
    if (!cand.seen) {
      cand.chain = m.chain;
      cand.prefix = m.outer_prefix;
      cand.seen = true;
    }
    cand.responders.insert(from.index);
    if (cand.responders.size() < source_quorum()) return;
    if (!snapshot_valid(cand.chain, cand.prefix)) {
      learner_->sync_cand.erase(digest);
      note("sync_rejected", "invalid snapshot");
      return;
    }
    install_snapshot(cand.chain, cand.prefix);
  }

  void handle(const ActorRef& from, const MsgFetchResp& m) {
    if (!learner_ || learner_->syncing || m.epoch != learner_->epoch) return;
    for (const auto& e : m.entries) {
      if (e.position <= learner_->accepted) continue;
      auto& cands = learner_->cand[e.position];
      bool found = false;
      for (auto& c : cands) {
        if (c.entry == e) {
          c.responders.insert(from.index);
          found = true;
          break;
        }
      }
      if (!found) cands.push_back({e, {from.index}});
    }
    drain_learner();
  }

  // --- learner ------------------------------------------------------------

  struct SyncCand {
    std::vector<TrustLink> chain;
    std::vector<OuterEntry> prefix;
    std::set<std::uint32_t> responders;
    bool seen = false;
  };
  struct EntryCand {
    InnerLogEntry entry;
    std::set<std::uint32_t> responders;
  };
  struct Learner {
    EpochId epoch = 0;
    EpochConfig src;
    bool syncing = false;
    Pos accepted = 0;
    std::map<Pos, std::vector<EntryCand>> cand;
    std::map<std::string, SyncCand> sync_cand;
  };

  std::size_t source_quorum() const {
    if (!learner_) return 1;
    return learner_->src.fault_model == FaultModel::Byzantine ? learner_->src.f + 1 : 1;
  }

  void learner_poll(EpochId epoch) {
    if (!learner_ || learner_->epoch != epoch) return;
    Message req;
    if (learner_->syncing)
      req = MsgSyncReq{learner_->epoch, ref_};
    else
      req = MsgFetchReq{learner_->epoch, learner_->accepted + 1, ref_};
    for (const auto& member : learner_->src.members)
      ctx_.send(ref_, ActorRef{member.epoch, member.index}, req);
    ctx_.schedule_timer(ref_, knobs_.poll_interval, TimLearnerPoll{epoch});
  }

  bool snapshot_valid(const std::vector<TrustLink>& chain,
                      const std::vector<OuterEntry>& prefix) const {
    if (verify_trust_chain(chain, anchor_, genesis_cfg_)) return false;
    const EpochConfig& derived =
        chain.empty() ? genesis_cfg_ : chain.back().cert.next_config;
    if (!(derived == source_cfg_)) return false;
    Pos expect = 1;
    for (const auto& oe : prefix) {
      if (oe.outer_position != expect++) return false;
      if (oe.source_epoch >= source_cfg_.epoch) return false;
      if (!oe.tx.id_matches()) return false;
    }
    return true;
  }

  void install_snapshot(const std::vector<TrustLink>& chain,
                        const std::vector<OuterEntry>& prefix) {
    chain_ = chain;
    chain_tip_ = chain_.empty() ? anchor_ : chain_.back().cert.hash();
    san_.emplace(source_cfg_.epoch, exval_, prefix.size() + 1);
    for (const auto& oe : prefix) {
      san_->note_emitted(oe.tx.id);
      outer_.push_back(oe);
      kv_.apply(oe.tx);
      TraceEvent e;
      e.kind = Ev::OuterAdopt;
      e.actor = ref_;
      e.outer_pos = oe.outer_position;
      e.txid = oe.tx.id.hex();
      e.epoch = oe.source_epoch;
      e.pos = oe.source_position;
      ctx_.trace(e);
    }
    birth_ = std::make_unique<ReconfigEngine>(Role::Incoming, self_, key_, source_cfg_,
                                              chain_tip_, cfg_);
    birth_attempt_ = attempt_seq_++;
    status_ = Status::Running;
    start_consensus();
    learner_->syncing = false;
    learner_->sync_cand.clear();
    TraceEvent e;
    e.kind = Ev::SyncInstalled;
    e.actor = ref_;
    e.epoch = source_cfg_.epoch;
    e.n1 = prefix.size();
    e.n2 = chain_.size();
    ctx_.trace(e);
  }

  void drain_learner() {
    while (learner_) {
      auto it = learner_->cand.find(learner_->accepted + 1);
      if (it == learner_->cand.end()) break;
      const EntryCand* winner = nullptr;
      for (const auto& c : it->second)
        if (c.responders.size() >= source_quorum()) {
          winner = &c;
          break;
        }
      if (!winner) break;
      InnerLogEntry entry = winner->entry;
      learner_->accepted = entry.position;
      learner_->cand.erase(it);
      learner_accept(entry);
    }
  }

  void learner_accept(const InnerLogEntry& entry) {
    if (birth_ && !activated_ && learner_ && learner_->epoch == source_cfg_.epoch) {
      // Old-epoch stream at an incoming replica.
      if (birth_cert_ && entry.position > birth_cert_->h) {
        learner_.reset();
        return;
      }
      auto acts = birth_->on_old_entry(entry);
      handle_actions(*birth_, birth_attempt_, acts);
      if (san_ && san_->current_epoch() == entry.epoch) ingest(entry);
      if (birth_cert_ && learner_ && entry.position >= birth_cert_->h) learner_.reset();
      return;
    }
    if (retire_ && learner_ && retire_cert_ && learner_->epoch == retire_cert_->next_config.epoch) {
      // New-epoch stream at an outgoing replica: Done counting only.
      auto acts = retire_->on_new_entry(entry);
      handle_actions(*retire_, retire_attempt_, acts);
    }
  }

  // --- consensus ----------------------------------------------------------

  consensus::Sequencer* seq() { return std::get_if<consensus::Sequencer>(&cons_); }
  consensus::MultiLane* lanes() { return std::get_if<consensus::MultiLane>(&cons_); }

  std::uint32_t self_order() const {
    for (std::uint32_t i = 0; i < cfg_.members.size(); ++i)
      if (cfg_.members[i].index == self_.index) return i;
    return 0;
  }

  void start_consensus() {
    port_.emplace(cfg_.epoch, [this](const InnerLogEntry& e) { on_released(e); });
    auto send = [this](std::uint32_t order, Message m) {
      const auto& member = cfg_.members[order];
      ctx_.send(ref_, ActorRef{member.epoch, member.index}, std::move(m));
    };
    auto sched = [this](Time d, TimerPayload p) { ctx_.schedule_timer(ref_, d, p); };
    auto commit = [this](Pos slot, const EntryContent& c) {
      TraceEvent e;
      e.kind = Ev::DecideInternal;
      e.actor = ref_;
      e.epoch = cfg_.epoch;
      e.pos = slot;
      e.key = content_key(c).hex();
      ctx_.trace(e);
      port_->offer(slot, c);
    };
    auto now = [this]() { return ctx_.now(); };
    if (cfg_.consensus_kind == ConsensusKind::Sequencer) {
      cons_.emplace<consensus::Sequencer>(
          cfg_, self_order(), knobs_.delay_max,
          consensus::Sequencer::Wiring{send, sched, commit, now});
      seq()->start();
    } else {
      cons_.emplace<consensus::MultiLane>(
          cfg_, self_order(), knobs_.delay_max, knobs_.fill_holddown,
          consensus::MultiLane::Wiring{send, sched, commit, now});
      lanes()->start();
    }
  }

  void halt_consensus() {
    std::visit(
        [&](auto& c) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(c)>, std::monostate>) c.halt();
        },
        cons_);
    TraceEvent e;
    e.kind = Ev::HaltConsensus;
    e.actor = ref_;
    e.epoch = cfg_.epoch;
    ctx_.trace(e);
  }

  // --- own-epoch decided stream -------------------------------------------

  void on_released(const InnerLogEntry& entry) {
    my_log_.push_back(entry);
    trace_inner(entry);
    if (!activated_) {
      if (birth_) {
        auto acts = birth_->on_new_entry(entry);
        handle_actions(*birth_, birth_attempt_, acts);
      }
      if (san_ && san_->current_epoch() == cfg_.epoch)
        ingest(entry);
      else
        own_queue_.push_back(entry);
      return;
    }
    if (retire_cert_ && entry.position > retire_cert_->h) return;  // void suffix
    if (retire_) {
      auto acts = retire_->on_old_entry(entry);
      handle_actions(*retire_, retire_attempt_, acts);
    }
    if (san_ && san_->current_epoch() == cfg_.epoch) ingest(entry);
  }

  void ingest(const InnerLogEntry& entry) {
    EpochId before = san_->current_epoch();
    auto out = san_->ingest(entry);
    if (out) {
      if (activated_ || entry.epoch != cfg_.epoch) {
        emit(*out);
      } else {
        gate_.push_back(*out);  // own-epoch emission held until activation
      }
    }
    if (san_->current_epoch() != before) {
      TraceEvent e;
      e.kind = Ev::EpochBoundary;
      e.actor = ref_;
      e.epoch = before;
      e.target_epoch = san_->current_epoch();
      ctx_.trace(e);
      if (san_->current_epoch() == cfg_.epoch) drain_own_queue();
    }
  }

  void drain_own_queue() {
    while (!own_queue_.empty() && san_ && san_->current_epoch() == cfg_.epoch) {
      InnerLogEntry e = own_queue_.front();
      own_queue_.pop_front();
      ingest(e);
    }
  }

  void emit(const OuterEntry& oe) {
    outer_.push_back(oe);
    kv_.apply(oe.tx);
    TraceEvent e;
    e.kind = Ev::OuterEmit;
    e.actor = ref_;
    e.outer_pos = oe.outer_position;
    e.txid = oe.tx.id.hex();
    e.epoch = oe.source_epoch;
    e.pos = oe.source_position;
    ctx_.trace(e);
  }

  void trace_inner(const InnerLogEntry& entry) {
    TraceEvent e;
    e.kind = Ev::InnerCommit;
    e.actor = ref_;
    e.epoch = entry.epoch;
    e.pos = entry.position;
    e.key = content_key(entry.content).hex();
    if (const auto* tx = std::get_if<Transaction>(&entry.content)) {
      e.s1 = "tx";
      e.txid = tx->id.hex();
    } else if (const auto* sys = std::get_if<SystemTx>(&entry.content)) {
      if (const auto* ec = std::get_if<EpochChange>(sys)) {
        e.s1 = "ec";
        e.target_epoch = ec->next.epoch;
      } else if (const auto* rd = std::get_if<Ready>(sys)) {
        e.s1 = "ready";
        e.peer = ActorRef{rd->signer.epoch, rd->signer.index};
      } else {
        const auto& d = std::get<Done>(*sys);
        e.s1 = "done";
        e.peer = ActorRef{d.signer.epoch, d.signer.index};
      }
    } else {
      e.s1 = "noop";
    }
    ctx_.trace(e);
  }

  // --- engine action interpreter -------------------------------------------

  void handle_actions(ReconfigEngine& eng, std::uint32_t attempt,
                      const std::vector<EngineAction>& acts) {
    for (const auto& a : acts) {
      if (const auto* p = std::get_if<ActPhase>(&a)) {
        TraceEvent e;
        e.kind = Ev::PhaseChange;
        e.actor = ref_;
        e.n1 = attempt;
        e.s1 = name(p->from);
        e.s2 = name(p->to);
        ctx_.trace(e);
      } else if (const auto* ec = std::get_if<ActEcObserved>(&a)) {
        TraceEvent e;
        e.kind = Ev::EcObserved;
        e.actor = ref_;
        e.target_epoch = ec->target;
        e.pos = ec->pos;
        ctx_.trace(e);
      } else if (const auto* r = std::get_if<ActSubmitReady>(&a)) {
        for (const auto& member : source_cfg_.members)
          ctx_.send(ref_, ActorRef{member.epoch, member.index},
                    MsgSubmit{source_cfg_.epoch, SystemTx{r->ready}});
      } else if (const auto* d = std::get_if<ActSubmitDone>(&a)) {
        Done done = d->done;
        if (equivocate_) {
          done.cert.h += 1;  // conflicting certificate, honestly signed
          done.sig = sign(done.cert.bytes(), key_);
          note("equivocate_done", "");
        }
        for (const auto& member : d->done.cert.next_config.members)
          ctx_.send(ref_, ActorRef{member.epoch, member.index},
                    MsgSubmit{d->done.cert.next_config.epoch, SystemTx{done}});
      } else if (const auto* h = std::get_if<ActHandover>(&a)) {
        TraceEvent e;
        e.kind = Ev::CertFormed;
        e.actor = ref_;
        e.epoch = h->cert.old_epoch;
        e.target_epoch = h->cert.next_config.epoch;
        e.pos = h->cert.h;
        e.key = h->cert.hash().hex();
        e.n1 = h->signed_by_self ? 1 : 0;
        ctx_.trace(e);
        if (&eng == birth_.get()) {
          birth_cert_ = h->cert;
        } else {
          retire_cert_ = h->cert;
          learner_.emplace();
          learner_->epoch = h->cert.next_config.epoch;
          learner_->src = h->cert.next_config;
          learner_->syncing = false;
          learner_poll(learner_->epoch);
        }
        if (san_ && san_->current_epoch() == h->cert.old_epoch) san_->apply_handover(h->cert);
      } else if (const auto* act = std::get_if<ActActivate>(&a)) {
        activated_ = true;
        chain_.push_back(act->link);
        chain_tip_ = act->link.cert.hash();
        TraceEvent e;
        e.kind = Ev::Activated;
        e.actor = ref_;
        e.epoch = act->epoch;
        e.n1 = act->counted;
        e.s2 = to_hex(act->link.bytes());
        ctx_.trace(e);
        if (learner_ && learner_->epoch == source_cfg_.epoch) learner_.reset();
        for (const auto& oe : gate_) emit(oe);
        gate_.clear();
        retire_ = std::make_unique<ReconfigEngine>(Role::Outgoing, self_, key_, cfg_, chain_tip_);
        retire_attempt_ = attempt_seq_++;
      } else if (const auto* sd = std::get_if<ActShutdown>(&a)) {
        (void)sd;
        halt_consensus();
        status_ = Status::ShutDown;
        learner_.reset();
      } else if (const auto* ab = std::get_if<ActAbortPrepare>(&a)) {
        TraceEvent e;
        e.kind = Ev::AbortPrepare;
        e.actor = ref_;
        e.epoch = ab->abandoned;
        ctx_.trace(e);
        halt_consensus();
        status_ = Status::Aborted;
        learner_.reset();
      } else if (const auto* pre = std::get_if<ActPreempted>(&a)) {
        TraceEvent e;
        e.kind = Ev::Preempted;
        e.actor = ref_;
        e.n1 = pre->old_target;
        e.target_epoch = pre->new_target;
        e.pos = pre->pos;
        ctx_.trace(e);
      } else if (const auto* rc = std::get_if<ActReadyCounted>(&a)) {
        TraceEvent e;
        e.kind = Ev::ReadyCounted;
        e.actor = ref_;
        e.peer = ActorRef{rc->signer.epoch, rc->signer.index};
        e.n1 = rc->count;
        e.pos = rc->pos;
        ctx_.trace(e);
      } else if (const auto* dc = std::get_if<ActDoneCounted>(&a)) {
        TraceEvent e;
        e.kind = Ev::DoneCounted;
        e.actor = ref_;
        e.peer = ActorRef{dc->signer.epoch, dc->signer.index};
        e.n1 = dc->count;
        ctx_.trace(e);
      } else if (const auto* dm = std::get_if<ActDoneMismatch>(&a)) {
        TraceEvent e;
        e.kind = Ev::DoneMismatch;
        e.actor = ref_;
        e.peer = ActorRef{dm->signer.epoch, dm->signer.index};
        ctx_.trace(e);
      } else if (const auto* n = std::get_if<ActNote>(&a)) {
        note(n->kind, n->detail);
      }
    }
  }

  void note(const std::string& kind, const std::string& detail) {
    TraceEvent e;
    e.kind = Ev::Note;
    e.actor = ref_;
    e.s1 = kind;
    e.s2 = detail;
    ctx_.trace(e);
  }

  void corrupt(MsgSyncResp& resp) {
    if (!resp.outer_prefix.empty()) {
      resp.outer_prefix.front().source_position += 1;
    } else if (!resp.chain.empty()) {
      resp.chain.front().cert.h += 1;
    } else {
      OuterEntry fake;
      fake.outer_position = 1;
      fake.tx = Transaction::make(str_bytes("forged"), "nobody");
      fake.source_epoch = 0;
      resp.outer_prefix.push_back(fake);
    }
  }

  Ctx& ctx_;
  ReplicaId self_;
  EpochConfig cfg_;
  EpochConfig genesis_cfg_;
  Hash anchor_;
  ExvalPredicate exval_;
  SimKnobs knobs_;
  SigningKey key_;
  ActorRef ref_;

  Status status_ = Status::Dormant;
  bool equivocate_ = false;
  bool tamper_ = false;

  std::variant<std::monostate, consensus::Sequencer, consensus::MultiLane> cons_;
  std::optional<consensus::InOrderRelease> port_;
  std::vector<InnerLogEntry> my_log_;

  EpochConfig source_cfg_;  // epoch synced from (incoming only)
  std::unique_ptr<ReconfigEngine> birth_, retire_;
  std::uint32_t birth_attempt_ = 0, retire_attempt_ = 0, attempt_seq_ = 0;
  std::optional<HandoverCertificate> birth_cert_, retire_cert_;

  std::optional<LogSanitizer> san_;
  bool activated_ = false;
  std::vector<OuterEntry> outer_;
  std::vector<OuterEntry> gate_;
  std::deque<InnerLogEntry> own_queue_;
  std::vector<TrustLink> chain_;
  Hash chain_tip_;
  std::optional<Learner> learner_;
  KvState kv_;
};

}  // namespace relog::sim
