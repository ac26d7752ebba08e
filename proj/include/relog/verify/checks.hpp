// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "relog/engine.hpp"
#include "relog/verify/oracle.hpp"
#include "relog/verify/parsed.hpp"

namespace relog::verify {

enum class Outcome : std::uint8_t { Pass, Fail, NotApplicable };

struct Verdict {
  std::string property;
  Outcome outcome = Outcome::Pass;
  std::string detail;  // first counterexample: event indices and explanation

  bool ok() const { return outcome != Outcome::Fail; }
  std::string str() const {
    std::string s = property + ": ";
    s += outcome == Outcome::Pass          ? "pass"
         : outcome == Outcome::Fail        ? "FAIL"
                                           : "not applicable";
    if (!detail.empty()) s += " (" + detail + ")";
    return s;
  }
};

namespace detail {

inline Verdict pass(std::string prop) { return {std::move(prop), Outcome::Pass, ""}; }
inline Verdict fail(std::string prop, std::string why) {
  return {std::move(prop), Outcome::Fail, std::move(why)};
}

inline std::string at(std::size_t event_index) {
  return "event#" + std::to_string(event_index);
}

// True when every epoch's fault count stays within its threshold.
inline bool budget_respected(const ParsedTrace& p) {
  std::map<EpochId, std::uint32_t> faults;
  for (const auto& r : p.crashed) faults[r.epoch]++;
  for (const auto& r : p.byzantine)
    if (!p.crashed.count(r)) faults[r.epoch]++;
  for (const auto& [epoch, count] : faults) {
    auto it = p.configs.find(epoch);
    if (it == p.configs.end() || count > it->second.f) return false;
  }
  return true;
}

}  // namespace detail

/* No two correct replicas expose different transactions at the same outer
   position. */
inline Verdict check_safety(const ParsedTrace& p) {
  const std::vector<ParsedTrace::OuterRec>* ref = nullptr;
  ActorRef ref_actor;
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    Pos expect = 1;
    for (const auto& r : log)
      if (r.outer_pos != expect++)
        return detail::fail("safety", actor.str() + " outer positions not contiguous at " +
                                          std::to_string(r.outer_pos) + ", " +
                                          detail::at(r.event_index));
    if (!ref || log.size() > ref->size()) {
      ref = &log;
      ref_actor = actor;
    }
  }
  if (!ref) return detail::pass("safety");
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    for (std::size_t i = 0; i < log.size(); ++i) {
      if (log[i].txid != (*ref)[i].txid)
        return detail::fail("safety", "position " + std::to_string(i + 1) + ": " + actor.str() +
                                          " has " + log[i].txid.substr(0, 12) + ", " +
                                          ref_actor.str() + " has " +
                                          (*ref)[i].txid.substr(0, 12) + ", " +
                                          detail::at(log[i].event_index));
    }
  }
  return detail::pass("safety");
}

/* A TxId appears at most once in any correct replica's outer log. */
inline Verdict check_integrity(const ParsedTrace& p) {
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    std::map<std::string, Pos> first;
    for (const auto& r : log) {
      auto [it, fresh] = first.emplace(r.txid, r.outer_pos);
      if (!fresh)
        return detail::fail("integrity", actor.str() + ": " + r.txid.substr(0, 12) +
                                             " at positions " + std::to_string(it->second) +
                                             " and " + std::to_string(r.outer_pos) + ", " +
                                             detail::at(r.event_index));
    }
  }
  return detail::pass("integrity");
}

/* Every exposed transaction satisfies the configured predicate. */
inline Verdict check_exval(const ParsedTrace& p) {
  ExvalPredicate exval = exval_by_name(p.exval_name);
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    for (const auto& r : log) {
      auto sit = p.submits.find(r.txid);
      if (sit == p.submits.end()) continue;  // no payload on record
      Transaction tx = Transaction::make(sit->second.payload, "client");
      if (!exval(tx))
        return detail::fail("external_validity",
                            actor.str() + " emitted invalid tx " + r.txid.substr(0, 12) +
                                " at position " + std::to_string(r.outer_pos) + ", " +
                                detail::at(r.event_index));
    }
  }
  return detail::pass("external_validity");
}

/* Every resubmittable valid client transaction submitted early enough lands
   in the outer log of every correct member of the final epoch. Gated on the
   fault budget: over-threshold runs are reported not-applicable. */
inline Verdict check_liveness(const ParsedTrace& p, Time slack) {
  if (!detail::budget_respected(p))
    return {"liveness", Outcome::NotApplicable, "fault budget exceeded by scenario"};
  ExvalPredicate exval = exval_by_name(p.exval_name);
  const EpochId fin = p.final_epoch();
  const auto members = p.correct_members(fin);
  if (members.empty()) return detail::fail("liveness", "no correct member in final epoch");
  const Time deadline = p.horizon > slack ? p.horizon - slack : 0;
  for (const auto& [txid, sub] : p.submits) {
    if (!sub.resubmit) continue;  // outside the resubmission contract
    if (sub.first_t > deadline) continue;
    Transaction tx = Transaction::make(sub.payload, "client");
    if (!exval(tx)) continue;
    for (const ActorRef& m : members) {
      auto oit = p.outer.find(m);
      bool found = false;
      if (oit != p.outer.end())
        for (const auto& r : oit->second)
          if (r.txid == txid) {
            found = true;
            break;
          }
      if (!found)
        return detail::fail("liveness", "tx " + txid.substr(0, 12) + " submitted at t=" +
                                            std::to_string(sub.first_t) + " missing from " +
                                            m.str());
    }
  }
  return detail::pass("liveness");
}

/* Every correct replica's outer log is a prefix of the oracle reconstruction,
   and correct members of the final epoch expose it in full. */
inline Verdict check_oracle_agreement(const ParsedTrace& p) {
  OracleResult oracle = oracle_outer_log(p);
  if (oracle.error) return detail::fail("oracle_agreement", *oracle.error);
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    if (log.size() > oracle.entries.size())
      return detail::fail("oracle_agreement",
                          actor.str() + " emitted " + std::to_string(log.size()) +
                              " entries, oracle has " + std::to_string(oracle.entries.size()));
    for (std::size_t i = 0; i < log.size(); ++i) {
      const auto& o = oracle.entries[i];
      if (log[i].txid != o.txid || log[i].source_epoch != o.source_epoch ||
          log[i].source_pos != o.source_pos)
        return detail::fail("oracle_agreement",
                            actor.str() + " diverges from oracle at outer position " +
                                std::to_string(i + 1) + ", " + detail::at(log[i].event_index));
    }
  }
  if (detail::budget_respected(p)) {
    for (const ActorRef& m : p.correct_members(p.final_epoch())) {
      auto oit = p.outer.find(m);
      std::size_t len = oit == p.outer.end() ? 0 : oit->second.size();
      if (len != oracle.entries.size())
        return detail::fail("oracle_agreement",
                            m.str() + " exposes " + std::to_string(len) + " of " +
                                std::to_string(oracle.entries.size()) + " oracle entries");
    }
  }
  return detail::pass("oracle_agreement");
}

/* Protocol-level invariants of the reconfiguration engine. */
inline Verdict check_protocol_invariants(const ParsedTrace& p) {
  const std::string prop = "protocol_invariants";
  const Trace& tr = *p.trace;

  // Inner logs: contiguous positions, prefix-consistent across correct members.
  for (const auto& [epoch, cfg] : p.configs) {
    const std::vector<ParsedTrace::InnerRec>* ref = nullptr;
    ActorRef ref_actor;
    for (const ActorRef& m : p.correct_members(epoch)) {
      auto ait = p.inner.find(m);
      if (ait == p.inner.end()) continue;
      auto lit = ait->second.find(epoch);
      if (lit == ait->second.end()) continue;
      Pos expect = 1;
      for (const auto& r : lit->second)
        if (r.pos != expect++)
          return detail::fail(prop, m.str() + " inner positions not contiguous at " +
                                        std::to_string(r.pos) + ", " + detail::at(r.event_index));
      if (!ref || lit->second.size() > ref->size()) {
        ref = &lit->second;
        ref_actor = m;
      }
    }
    if (!ref) continue;
    for (const ActorRef& m : p.correct_members(epoch)) {
      auto ait = p.inner.find(m);
      if (ait == p.inner.end()) continue;
      auto lit = ait->second.find(epoch);
      if (lit == ait->second.end()) continue;
      for (std::size_t i = 0; i < lit->second.size(); ++i)
        if (lit->second[i].key != (*ref)[i].key)
          return detail::fail(prop, "inner log divergence in epoch " + std::to_string(epoch) +
                                        " position " + std::to_string(i + 1) + " between " +
                                        m.str() + " and " + ref_actor.str() + ", " +
                                        detail::at(lit->second[i].event_index));
    }
  }

  // Certificate uniqueness per epoch boundary.
  std::map<EpochId, const ParsedTrace::CertRec*> cert_of;
  for (const auto& c : p.certs) {
    if (!p.is_correct(c.actor)) continue;
    auto [it, fresh] = cert_of.emplace(c.old_epoch, &c);
    if (!fresh && (it->second->hash != c.hash || it->second->h != c.h ||
                   it->second->next_epoch != c.next_epoch))
      return detail::fail(prop, "conflicting certificates for epoch " +
                                    std::to_string(c.old_epoch) + ": " + c.actor.str() +
                                    " vs " + it->second->actor.str() + ", " +
                                    detail::at(c.event_index));
  }

  // Activation quorum: exactly f_old+1 matching Done transactions.
  for (const auto& a : p.activations) {
    if (!p.is_correct(a.actor) || a.epoch == 1) continue;
    EpochId old_epoch = 0;
    for (const auto& [oe, cert] : cert_of)
      if (cert->next_epoch == a.epoch) old_epoch = oe;
    if (old_epoch == 0)
      return detail::fail(prop, "activation of epoch " + std::to_string(a.epoch) +
                                    " without a certificate, " + detail::at(a.event_index));
    auto cit = p.configs.find(old_epoch);
    if (cit == p.configs.end() || a.counted != cit->second.f + 1)
      return detail::fail(prop, "activation of epoch " + std::to_string(a.epoch) + " with " +
                                    std::to_string(a.counted) + " Done, expected f+1=" +
                                    std::to_string(cit == p.configs.end() ? 0
                                                                          : cit->second.f + 1) +
                                    ", " + detail::at(a.event_index));
  }

  // No post-preemption activation.
  for (const auto& a : p.activations)
    if (p.preempted_targets.count(a.epoch))
      return detail::fail(prop, "preempted epoch " + std::to_string(a.epoch) +
                                    " activated at " + a.actor.str() + ", " +
                                    detail::at(a.event_index));

  // Shutdown safety and phase legality, per correct actor.
  for (const auto& [actor, indices] : p.actor_events) {
    if (!p.is_correct(actor)) continue;
    std::uint64_t done_counted = 0;
    bool aborted = false;
    std::map<std::uint64_t, std::string> phase_at;  // attempt -> current phase
    for (std::size_t idx : indices) {
      const TraceEvent& e = tr.events[idx];
      switch (e.kind) {
        case Ev::DoneCounted:
          done_counted = std::max(done_counted, e.n1);
          break;
        case Ev::AbortPrepare:
          aborted = true;
          break;
        case Ev::HaltConsensus: {
          if (aborted) break;  // abandoned prepare may halt without quorum
          auto cit = p.configs.find(actor.epoch);
          std::uint64_t quorum = cit == p.configs.end() ? 1 : cit->second.f + 1;
          if (done_counted < quorum)
            return detail::fail(prop, actor.str() + " halted consensus with " +
                                          std::to_string(done_counted) + " < f+1=" +
                                          std::to_string(quorum) + " Done, " + detail::at(idx));
          break;
        }
        case Ev::PhaseChange: {
          static const std::set<std::pair<std::string, std::string>> legal = {
              {"idle", "awaiting_ready"},
              {"awaiting_ready", "awaiting_ready"},
              {"awaiting_ready", "handover_formed"},
              {"handover_formed", "awaiting_done"},
              {"awaiting_done", "active"},
              {"awaiting_done", "shut_down"},
              {"awaiting_ready", "shut_down"},
          };
          if (!legal.count({e.s1, e.s2}))
            return detail::fail(prop, actor.str() + " illegal phase edge " + e.s1 + "->" +
                                          e.s2 + ", " + detail::at(idx));
          auto it = phase_at.find(e.n1);
          std::string current = it == phase_at.end() ? "idle" : it->second;
          if (e.s1 != current)
            return detail::fail(prop, actor.str() + " phase edge from " + e.s1 +
                                          " but attempt " + std::to_string(e.n1) + " is in " +
                                          current + ", " + detail::at(idx));
          phase_at[e.n1] = e.s2;
          break;
        }
        default:
          break;
      }
    }
  }

  // Single active source epoch per replica, same order everywhere.
  std::vector<EpochId> ref_seq;
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    std::vector<EpochId> seq;
    for (const auto& r : log) {
      if (!seq.empty() && r.source_epoch < seq.back())
        return detail::fail(prop, actor.str() + " emissions interleave epochs at outer " +
                                      std::to_string(r.outer_pos) + ", " +
                                      detail::at(r.event_index));
      if (seq.empty() || r.source_epoch != seq.back()) seq.push_back(r.source_epoch);
    }
    if (seq.size() > ref_seq.size()) ref_seq = seq;
  }
  for (const auto& [actor, log] : p.outer) {
    if (!p.is_correct(actor)) continue;
    std::vector<EpochId> seq;
    for (const auto& r : log)
      if (seq.empty() || r.source_epoch != seq.back()) seq.push_back(r.source_epoch);
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i] != ref_seq[i])
        return detail::fail(prop, actor.str() + " active-epoch sequence diverges");
  }

  // Trust chain of the completed run verifies from the genesis anchor.
  std::map<EpochId, TrustLink> links;
  for (const auto& a : p.activations) {
    if (!p.is_correct(a.actor) || a.epoch == 1 || a.link_hex.empty()) continue;
    Bytes b = from_hex(a.link_hex);
    ByteReader r(b);
    TrustLink link = TrustLink::decode(r);
    auto [it, fresh] = links.emplace(link.cert.old_epoch, link);
    if (!fresh && !(it->second == link))
      return detail::fail(prop, "trust links for epoch " + std::to_string(link.cert.old_epoch) +
                                    " differ between replicas, " + detail::at(a.event_index));
  }
  if (!links.empty()) {
    if (!p.configs.count(1)) return detail::fail(prop, "trace lacks genesis config");
    std::vector<TrustLink> chain;
    for (const auto& [epoch, link] : links) chain.push_back(link);
    if (auto broken = verify_trust_chain(chain, p.genesis_anchor, p.configs.at(1)))
      return detail::fail(prop, "trust chain broken at link " +
                                    std::to_string(broken->link_index) + ": " + broken->reason);
  }

  return detail::pass(prop);
}

/* Every message sent to a replica that never crashed is delivered, except in
   the horizon's closing window where delivery may be cut off. */
inline Verdict check_fairness(const ParsedTrace& p) {
  const Trace& tr = *p.trace;
  const Time allowance = p.delay_max + p.max_extra_delay;
  const Time cutoff = p.horizon > allowance ? p.horizon - allowance : 0;
  std::set<std::uint64_t> delivered;
  for (const auto& e : tr.events)
    if (e.kind == Ev::MsgDeliver) delivered.insert(e.n1);
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    const auto& e = tr.events[i];
    if (e.kind != Ev::MsgSend) continue;
    if (e.t >= cutoff) continue;
    if (p.crashed.count(e.peer)) continue;
    if (!delivered.count(e.n1))
      return detail::fail("fairness", "message " + std::to_string(e.n1) + " to " +
                                          e.peer.str() + " never delivered, " + detail::at(i));
  }
  return detail::pass("fairness");
}

struct Report {
  std::vector<Verdict> verdicts;

  bool all_ok() const {
    for (const auto& v : verdicts)
      if (!v.ok()) return false;
    return true;
  }

  std::string text() const {
    std::string s;
    for (const auto& v : verdicts) {
      s += v.str();
      s += '\n';
    }
    return s;
  }
};

// Default liveness slack: ten mean link latencies per expected outer entry,
// floored at two resubmission rounds.
inline Time default_slack(const ParsedTrace& p, std::size_t oracle_len) {
  Time mean = (p.delay_min + p.delay_max) / 2;
  if (mean == 0) mean = 1;
  Time s = 10 * mean * static_cast<Time>(oracle_len == 0 ? 1 : oracle_len);
  return std::max<Time>(s, 2 * p.resubmit_timeout);
}

inline Report verify_trace(const sim::Trace& tr) {
  ParsedTrace p = parse(tr);
  Report rep;
  rep.verdicts.push_back(check_safety(p));
  rep.verdicts.push_back(check_integrity(p));
  rep.verdicts.push_back(check_exval(p));
  OracleResult oracle = oracle_outer_log(p);
  rep.verdicts.push_back(check_liveness(p, default_slack(p, oracle.entries.size())));
  rep.verdicts.push_back(check_oracle_agreement(p));
  rep.verdicts.push_back(check_protocol_invariants(p));
  rep.verdicts.push_back(check_fairness(p));
  return rep;
}

}  // namespace relog::verify
