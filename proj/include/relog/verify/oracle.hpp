// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relog/verify/parsed.hpp"

namespace relog::verify {

/* Independent reconstruction of the expected outer log: the batch
   construction from the safety argument, reimplemented from scratch rather
   than reusing the incremental sanitizer. Take the inner logs in activation
   order, truncate each handed-over epoch at its h, keep client transactions
   only, deduplicate globally, apply external validity. Agreement between this
   and every replica's incrementally emitted log is the evidence the test
   suite is built on. */

struct OracleEntry {
  std::string txid;
  EpochId source_epoch;
  Pos source_pos;
};

struct OracleResult {
  std::vector<OracleEntry> entries;
  std::optional<std::string> error;  // reconstruction impossible
};

inline OracleResult oracle_outer_log(const ParsedTrace& p) {
  OracleResult out;

  // Longest agreed inner log per epoch, taken from correct members. Prefix
  // consistency across members is checked separately.
  std::map<EpochId, const std::vector<ParsedTrace::InnerRec>*> logs;
  for (const auto& [epoch, cfg] : p.configs) {
    const std::vector<ParsedTrace::InnerRec>* best = nullptr;
    for (const ActorRef& r : p.correct_members(epoch)) {
      auto ait = p.inner.find(r);
      if (ait == p.inner.end()) continue;
      auto lit = ait->second.find(epoch);
      if (lit == ait->second.end()) continue;
      if (!best || lit->second.size() > best->size()) best = &lit->second;
    }
    if (best) logs[epoch] = best;
  }

  // Handover point per epoch (certificates are cross-checked elsewhere).
  std::map<EpochId, std::pair<Pos, EpochId>> handover;  // old -> (h, next)
  for (const auto& c : p.certs)
    if (p.is_correct(c.actor)) handover.emplace(c.old_epoch, std::make_pair(c.h, c.next_epoch));

  std::set<EpochId> activated;
  for (const auto& a : p.activations)
    if (p.is_correct(a.actor)) activated.insert(a.epoch);

  ExvalPredicate exval = exval_by_name(p.exval_name);
  std::set<std::string> seen;
  EpochId epoch = 1;
  while (true) {
    auto hit = handover.find(epoch);
    const bool handed_over = hit != handover.end();
    auto lit = logs.find(epoch);
    if (lit == logs.end()) {
      if (handed_over) {
        out.error = "no correct inner log for handed-over epoch " + std::to_string(epoch);
        return out;
      }
      break;  // epoch produced nothing (e.g. genesis with no traffic)
    }
    const auto& log = *lit->second;
    const Pos cutoff = handed_over ? hit->second.first : log.empty() ? 0 : log.back().pos;
    if (handed_over && (log.empty() || log.back().pos < hit->second.first)) {
      out.error = "inner log of epoch " + std::to_string(epoch) +
                  " does not reach its handover point";
      return out;
    }
    for (const auto& rec : log) {
      if (rec.pos > cutoff) break;
      if (rec.kind != "tx") continue;
      if (seen.count(rec.txid)) continue;
      auto sit = p.submits.find(rec.txid);
      if (sit != p.submits.end()) {
        Transaction tx = Transaction::make(sit->second.payload, "client");
        if (!exval(tx)) continue;
      }
      seen.insert(rec.txid);
      out.entries.push_back({rec.txid, epoch, rec.pos});
    }
    // The next epoch contributes only once it became active somewhere.
    if (!handed_over || !activated.count(hit->second.second)) break;
    epoch = hit->second.second;
  }
  return out;
}

}  // namespace relog::verify
