// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "relog/records.hpp"
#include "relog/types.hpp"

namespace relog {

/* External-validity predicates are named, pure functions over the payload so
   that every replica of a deployment can be configured with the same one.
   Divergent predicates across replicas are a misconfiguration, surfaced by
   the trace verifier as a safety violation. */
using ExvalPredicate = std::function<bool(const Transaction&)>;

inline bool exval_accept_all(const Transaction&) { return true; }

// Rejects payloads carrying the "invalid:" marker prefix.
inline bool exval_reject_tagged(const Transaction& tx) {
  static constexpr std::string_view kTag = "invalid:";
  if (tx.payload.size() < kTag.size()) return true;
  return !std::equal(kTag.begin(), kTag.end(), tx.payload.begin());
}

inline ExvalPredicate exval_by_name(const std::string& name) {
  if (name == "accept_all") return exval_accept_all;
  if (name == "reject_tagged") return exval_reject_tagged;
  throw std::invalid_argument("unknown exval predicate: " + name);
}

/* Incremental translation of per-epoch inner logs into the single outer log.

   An entry is emitted iff it is a client transaction, lies at or below the
   epoch's handover cutoff h (when one is set), its TxId has not been emitted
   before anywhere in outer-log history, and the external-validity predicate
   accepts it. System transactions and noops are consumed silently. The
   emitted sequence is a deterministic function of the inner-log prefixes
   consumed, which is what makes the outer log identical at every correct
   replica. */
class LogSanitizer {
 public:
  LogSanitizer(EpochId starting_epoch, ExvalPredicate exval, Pos outer_next = 1)
      : current_epoch_(starting_epoch), outer_next_(outer_next), exval_(std::move(exval)) {}

  EpochId current_epoch() const { return current_epoch_; }
  std::optional<Pos> emit_cutoff() const { return cutoff_; }
  Pos outer_next() const { return outer_next_; }
  bool seen(const TxId& id) const { return seen_ids_.count(id) > 0; }

  // Seeds dedup state from an adopted outer-log prefix (incoming-replica sync).
  void note_emitted(const TxId& id) { seen_ids_.insert(id); }

  void set_exval(ExvalPredicate p) { exval_ = std::move(p); }

  // cert.old_epoch must be the epoch currently being consumed.
  void apply_handover(const HandoverCertificate& cert) {
    if (cert.old_epoch != current_epoch_)
      throw std::logic_error("handover certificate for non-current epoch");
    cutoff_ = cert.h;
    next_epoch_ = cert.next_config.epoch;
    // The cutoff may already be behind us if every position <= h was consumed.
    maybe_advance();
  }

  // Entries must arrive in inner-position order for the current epoch; the
  // consensus port guarantees both. Violations are programming errors.
  std::optional<OuterEntry> ingest(const InnerLogEntry& entry) {
    if (entry.epoch != current_epoch_)
      throw std::logic_error("sanitizer: wrong-epoch ingestion");
    if (entry.position != consumed_ + 1)
      throw std::logic_error("sanitizer: out-of-order ingestion");
    consumed_ = entry.position;

    std::optional<OuterEntry> out;
    if (is_client_tx(entry.content) && (!cutoff_ || entry.position <= *cutoff_)) {
      const auto& tx = std::get<Transaction>(entry.content);
      if (!seen_ids_.count(tx.id) && exval_(tx)) {
        seen_ids_.insert(tx.id);
        OuterEntry oe;
        oe.outer_position = outer_next_++;
        oe.tx = tx;
        oe.source_epoch = entry.epoch;
        oe.source_position = entry.position;
        out = std::move(oe);
      }
    }
    maybe_advance();
    return out;
  }

  // True once the handed-over prefix is fully consumed and the sanitizer has
  // moved to the next epoch (dedup state and outer numbering carry over).
  bool advanced_past(EpochId epoch) const { return current_epoch_ > epoch; }

 private:
  void maybe_advance() {
    if (cutoff_ && consumed_ >= *cutoff_) {
      current_epoch_ = next_epoch_;
      cutoff_.reset();
      consumed_ = 0;
    }
  }

  EpochId current_epoch_;
  EpochId next_epoch_ = 0;
  Pos consumed_ = 0;
  std::optional<Pos> cutoff_;
  Pos outer_next_;
  std::unordered_set<TxId> seen_ids_;
  ExvalPredicate exval_;
};

}  // namespace relog
