// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "relog/hash.hpp"
#include "relog/types.hpp"

namespace relog {

// Toy execution engine: applies "set <key>=<value>" payloads from the outer
// log to a map. Anything else is a no-op. Exists so runs can cross-check that
// identical outer logs materialize identical state.
class KvState {
 public:
  void apply(const Transaction& tx) {
    std::string s(tx.payload.begin(), tx.payload.end());
    if (s.rfind("set ", 0) != 0) return;
    auto eq = s.find('=', 4);
    if (eq == std::string::npos) return;
    store_[s.substr(4, eq - 4)] = s.substr(eq + 1);
  }

  const std::map<std::string, std::string>& store() const { return store_; }

  Hash digest() const {
    ByteWriter w;
    for (const auto& [k, v] : store_) {
      w.lp_str(k);
      w.lp_str(v);
    }
    return hash_bytes(w.bytes());
  }

 private:
  std::map<std::string, std::string> store_;
};

}  // namespace relog
