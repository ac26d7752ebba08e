// Copyright (c) 2026 relog contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relog/sanitizer.hpp"
#include "relog/types.hpp"

namespace relog::sim {

/* Scenario files: versioned, human-writable JSON (schema documented in
   README.md). A scenario names the epoch configurations that may appear in a
   run plus a timed event schedule; everything else about a run is derived
   deterministically from (scenario, seed). */

constexpr int kScenarioVersion = 1;

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct EpochSpec {
  EpochId epoch = 0;
  ConsensusKind consensus = ConsensusKind::Sequencer;
  FaultModel fault_model = FaultModel::Crash;
  std::uint32_t f = 0;
  std::vector<std::uint32_t> members;
};

struct ScenarioEvent {
  enum class Kind {
    ClientTx,     // payload?, target?, resubmit flag
    ClientBatch,  // count auto-payload txs
    EpochChange,  // next epoch id, targets? (member-order indices)
    Crash,
    ByzSilence,
    Equivocate,   // Done-equivocation
    Tamper,       // serves corrupted fetch/sync responses
    Delay,        // +amount on everything the target sends in [t, until)
  };
  Kind kind = Kind::ClientTx;
  Time t = 0;
  std::string payload;  // ClientTx; empty = auto-generated
  std::optional<std::uint32_t> target;  // ClientTx / member-order index
  bool resubmit = true;
  std::uint32_t count = 1;
  EpochId next = 0;                     // EpochChange
  std::vector<std::uint32_t> targets;   // EpochChange; empty = all members
  EpochId epoch = 0;                    // fault target
  std::uint32_t index = 0;              // fault target (member index)
  Time amount = 0, until = 0;           // Delay
};

struct Scenario {
  std::string name = "unnamed";
  std::uint64_t seed = 0;
  Time horizon = 0;
  Time delay_min = 1, delay_max = 3;
  Time resubmit_timeout = 60;
  Time fill_holddown = 16;
  Time poll_interval = 4;
  std::string exval = "accept_all";
  std::vector<EpochSpec> epochs;
  std::vector<ScenarioEvent> events;

  const EpochSpec* spec_of(EpochId e) const {
    for (const auto& s : epochs)
      if (s.epoch == e) return &s;
    return nullptr;
  }

  EpochConfig config_of(EpochId e) const {
    const EpochSpec* s = spec_of(e);
    if (!s) throw ScenarioError("unknown epoch " + std::to_string(e));
    return make_config(s->epoch, s->members, s->f, s->fault_model, s->consensus);
  }
};

namespace detail {

inline ConsensusKind parse_consensus(const std::string& s) {
  if (s == "sequencer") return ConsensusKind::Sequencer;
  if (s == "multilane") return ConsensusKind::MultiLane;
  throw ScenarioError("epochs[].consensus: unknown kind '" + s + "'");
}

inline FaultModel parse_fault_model(const std::string& s) {
  if (s == "crash") return FaultModel::Crash;
  if (s == "byzantine") return FaultModel::Byzantine;
  throw ScenarioError("epochs[].fault_model: unknown model '" + s + "'");
}

}  // namespace detail

inline Scenario parse_scenario_json(const nlohmann::json& j) {
  using nlohmann::json;
  Scenario sc;
  if (!j.contains("scenario_version"))
    throw ScenarioError("scenario_version required");
  if (j.at("scenario_version").get<int>() != kScenarioVersion)
    throw ScenarioError("unsupported scenario_version " +
                        j.at("scenario_version").dump() + " (supported: " +
                        std::to_string(kScenarioVersion) + ")");
  if (!j.contains("seed")) throw ScenarioError("seed required");
  sc.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("horizon")) throw ScenarioError("horizon required");
  sc.horizon = j.at("horizon").get<Time>();
  sc.name = j.value("name", std::string("unnamed"));
  if (j.contains("delay")) {
    sc.delay_min = j.at("delay").value("min", sc.delay_min);
    sc.delay_max = j.at("delay").value("max", sc.delay_max);
  }
  if (sc.delay_min == 0 || sc.delay_max < sc.delay_min)
    throw ScenarioError("delay: need 1 <= min <= max");
  sc.resubmit_timeout = j.value("resubmit_timeout", sc.resubmit_timeout);
  sc.fill_holddown = j.value("fill_holddown", sc.fill_holddown);
  sc.poll_interval = j.value("poll_interval", sc.poll_interval);
  sc.exval = j.value("exval", sc.exval);
  exval_by_name(sc.exval);  // throws on unknown predicate

  if (!j.contains("epochs") || !j.at("epochs").is_array() || j.at("epochs").empty())
    throw ScenarioError("epochs: nonempty array required");
  for (const auto& je : j.at("epochs")) {
    EpochSpec e;
    e.epoch = je.at("epoch").get<EpochId>();
    e.consensus = detail::parse_consensus(je.at("consensus").get<std::string>());
    e.fault_model = detail::parse_fault_model(je.at("fault_model").get<std::string>());
    e.f = je.at("f").get<std::uint32_t>();
    for (const auto& m : je.at("members")) e.members.push_back(m.get<std::uint32_t>());
    if (sc.spec_of(e.epoch)) throw ScenarioError("epochs: duplicate epoch id");
    sc.epochs.push_back(e);
    if (auto violation = validate_epoch_config(sc.config_of(e.epoch)))
      throw ScenarioError("epochs[" + std::to_string(e.epoch) + "]: " + *violation);
  }
  if (!sc.spec_of(1)) throw ScenarioError("epochs: genesis epoch 1 required");

  Time last_event = 0;
  for (const auto& je : j.value("events", nlohmann::json::array())) {
    ScenarioEvent ev;
    ev.t = je.at("t").get<Time>();
    last_event = std::max(last_event, ev.t);
    const std::string kind = je.at("kind").get<std::string>();
    if (kind == "client_tx") {
      ev.kind = ScenarioEvent::Kind::ClientTx;
      ev.payload = je.value("payload", std::string());
      if (je.contains("target")) ev.target = je.at("target").get<std::uint32_t>();
      ev.resubmit = je.value("resubmit", true);
    } else if (kind == "client_batch") {
      ev.kind = ScenarioEvent::Kind::ClientBatch;
      ev.count = je.at("count").get<std::uint32_t>();
    } else if (kind == "epoch_change") {
      ev.kind = ScenarioEvent::Kind::EpochChange;
      ev.next = je.at("next").get<EpochId>();
      if (!sc.spec_of(ev.next)) throw ScenarioError("events: epoch_change to unknown epoch");
      for (const auto& t : je.value("targets", nlohmann::json::array()))
        ev.targets.push_back(t.get<std::uint32_t>());
    } else if (kind == "crash" || kind == "byz_silence" || kind == "equivocate" ||
               kind == "tamper") {
      ev.kind = kind == "crash"        ? ScenarioEvent::Kind::Crash
                : kind == "byz_silence" ? ScenarioEvent::Kind::ByzSilence
                : kind == "equivocate"  ? ScenarioEvent::Kind::Equivocate
                                        : ScenarioEvent::Kind::Tamper;
      ev.epoch = je.at("epoch").get<EpochId>();
      ev.index = je.at("index").get<std::uint32_t>();
    } else if (kind == "delay") {
      ev.kind = ScenarioEvent::Kind::Delay;
      ev.epoch = je.at("epoch").get<EpochId>();
      ev.index = je.at("index").get<std::uint32_t>();
      ev.amount = je.at("amount").get<Time>();
      ev.until = je.value("until", sc.horizon);
    } else {
      throw ScenarioError("events: unknown kind '" + kind + "'");
    }
    if (ev.epoch != 0) {
      const EpochSpec* s = sc.spec_of(ev.epoch);
      if (!s) throw ScenarioError("events: fault targets unknown epoch");
      if (std::find(s->members.begin(), s->members.end(), ev.index) == s->members.end())
        throw ScenarioError("events: fault targets unknown member");
    }
    sc.events.push_back(std::move(ev));
  }
  if (sc.horizon <= last_event)
    throw ScenarioError("horizon must exceed the last scheduled event");
  return sc;
}

inline Scenario parse_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("json parse error: ") + e.what());
  }
  try {
    return parse_scenario_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("schema violation: ") + e.what());
  }
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario_text(text);
}

}  // namespace relog::sim
