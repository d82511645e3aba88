#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/fabric.hpp"
#include "otic/session.hpp"

namespace otic {

struct PortConfigEntry {
  std::string name;
  PortMode mode = PortMode::shutdown;
  std::set<Vid> vids;
  bool oob = false;
  bool operator==(const PortConfigEntry&) const = default;
};

// Per-switch rendering of the engine's port configuration, the unit handed to
// a switch driver.
struct SwitchConfigDocument {
  static constexpr int kVersion = 1;

  SwitchId switch_id;
  std::string name;
  std::string model;
  std::vector<PortConfigEntry> ports;  // every port of the switch, in inventory order
  std::set<SessionId> generated_from;

  nlohmann::json to_json() const {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : ports)
      ps.push_back({{"name", p.name}, {"mode", p.mode}, {"vids", p.vids}, {"oob", p.oob}});
    nlohmann::json from = nlohmann::json::array();
    for (SessionId s : generated_from) from.push_back("s" + std::to_string(s.value));
    return {{"version", kVersion}, {"switch_id", switch_id}, {"name", name},
            {"model", model},      {"ports", ps},            {"generated_from", from}};
  }

  static SwitchConfigDocument from_json(const nlohmann::json& j) {
    if (j.value("version", 0) != kVersion)
      throw Error(Errc::invalid_argument, "unsupported switch config version");
    SwitchConfigDocument d;
    d.switch_id = j.at("switch_id").get<SwitchId>();
    d.name = j.at("name").get<std::string>();
    d.model = j.at("model").get<std::string>();
    for (const auto& p : j.at("ports"))
      d.ports.push_back({p.at("name").get<std::string>(), p.at("mode").get<PortMode>(),
                         p.at("vids").get<std::set<Vid>>(), p.value("oob", false)});
    for (const auto& s : j.at("generated_from")) {
      auto str = s.get<std::string>();
      d.generated_from.insert(SessionId{static_cast<std::uint32_t>(std::stoul(str.substr(1)))});
    }
    return d;
  }

  bool operator==(const SwitchConfigDocument&) const = default;
};

// One document per switch, ordered by switch id. Ports without a
// session-derived config are shut down.
inline std::vector<SwitchConfigDocument> export_switch_configs(const Engine& engine) {
  const Inventory& inv = engine.inventory();
  PortConfigMap configs = engine.port_configs();
  std::vector<SwitchConfigDocument> out;
  for (const auto& [sid, sw] : inv.switches()) {
    SwitchConfigDocument doc{sid, sw.name, sw.model, {}, {}};
    for (PortId pid : sw.ports) {
      const Port& port = inv.port(pid);
      PortConfigEntry entry{port.name, PortMode::shutdown, {}, false};
      if (auto it = configs.find(pid); it != configs.end()) {
        entry.mode = it->second.mode;
        entry.vids = it->second.vids;
      }
      if (auto l = inv.link_of(pid); l && inv.link(*l).kind == LinkKind::oob) entry.oob = true;
      doc.ports.push_back(std::move(entry));
      for (SessionId s : engine.sessions_on_port(pid)) doc.generated_from.insert(s);
    }
    out.push_back(std::move(doc));
  }
  return out;
}

inline nlohmann::json configs_to_json(const std::vector<SwitchConfigDocument>& docs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : docs) arr.push_back(d.to_json());
  return {{"version", 1}, {"switches", arr}};
}

// Driver boundary. apply() pushes the documents to the switches and returns
// the fabric model the switches now implement. A hardware driver would
// translate each document into vendor CLI/NETCONF/REST calls, must reject a
// document set it cannot apply in full, and must read back the running
// configuration to build the returned model.
class SwitchDriver {
 public:
  virtual ~SwitchDriver() = default;
  virtual FabricModel apply(const std::vector<SwitchConfigDocument>& docs) = 0;
};

// Applies documents to an in-memory copy of the physical inventory.
class SimulatedDriver : public SwitchDriver {
 public:
  explicit SimulatedDriver(Inventory inventory, std::vector<SubnetInfo> subnets = {})
      : inventory_(std::move(inventory)), subnets_(std::move(subnets)) {}

  FabricModel apply(const std::vector<SwitchConfigDocument>& docs) override {
    PortConfigMap configs;
    for (const auto& doc : docs) {
      const Switch& sw = inventory_.switch_(doc.switch_id);
      std::map<std::string, PortId> by_name;
      for (PortId p : sw.ports) by_name[inventory_.port(p).name] = p;
      for (const auto& entry : doc.ports) {
        auto it = by_name.find(entry.name);
        if (it == by_name.end())
          throw Error(Errc::not_found, "switch '" + sw.name + "' has no port '" + entry.name + "'");
        if (entry.mode == PortMode::shutdown && !entry.oob) continue;
        configs[it->second] = PortConfig{entry.mode, entry.vids, entry.oob};
      }
    }
    running_ = configs;
    return build_fabric(inventory_, configs, subnets_);
  }

  const PortConfigMap& running() const { return running_; }

 private:
  Inventory inventory_;
  std::vector<SubnetInfo> subnets_;
  PortConfigMap running_;
};

}  // namespace otic
