#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"
#include "otic/inventory.hpp"
#include "otic/ipam.hpp"
#include "otic/physical_graph.hpp"
#include "otic/topology.hpp"
#include "otic/vlan.hpp"

namespace otic {

enum class PortMode { access, trunk, shutdown };

template <>
struct EnumNames<PortMode> {
  static constexpr std::array table{
      std::pair{PortMode::access, "access"},
      std::pair{PortMode::trunk, "trunk"},
      std::pair{PortMode::shutdown, "shutdown"},
  };
};

struct PortConfig {
  PortMode mode = PortMode::shutdown;
  std::set<Vid> vids;  // exactly one for access, the allowed set for trunk
  bool oob = false;

  static PortConfig access(Vid v) { return {PortMode::access, {v}, false}; }
  static PortConfig trunk(std::set<Vid> allowed) {
    return {PortMode::trunk, std::move(allowed), false};
  }
  static PortConfig shutdown() { return {}; }

  bool admits(Vid v) const { return mode != PortMode::shutdown && vids.count(v) > 0; }

  bool operator==(const PortConfig&) const = default;
};

using PortConfigMap = std::map<PortId, PortConfig>;

// Interface (plus plane when split) -> VID, for one session.
using ChannelKey = std::pair<InterfaceKind, std::optional<Plane>>;
using VlanMap = std::map<ChannelKey, Vid>;

// Multi-tenant permission attached to a session: the listed tenants may share
// these VIDs and subnets while the session lives.
struct Grant {
  SessionId session;
  std::set<TenantId> tenants;
  std::set<Vid> vids;
  std::set<Ipv4Prefix> subnets;
  bool operator==(const Grant&) const = default;
};

using Ownership = std::map<DeviceId, std::optional<TenantId>>;

// Immutable model of the switched fabric. Forwarding is static connectivity
// per VID: a frame crosses a switch freely and crosses a link only if the
// configs on both ends admit its VID.
class FabricModel {
 public:
  const Inventory& inventory() const { return *inventory_; }
  const PortConfigMap& configs() const { return configs_; }
  const std::vector<SubnetInfo>& router() const { return router_; }
  const std::vector<SubnetInfo>& known_subnets() const { return known_; }

  const PortConfig* config(PortId p) const {
    auto it = configs_.find(p);
    return it == configs_.end() ? nullptr : &it->second;
  }

  bool admits(PortId p, Vid v) const {
    const PortConfig* c = config(p);
    return c && c->admits(v);
  }

  // Every VID that appears in at least one non-shutdown config.
  std::set<Vid> configured_vids() const {
    std::set<Vid> out;
    for (const auto& [p, c] : configs_)
      if (c.mode != PortMode::shutdown) out.insert(c.vids.begin(), c.vids.end());
    return out;
  }

  // Switch port where traffic from `p` enters the fabric.
  std::optional<PortId> ingress(PortId p) const {
    const Port& port = inventory_->port(p);
    if (port.on_switch()) return p;
    return switch_attachment(*inventory_, p);
  }

  bool l2_reachable(PortId a, PortId b, Vid vid) const {
    auto ia = ingress(a);
    auto ib = ingress(b);
    if (!ia || !ib || !admits(*ia, vid) || !admits(*ib, vid)) return false;
    SwitchId from = inventory_->port(*ia).switch_id();
    SwitchId to = inventory_->port(*ib).switch_id();
    return switch_component(vid, from).count(to) > 0;
  }

  // Device ports grouped by the L2 segment they share on `vid`.
  std::vector<std::vector<PortId>> segments(Vid vid) const {
    std::map<SwitchId, std::size_t> comp_of;
    std::size_t next = 0;
    for (const auto& [id, sw] : inventory_->switches()) {
      if (comp_of.count(id)) continue;
      for (SwitchId s : switch_component(vid, id)) comp_of[s] = next;
      ++next;
    }
    std::vector<std::vector<PortId>> groups(next);
    for (const auto& [id, port] : inventory_->ports()) {
      if (port.on_switch() || port.medium != Medium::ethernet) continue;
      auto in = ingress(id);
      if (!in || !admits(*in, vid)) continue;
      groups[comp_of.at(inventory_->port(*in).switch_id())].push_back(id);
    }
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return groups;
  }

  bool l3_reachable(Ipv4Prefix a, Ipv4Prefix b) const {
    const SubnetInfo& sa = known(a);
    const SubnetInfo& sb = known(b);
    const SubnetInfo* ra = attached(a);
    const SubnetInfo* rb = attached(b);
    if (!ra || !rb) return false;
    if (a == b) return true;
    if (sa.is_services || sb.is_services) return true;
    if (sa.owners.empty() && sb.owners.empty()) return true;
    for (TenantId t : sa.owners)
      if (sb.owners.count(t)) return true;
    return false;
  }

  bool has_analog_link(PortId a, PortId b) const {
    auto l = inventory_->link_of(a);
    if (!l) return false;
    const PhysicalLink& link = inventory_->link(*l);
    return link.kind == LinkKind::analog && link.other(a) == b;
  }

 private:
  friend FabricModel build_fabric(const Inventory&, const PortConfigMap&,
                                  const std::vector<SubnetInfo>&,
                                  const std::optional<std::set<Vid>>&);

  std::set<SwitchId> switch_component(Vid vid, SwitchId start) const {
    std::set<SwitchId> seen{start};
    std::vector<SwitchId> stack{start};
    while (!stack.empty()) {
      SwitchId cur = stack.back();
      stack.pop_back();
      auto it = adjacency_.find(cur);
      if (it == adjacency_.end()) continue;
      for (const auto& hop : it->second) {
        if (seen.count(hop.neighbor)) continue;
        if (!admits(hop.local, vid) || !admits(hop.remote, vid)) continue;
        seen.insert(hop.neighbor);
        stack.push_back(hop.neighbor);
      }
    }
    return seen;
  }

  const SubnetInfo& known(Ipv4Prefix p) const {
    for (const auto& s : known_)
      if (s.prefix == p) return s;
    throw Error(Errc::not_found, "unknown subnet " + p.str());
  }

  const SubnetInfo* attached(Ipv4Prefix p) const {
    for (const auto& s : router_)
      if (s.prefix == p) return &s;
    return nullptr;
  }

  std::shared_ptr<const Inventory> inventory_;
  PortConfigMap configs_;
  std::map<SwitchId, std::vector<InterSwitchHop>> adjacency_;
  std::vector<SubnetInfo> router_;
  std::vector<SubnetInfo> known_;
};

// Validates the configs against the inventory and freezes them into a model.
// The router attaches exactly the routable subnets. When `active_vids` is
// given, every configured VID must be in it.
inline FabricModel build_fabric(const Inventory& inventory, const PortConfigMap& configs,
                                const std::vector<SubnetInfo>& subnets = {},
                                const std::optional<std::set<Vid>>& active_vids = std::nullopt) {
  for (const auto& [p, c] : configs) {
    if (!inventory.has_port(p))
      throw Error(Errc::not_found, "config references unknown port " + std::to_string(p.value));
    const Port& port = inventory.port(p);
    if (port.medium != Medium::ethernet)
      throw Error(Errc::invalid_argument,
                  "port " + inventory.port_label(p) + " is " +
                      std::string(name_of(port.medium)) + " and cannot carry VLANs");
    if (c.mode == PortMode::access && c.vids.size() != 1)
      throw Error(Errc::invalid_argument,
                  "access port " + inventory.port_label(p) + " needs exactly one VID");
    for (Vid v : c.vids) {
      if (is_reserved_vid(v))
        throw Error(Errc::invalid_argument, "VID " + std::to_string(v) + " is reserved");
      if (active_vids && !active_vids->count(v))
        throw Error(Errc::invalid_argument,
                    "port " + inventory.port_label(p) + " references inactive VID " +
                        std::to_string(v));
    }
  }
  FabricModel f;
  f.inventory_ = std::make_shared<const Inventory>(inventory);
  f.configs_ = configs;
  f.adjacency_ = switch_adjacency(inventory);
  f.known_ = subnets;
  for (const auto& s : subnets)
    if (s.routable) f.router_.push_back(s);
  return f;
}

// Reports ------------------------------------------------------------------------

struct EdgeResult {
  bool analog = false;
  PortId a;
  PortId b;
  std::optional<InterfaceKind> interface;
  std::vector<Vid> vids;
  bool passed = false;
};

struct IsolationViolation {
  TenantId tenant_a;
  TenantId tenant_b;
  std::optional<Vid> vid;  // L2 leak
  PortId port_a;
  PortId port_b;
  std::optional<Ipv4Prefix> subnet_a;  // L3 leak
  std::optional<Ipv4Prefix> subnet_b;
};

struct VerificationReport {
  std::vector<EdgeResult> intent_results;
  std::vector<IsolationViolation> isolation_violations;

  bool intent_passed() const {
    return std::all_of(intent_results.begin(), intent_results.end(),
                       [](const EdgeResult& r) { return r.passed; });
  }
  bool isolated() const { return isolation_violations.empty(); }
  bool passed() const { return intent_passed() && isolated(); }

  void merge(const VerificationReport& other) {
    intent_results.insert(intent_results.end(), other.intent_results.begin(),
                          other.intent_results.end());
    isolation_violations.insert(isolation_violations.end(),
                                other.isolation_violations.begin(),
                                other.isolation_violations.end());
  }
};

inline nlohmann::json report_to_json(const VerificationReport& r, const Inventory* inv = nullptr) {
  using nlohmann::json;
  auto label = [&](PortId p) -> json {
    if (inv) return inv->port_label(p);
    return p;
  };
  json edges = json::array();
  for (const auto& e : r.intent_results) {
    json j = {{"a", label(e.a)}, {"b", label(e.b)}, {"passed", e.passed}};
    if (e.analog) j["analog"] = true;
    else j["interface"] = *e.interface;
    if (!e.vids.empty()) j["vids"] = e.vids;
    edges.push_back(j);
  }
  json violations = json::array();
  for (const auto& v : r.isolation_violations) {
    json j = {{"tenant_a", v.tenant_a}, {"tenant_b", v.tenant_b}};
    if (v.vid) {
      j["vid"] = *v.vid;
      j["port_a"] = label(v.port_a);
      j["port_b"] = label(v.port_b);
    } else {
      j["subnet_a"] = *v.subnet_a;
      j["subnet_b"] = *v.subnet_b;
    }
    violations.push_back(j);
  }
  return {{"version", 1},
          {"intent_results", edges},
          {"isolation_violations", violations},
          {"intent_passed", r.intent_passed()},
          {"isolated", r.isolated()},
          {"passed", r.passed()}};
}

// Does the provisioned fabric realize the compiled topology?
inline VerificationReport verify_intent(const FabricModel& fabric, const LogicalTopology& topo,
                                        const VlanMap& vlan_map) {
  VerificationReport report;
  for (const auto& e : topo.digital_edges) {
    EdgeResult r{false, e.a, e.b, e.interface, {}, true};
    for (const auto& channel : edge_channels(e, topo.split_cu_planes)) {
      auto it = vlan_map.find(channel);
      if (it == vlan_map.end())
        throw Error(Errc::invalid_argument,
                    "no VID mapped for " + std::string(name_of(channel.first)));
      r.vids.push_back(it->second);
      r.passed = r.passed && fabric.l2_reachable(e.a, e.b, it->second);
    }
    report.intent_results.push_back(r);
  }
  for (const auto& e : topo.analog_edges)
    report.intent_results.push_back(
        {true, e.a, e.b, std::nullopt, {}, fabric.has_analog_link(e.a, e.b)});
  return report;
}

// Every VID on which devices of two different tenants share an L2 segment
// without a covering grant, and every L3 route between subnets of disjoint
// tenants, is a violation.
inline VerificationReport verify_isolation(const FabricModel& fabric, const Ownership& ownership,
                                           const std::vector<Grant>& grants) {
  VerificationReport report;
  const Inventory& inv = fabric.inventory();
  auto owner_of = [&](DeviceId d) {
    auto it = ownership.find(d);
    if (it == ownership.end())
      throw Error(Errc::not_found, "no owner recorded for device '" + inv.device(d).name + "'");
    return it->second;
  };
  auto granted = [&](Vid vid, TenantId x, TenantId y) {
    for (const auto& g : grants)
      if (g.vids.count(vid) && g.tenants.count(x) && g.tenants.count(y)) return true;
    return false;
  };
  for (Vid vid : fabric.configured_vids()) {
    for (const auto& segment : fabric.segments(vid)) {
      // One representative port per device.
      std::map<DeviceId, PortId> members;
      for (PortId p : segment) members.emplace(inv.port(p).device_id(), p);
      for (auto x = members.begin(); x != members.end(); ++x) {
        auto tx = owner_of(x->first);
        if (!tx) continue;
        for (auto y = std::next(x); y != members.end(); ++y) {
          auto ty = owner_of(y->first);
          if (!ty || *tx == *ty || granted(vid, *tx, *ty)) continue;
          report.isolation_violations.push_back(
              {*tx, *ty, vid, x->second, y->second, std::nullopt, std::nullopt});
        }
      }
    }
  }
  const auto& routed = fabric.router();
  for (std::size_t i = 0; i < routed.size(); ++i) {
    for (std::size_t j = i + 1; j < routed.size(); ++j) {
      const auto& a = routed[i];
      const auto& b = routed[j];
      if (a.owners.empty() || b.owners.empty()) continue;
      bool share = false;
      for (TenantId t : a.owners) share = share || b.owners.count(t);
      if (share || !fabric.l3_reachable(a.prefix, b.prefix)) continue;
      report.isolation_violations.push_back({*a.owners.begin(), *b.owners.begin(), std::nullopt,
                                             PortId{}, PortId{}, a.prefix, b.prefix});
    }
  }
  return report;
}

// (vid, port, port) triples with port_a < port_b over the given device ports.
inline std::set<std::tuple<Vid, PortId, PortId>> l2_relation(const FabricModel& fabric,
                                                             const std::vector<PortId>& ports,
                                                             const std::set<Vid>& vids) {
  std::set<std::tuple<Vid, PortId, PortId>> out;
  for (Vid v : vids)
    for (std::size_t i = 0; i < ports.size(); ++i)
      for (std::size_t j = i + 1; j < ports.size(); ++j)
        if (fabric.l2_reachable(ports[i], ports[j], v))
          out.emplace(v, std::min(ports[i], ports[j]), std::max(ports[i], ports[j]));
  return out;
}

}  // namespace otic
