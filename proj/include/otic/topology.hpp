#pragma once

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"
#include "otic/feature_catalog.hpp"
#include "otic/interface.hpp"
#include "otic/inventory.hpp"
#include "otic/physical_graph.hpp"

namespace otic {

enum class SessionKind { ru_conformance, du_conformance, wg4_iot, wg5_iot, e2e, e2e_mobility };
enum class AnalogMode { radiated, conducted };

// Where the S-plane comes from. `emulator` is the test equipment facing the
// DUT's fronthaul; `t_gm` is a grandmaster participant (external if none
// participates).
enum class SplaneChoice { emulator, t_gm, du, ru, external };

template <>
struct EnumNames<SessionKind> {
  static constexpr std::array table{
      std::pair{SessionKind::ru_conformance, "ru_conformance"},
      std::pair{SessionKind::du_conformance, "du_conformance"},
      std::pair{SessionKind::wg4_iot, "wg4_iot"},
      std::pair{SessionKind::wg5_iot, "wg5_iot"},
      std::pair{SessionKind::e2e, "e2e"},
      std::pair{SessionKind::e2e_mobility, "e2e_mobility"},
  };
};
template <>
struct EnumNames<AnalogMode> {
  static constexpr std::array table{
      std::pair{AnalogMode::radiated, "radiated"},
      std::pair{AnalogMode::conducted, "conducted"},
  };
};
template <>
struct EnumNames<SplaneChoice> {
  static constexpr std::array table{
      std::pair{SplaneChoice::emulator, "emulator"},
      std::pair{SplaneChoice::t_gm, "t_gm"},
      std::pair{SplaneChoice::du, "du"},
      std::pair{SplaneChoice::ru, "ru"},
      std::pair{SplaneChoice::external, "external"},
  };
};

struct TestOptions {
  AnalogMode analog_mode = AnalogMode::conducted;
  std::map<InterfaceKind, std::string> impairments;  // interface -> delay profile
  std::optional<SplaneChoice> splane;
  std::set<InterfaceKind> wg5_interfaces;  // beyond F1: E1, X2, Xn
  bool o1_overlay = false;
  bool split_cu_planes = false;
  bool shared = false;  // Plugfest mode: grant the shared /26s to the session

  bool operator==(const TestOptions&) const = default;
};

inline void to_json(nlohmann::json& j, const TestOptions& o) {
  nlohmann::json imp = nlohmann::json::object();
  for (const auto& [k, v] : o.impairments) imp[std::string(name_of(k))] = v;
  j = {{"analog_mode", o.analog_mode},
       {"impairments", imp},
       {"splane", o.splane ? nlohmann::json(*o.splane) : nlohmann::json(nullptr)},
       {"wg5_interfaces", o.wg5_interfaces},
       {"o1_overlay", o.o1_overlay},
       {"split_cu_planes", o.split_cu_planes},
       {"shared", o.shared}};
}

inline void from_json(const nlohmann::json& j, TestOptions& o) {
  o = TestOptions{};
  if (j.contains("analog_mode")) o.analog_mode = j.at("analog_mode").get<AnalogMode>();
  if (j.contains("impairments"))
    for (const auto& [k, v] : j.at("impairments").items())
      o.impairments[parse_enum<InterfaceKind>(k)] = v.get<std::string>();
  if (j.contains("splane") && !j.at("splane").is_null())
    o.splane = j.at("splane").get<SplaneChoice>();
  if (j.contains("wg5_interfaces"))
    o.wg5_interfaces = j.at("wg5_interfaces").get<std::set<InterfaceKind>>();
  o.o1_overlay = j.value("o1_overlay", false);
  o.split_cu_planes = j.value("split_cu_planes", false);
  o.shared = j.value("shared", false);
}

struct DigitalEdge {
  PortId a;
  PortId b;
  InterfaceKind interface = InterfaceKind::F1;
  std::set<Plane> planes;
  bool operator==(const DigitalEdge&) const = default;
};

struct AnalogEdge {
  PortId a;
  PortId b;
  AnalogMode mode = AnalogMode::conducted;
  bool operator==(const AnalogEdge&) const = default;
};

// Delay insertion on a logical edge. When an impairment emulator takes part,
// the edge is split through it and both halves share the VLAN.
struct Impairment {
  InterfaceKind interface = InterfaceKind::F1;
  PortId a;
  PortId b;
  std::string delay_profile;
  std::optional<DeviceId> emulator;
  bool operator==(const Impairment&) const = default;
};

// S-plane distribution from the source to one fronthaul endpoint.
struct SyncBranch {
  DeviceId target;
  std::vector<SwitchId> via;
  bool reachable = false;
  bool boundary_clocks_only = false;  // every switch on the way is a T-BC
  bool operator==(const SyncBranch&) const = default;
};

struct LogicalTopology {
  SessionKind kind = SessionKind::e2e;
  std::vector<DigitalEdge> digital_edges;
  std::vector<AnalogEdge> analog_edges;
  std::vector<Impairment> impairments;
  bool has_splane = false;
  std::optional<DeviceId> splane_source;  // nullopt with has_splane: external T-GM
  std::vector<SyncBranch> splane_tree;
  bool split_cu_planes = false;

  std::set<InterfaceKind> interfaces() const {
    std::set<InterfaceKind> out;
    for (const auto& e : digital_edges) out.insert(e.interface);
    return out;
  }

  bool operator==(const LogicalTopology&) const = default;
};

// The VLAN purposes an edge needs, as (interface, plane) pairs.
inline std::vector<std::pair<InterfaceKind, std::optional<Plane>>> edge_channels(
    const DigitalEdge& e, bool split_cu_planes) {
  if (e.interface == InterfaceKind::OFH_CU && split_cu_planes)
    return {{e.interface, Plane::cu_c}, {e.interface, Plane::cu_u}};
  return {{e.interface, std::nullopt}};
}

inline nlohmann::json topology_to_json(const LogicalTopology& t) {
  using nlohmann::json;
  json edges = json::array();
  for (const auto& e : t.digital_edges)
    edges.push_back({{"a", e.a}, {"b", e.b}, {"interface", e.interface}, {"planes", e.planes}});
  json analog = json::array();
  for (const auto& e : t.analog_edges)
    analog.push_back({{"a", e.a}, {"b", e.b}, {"mode", e.mode}});
  json imps = json::array();
  for (const auto& i : t.impairments)
    imps.push_back({{"interface", i.interface},
                    {"a", i.a},
                    {"b", i.b},
                    {"delay_profile", i.delay_profile},
                    {"emulator", i.emulator ? json(*i.emulator) : json(nullptr)}});
  json tree = json::array();
  for (const auto& b : t.splane_tree)
    tree.push_back({{"target", b.target},
                    {"via", b.via},
                    {"reachable", b.reachable},
                    {"boundary_clocks_only", b.boundary_clocks_only}});
  json src = nullptr;
  if (t.has_splane) src = t.splane_source ? json(*t.splane_source) : json("external");
  return {{"kind", t.kind},
          {"edges", edges},
          {"analog", analog},
          {"impairments", imps},
          {"splane_source", src},
          {"splane_tree", tree},
          {"split_cu_planes", t.split_cu_planes}};
}

inline LogicalTopology topology_from_json(const nlohmann::json& j) {
  LogicalTopology t;
  t.kind = j.at("kind").get<SessionKind>();
  for (const auto& e : j.at("edges"))
    t.digital_edges.push_back({e.at("a").get<PortId>(), e.at("b").get<PortId>(),
                               e.at("interface").get<InterfaceKind>(),
                               e.at("planes").get<std::set<Plane>>()});
  for (const auto& e : j.at("analog"))
    t.analog_edges.push_back(
        {e.at("a").get<PortId>(), e.at("b").get<PortId>(), e.at("mode").get<AnalogMode>()});
  for (const auto& i : j.at("impairments")) {
    Impairment imp{i.at("interface").get<InterfaceKind>(), i.at("a").get<PortId>(),
                   i.at("b").get<PortId>(), i.at("delay_profile").get<std::string>(),
                   std::nullopt};
    if (!i.at("emulator").is_null()) imp.emulator = i.at("emulator").get<DeviceId>();
    t.impairments.push_back(imp);
  }
  const auto& src = j.at("splane_source");
  t.has_splane = !src.is_null();
  if (src.is_number()) t.splane_source = src.get<DeviceId>();
  for (const auto& b : j.at("splane_tree"))
    t.splane_tree.push_back({b.at("target").get<DeviceId>(),
                             b.at("via").get<std::vector<SwitchId>>(),
                             b.at("reachable").get<bool>(),
                             b.at("boundary_clocks_only").get<bool>()});
  t.split_cu_planes = j.value("split_cu_planes", false);
  return t;
}

namespace detail {

struct RoleRange {
  DeviceKind kind;
  int min;
  int max;
};

inline std::vector<RoleRange> role_template(SessionKind kind) {
  using K = DeviceKind;
  switch (kind) {
    case SessionKind::ru_conformance:
      return {{K::ru, 1, 1}, {K::du_emulator, 1, 1}, {K::vst, 1, 1},
              {K::t_gm, 0, 1}, {K::impairment_emulator, 0, 1}};
    case SessionKind::du_conformance:
      return {{K::du, 1, 1}, {K::ru_ue_emulator, 1, 1}, {K::core_emulator, 1, 1},
              {K::t_gm, 0, 1}, {K::impairment_emulator, 0, 1}};
    case SessionKind::wg4_iot:
      return {{K::ru, 1, 1}, {K::du, 1, 1}, {K::ue_emulator, 1, 1},
              {K::core_emulator, 1, 1}, {K::t_gm, 0, 1}, {K::impairment_emulator, 0, 1}};
    case SessionKind::wg5_iot:
      return {{K::cu, 1, 2}, {K::du, 1, 2}, {K::impairment_emulator, 0, 1}};
    case SessionKind::e2e:
      return {{K::ue_emulator, 1, 1}, {K::ru, 1, 1}, {K::du, 1, 1}, {K::cu, 1, 1},
              {K::core_emulator, 1, 1}, {K::t_gm, 0, 1}, {K::impairment_emulator, 0, 1}};
    case SessionKind::e2e_mobility:
      return {{K::ue_emulator, 1, 1}, {K::ru, 2, 8}, {K::du, 1, 8}, {K::cu, 1, 1},
              {K::core_emulator, 1, 1}, {K::t_gm, 0, 1}, {K::impairment_emulator, 0, 1}};
  }
  return {};
}

// Ethernet port of a device that carries its VLANs: the first one cabled to a
// switch, else the first Ethernet port at all.
inline PortId data_port(const Inventory& inv, DeviceId id) {
  const Device& d = inv.device(id);
  std::optional<PortId> fallback;
  for (PortId p : d.ports) {
    if (inv.port(p).medium != Medium::ethernet) continue;
    if (switch_attachment(inv, p)) return p;
    if (!fallback) fallback = p;
  }
  if (!fallback)
    throw Error(Errc::template_violation, "device '" + d.name + "' has no Ethernet port");
  return *fallback;
}

// RF ports on both devices for the requested mode, preferring a pair that is
// already cabled together.
inline std::pair<PortId, PortId> analog_ports(const Inventory& inv, DeviceId a, DeviceId b,
                                              AnalogMode mode) {
  Medium m = mode == AnalogMode::radiated ? Medium::rf_antenna : Medium::rf_coaxial;
  auto ports_of = [&](DeviceId id) {
    std::vector<PortId> out;
    for (PortId p : inv.device(id).ports)
      if (inv.port(p).medium == m) out.push_back(p);
    if (out.empty())
      throw Error(Errc::medium_mismatch,
                  "device '" + inv.device(id).name + "' has no " +
                      std::string(name_of(m)) + " port for " +
                      std::string(name_of(mode)) + " testing");
    return out;
  };
  auto pa = ports_of(a);
  auto pb = ports_of(b);
  for (PortId x : pa)
    if (auto peer = inv.peer(x); peer && std::find(pb.begin(), pb.end(), *peer) != pb.end())
      return {x, *peer};
  return {pa.front(), pb.front()};
}

}  // namespace detail

// Turns a test intent into the adjacencies its wrap-around topology needs.
// Either returns the complete template or throws; never a partial topology.
inline LogicalTopology compile(const Inventory& inv, SessionKind kind,
                               const std::vector<DeviceId>& participants,
                               const TestOptions& options) {
  using K = DeviceKind;
  std::vector<DeviceId> sorted = participants;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::invalid_argument, "duplicate participant");

  std::map<K, std::vector<DeviceId>> by_kind;
  for (DeviceId id : sorted) by_kind[inv.device(id).kind].push_back(id);

  auto roles = detail::role_template(kind);
  bool want_o1 = options.o1_overlay;
  if (want_o1) {
    roles.push_back({K::compute, 0, 1});
    roles.push_back({K::monitor, 0, 1});
  }
  for (const auto& [k, ids] : by_kind) {
    auto it = std::find_if(roles.begin(), roles.end(),
                           [&](const detail::RoleRange& r) { return r.kind == k; });
    if (it == roles.end())
      throw Error(Errc::template_violation,
                  "device '" + inv.device(ids.front()).name + "' of kind " +
                      std::string(name_of(k)) + " has no role in " +
                      std::string(name_of(kind)));
  }
  for (const auto& r : roles) {
    int n = static_cast<int>(by_kind[r.kind].size());
    if (n < r.min)
      throw Error(Errc::template_violation,
                  std::string(name_of(kind)) + " needs at least " + std::to_string(r.min) +
                      " " + std::string(name_of(r.kind)) + ", got " + std::to_string(n));
    if (n > r.max)
      throw Error(Errc::template_violation,
                  std::string(name_of(kind)) + " allows at most " + std::to_string(r.max) +
                      " " + std::string(name_of(r.kind)) + ", got " + std::to_string(n));
  }
  auto one = [&](K k) { return by_kind[k].front(); };
  auto all = [&](K k) { return by_kind[k]; };

  LogicalTopology topo;
  topo.kind = kind;
  topo.split_cu_planes = options.split_cu_planes;

  auto digital = [&](DeviceId x, DeviceId y, InterfaceKind i, std::set<Plane> planes = {}) {
    topo.digital_edges.push_back(
        {detail::data_port(inv, x), detail::data_port(inv, y), i, std::move(planes)});
  };
  auto fronthaul = [&](DeviceId x, DeviceId y) {
    digital(x, y, InterfaceKind::OFH_M, {Plane::m});
    digital(x, y, InterfaceKind::OFH_CU, {Plane::cu_c, Plane::cu_u});
  };
  auto analog = [&](DeviceId x, DeviceId y) {
    auto [pa, pb] = detail::analog_ports(inv, x, y, options.analog_mode);
    topo.analog_edges.push_back({pa, pb, options.analog_mode});
  };

  // S-plane source resolution; `fh_emulator` is the TE on the far side of
  // the fronthaul, if the template has one.
  std::optional<DeviceId> fh_emulator;
  std::optional<SplaneChoice> splane = options.splane;

  switch (kind) {
    case SessionKind::ru_conformance:
      fronthaul(one(K::du_emulator), one(K::ru));
      analog(one(K::ru), one(K::vst));
      fh_emulator = one(K::du_emulator);
      if (!splane) splane = SplaneChoice::emulator;
      break;
    case SessionKind::du_conformance:
      fronthaul(one(K::ru_ue_emulator), one(K::du));
      digital(one(K::du), one(K::core_emulator), InterfaceKind::NG);
      fh_emulator = one(K::ru_ue_emulator);
      if (!splane) splane = SplaneChoice::emulator;
      break;
    case SessionKind::wg4_iot:
      analog(one(K::ue_emulator), one(K::ru));
      fronthaul(one(K::ru), one(K::du));
      digital(one(K::du), one(K::core_emulator), InterfaceKind::F1);
      if (!splane)
        throw Error(Errc::template_violation,
                    "wg4_iot needs an explicit S-plane source (t_gm, du, ru or external)");
      break;
    case SessionKind::wg5_iot: {
      auto cus = all(K::cu);
      auto dus = all(K::du);
      for (std::size_t i = 0; i < dus.size(); ++i)
        digital(cus[std::min(i, cus.size() - 1)], dus[i], InterfaceKind::F1);
      for (InterfaceKind i : options.wg5_interfaces) {
        if (i == InterfaceKind::F1) continue;
        if (i != InterfaceKind::E1 && i != InterfaceKind::X2 && i != InterfaceKind::Xn)
          throw Error(Errc::invalid_argument,
                      std::string(name_of(i)) + " is not a WG5 interface");
        if (cus.size() < 2)
          throw Error(Errc::template_violation,
                      std::string(name_of(i)) + " testing needs two CUs");
        digital(cus[0], cus[1], i);
      }
      if (splane)
        throw Error(Errc::invalid_argument, "wg5_iot has no fronthaul S-plane");
      break;
    }
    case SessionKind::e2e:
    case SessionKind::e2e_mobility: {
      auto rus = all(K::ru);
      auto dus = all(K::du);
      if (dus.size() > rus.size())
        throw Error(Errc::template_violation, "more DUs than RUs");
      for (DeviceId ru : rus) analog(one(K::ue_emulator), ru);
      for (std::size_t i = 0; i < rus.size(); ++i) fronthaul(rus[i], dus[i % dus.size()]);
      for (DeviceId du : dus) digital(du, one(K::cu), InterfaceKind::F1);
      digital(one(K::cu), one(K::core_emulator), InterfaceKind::NG);
      if (!splane) splane = by_kind[K::t_gm].empty() ? SplaneChoice::external : SplaneChoice::t_gm;
      break;
    }
  }

  if (want_o1) {
    std::optional<DeviceId> anchor;
    if (!by_kind[K::compute].empty()) anchor = one(K::compute);
    else if (!by_kind[K::monitor].empty()) anchor = one(K::monitor);
    if (!anchor)
      throw Error(Errc::template_violation, "O1 overlay needs a compute or monitor anchor");
    for (DeviceId id : sorted) {
      K k = inv.device(id).kind;
      if (k == K::cu || k == K::du || k == K::ru) digital(*anchor, id, InterfaceKind::O1);
    }
  }

  // Impairments -----------------------------------------------------------------
  std::optional<DeviceId> emulator;
  if (!by_kind[K::impairment_emulator].empty()) emulator = one(K::impairment_emulator);
  for (const auto& [iface, profile] : options.impairments) {
    if (is_analog(iface))
      throw Error(Errc::invalid_argument, "impairments apply to digital edges only");
    std::vector<DigitalEdge> next;
    bool found = false;
    for (const auto& e : topo.digital_edges) {
      if (e.interface != iface) {
        next.push_back(e);
        continue;
      }
      found = true;
      topo.impairments.push_back({iface, e.a, e.b, profile, emulator});
      if (emulator) {
        PortId ep = detail::data_port(inv, *emulator);
        next.push_back({e.a, ep, e.interface, e.planes});
        next.push_back({ep, e.b, e.interface, e.planes});
      } else {
        next.push_back(e);
      }
    }
    if (!found)
      throw Error(Errc::template_violation,
                  "no " + std::string(name_of(iface)) + " edge to impair in " +
                      std::string(name_of(kind)));
    topo.digital_edges = std::move(next);
  }

  // S-plane -----------------------------------------------------------------------
  if (splane) {
    topo.has_splane = true;
    switch (*splane) {
      case SplaneChoice::emulator:
        if (!fh_emulator)
          throw Error(Errc::template_violation,
                      std::string(name_of(kind)) + " has no fronthaul emulator to source S-plane");
        topo.splane_source = fh_emulator;
        break;
      case SplaneChoice::t_gm:
        if (!by_kind[K::t_gm].empty()) topo.splane_source = one(K::t_gm);
        break;
      case SplaneChoice::du:
        if (by_kind[K::du].empty())
          throw Error(Errc::template_violation, "S-plane from DU but no DU participates");
        topo.splane_source = one(K::du);
        break;
      case SplaneChoice::ru:
        if (by_kind[K::ru].empty())
          throw Error(Errc::template_violation, "S-plane from RU but no RU participates");
        topo.splane_source = one(K::ru);
        break;
      case SplaneChoice::external:
        break;
    }
    if (topo.splane_source) {
      // Distribution to every fronthaul endpoint over the switch graph.
      auto adj = switch_adjacency(inv);
      auto switch_of = [&](DeviceId d) -> std::optional<SwitchId> {
        auto att = switch_attachment(inv, detail::data_port(inv, d));
        if (!att) return std::nullopt;
        return inv.port(*att).switch_id();
      };
      std::set<DeviceId> targets;
      for (const auto& e : topo.digital_edges) {
        if (e.interface != InterfaceKind::OFH_CU) continue;
        for (PortId p : {e.a, e.b}) targets.insert(inv.port(p).device_id());
      }
      targets.erase(*topo.splane_source);
      auto from = switch_of(*topo.splane_source);
      for (DeviceId t : targets) {
        SyncBranch br{t, {}, false, false};
        auto to = switch_of(t);
        if (from && to) {
          if (auto path = shortest_switch_path(adj, *from, *to)) {
            br.reachable = true;
            br.via.push_back(*from);
            for (const auto& hop : *path) br.via.push_back(hop.neighbor);
            br.boundary_clocks_only = true;
            for (SwitchId s : br.via)
              if (inv.switch_(s).clock_role == ClockRole::none) br.boundary_clocks_only = false;
          }
        }
        topo.splane_tree.push_back(br);
      }
    }
  }
  return topo;
}

// IOT profile ----------------------------------------------------------------

struct IotProfile {
  FeatureSet du_features;
  FeatureSet ru_features;
  FeatureSet common;
  bool operator==(const IotProfile&) const = default;
};

inline void to_json(nlohmann::json& j, const IotProfile& p) {
  j = {{"du_features", p.du_features}, {"ru_features", p.ru_features}, {"common", p.common}};
}
inline void from_json(const nlohmann::json& j, IotProfile& p) {
  p.du_features = j.at("du_features").get<FeatureSet>();
  p.ru_features = j.at("ru_features").get<FeatureSet>();
  p.common = j.at("common").get<FeatureSet>();
}

// Key-wise intersection of what the DU and RU vendors declare. A mandatory
// key that either side declares must keep at least one common value.
inline IotProfile match_iot_profile(const FeatureSet& du, const FeatureSet& ru) {
  IotProfile profile{du, ru, {}};
  std::set<std::string> keys;
  for (const auto& [k, v] : du) keys.insert(k);
  for (const auto& [k, v] : ru) keys.insert(k);
  for (const auto& key : keys) {
    auto d = du.find(key);
    auto r = ru.find(key);
    std::set<std::string> common;
    if (d != du.end() && r != ru.end())
      std::set_intersection(d->second.begin(), d->second.end(), r->second.begin(),
                            r->second.end(), std::inserter(common, common.end()));
    const CatalogEntry* entry = find_catalog_entry(key);
    if (common.empty()) {
      if (entry && entry->iot_mandatory)
        throw Error(Errc::incompatible, "no common value for mandatory feature '" + key + "'");
      continue;
    }
    profile.common[key] = std::move(common);
  }
  return profile;
}

// Plane checklist ------------------------------------------------------------

enum class TestPlane { m_plane, s_plane, cu_plane, performance };
enum class PlaneStatus { pending, passed, failed };

template <>
struct EnumNames<TestPlane> {
  static constexpr std::array table{
      std::pair{TestPlane::m_plane, "m_plane"},
      std::pair{TestPlane::s_plane, "s_plane"},
      std::pair{TestPlane::cu_plane, "cu_plane"},
      std::pair{TestPlane::performance, "performance"},
  };
};
template <>
struct EnumNames<PlaneStatus> {
  static constexpr std::array table{
      std::pair{PlaneStatus::pending, "pending"},
      std::pair{PlaneStatus::passed, "passed"},
      std::pair{PlaneStatus::failed, "failed"},
  };
};

// M-plane first, then S-plane, CU-plane, and best-effort performance last.
// A plane leaves `pending` only once every earlier plane has passed.
class PlaneChecklist {
 public:
  static constexpr std::array kOrder{TestPlane::m_plane, TestPlane::s_plane,
                                     TestPlane::cu_plane, TestPlane::performance};

  PlaneStatus status(TestPlane p) const { return status_[index(p)]; }

  // Next plane allowed to record a result, if any.
  std::optional<TestPlane> eligible() const {
    for (TestPlane p : kOrder) {
      if (status(p) == PlaneStatus::passed) continue;
      if (status(p) == PlaneStatus::failed) return std::nullopt;
      return p;
    }
    return std::nullopt;
  }

  void advance(TestPlane plane, bool passed) {
    auto next = eligible();
    if (!next || *next != plane) {
      std::string why = next ? "next eligible plane is " + std::string(name_of(*next))
                             : std::string("checklist is closed");
      throw Error(Errc::out_of_order,
                  "cannot record " + std::string(name_of(plane)) + ": " + why);
    }
    status_[index(plane)] = passed ? PlaneStatus::passed : PlaneStatus::failed;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (TestPlane p : kOrder) j[std::string(name_of(p))] = status(p);
    return j;
  }

  static PlaneChecklist from_json(const nlohmann::json& j) {
    PlaneChecklist c;
    for (TestPlane p : kOrder) c.status_[index(p)] = j.at(std::string(name_of(p))).get<PlaneStatus>();
    return c;
  }

  bool operator==(const PlaneChecklist&) const = default;

 private:
  static std::size_t index(TestPlane p) { return static_cast<std::size_t>(p); }
  std::array<PlaneStatus, 4> status_{PlaneStatus::pending, PlaneStatus::pending,
                                     PlaneStatus::pending, PlaneStatus::pending};
};

}  // namespace otic
