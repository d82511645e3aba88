#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"
#include "otic/fabric.hpp"
#include "otic/hash.hpp"
#include "otic/inventory.hpp"
#include "otic/ipam.hpp"
#include "otic/physical_graph.hpp"
#include "otic/topology.hpp"
#include "otic/vlan.hpp"

namespace otic {

enum class SessionState { draft, provisioned, active, torn_down, failed };

template <>
struct EnumNames<SessionState> {
  static constexpr std::array table{
      std::pair{SessionState::draft, "draft"},
      std::pair{SessionState::provisioned, "provisioned"},
      std::pair{SessionState::active, "active"},
      std::pair{SessionState::torn_down, "torn_down"},
      std::pair{SessionState::failed, "failed"},
  };
};

// Sessions in these states own their allocations and device claims.
constexpr bool holds_resources(SessionState s) {
  return s == SessionState::provisioned || s == SessionState::active ||
         s == SessionState::failed;
}

struct Tenant {
  TenantId id;
  std::string name;
  bool operator==(const Tenant&) const = default;
};

struct SessionAllocations {
  VlanMap vids;
  std::map<InterfaceKind, Ipv4Prefix> subnets;
  std::map<PortId, std::set<Vid>> port_vids;  // switch port -> VIDs it must carry
  std::set<PortId> device_facing;             // subset of port_vids keys
  Grant grant;

  bool empty() const { return vids.empty() && subnets.empty() && port_vids.empty(); }
  std::set<Vid> vid_set() const {
    std::set<Vid> out;
    for (const auto& [k, v] : vids) out.insert(v);
    return out;
  }
  bool operator==(const SessionAllocations&) const = default;
};

struct Session {
  SessionId id;
  SessionKind kind = SessionKind::e2e;
  std::set<TenantId> tenants;
  std::vector<DeviceId> participants;
  TestOptions options;
  SessionState state = SessionState::draft;
  LogicalTopology topology;
  SessionAllocations allocations;
  PlaneChecklist checklist;
  std::optional<IotProfile> iot_profile;
  nlohmann::json report;  // last verification, null until verified

  bool operator==(const Session&) const = default;
};

struct EngineConfig {
  Vid vid_first = kFirstVid;
  Vid vid_last = kLastVid;
};

// The orchestrator's whole state and every mutation on it. Each mutating call
// either completes or leaves the engine exactly as it was.
class Engine {
 public:
  static constexpr int kDocumentVersion = 1;

  explicit Engine(EngineConfig config = {})
      : config_(config), vlans_(config.vid_first, config.vid_last) {}

  // Plan ---------------------------------------------------------------------

  void init_plan(Ipv4Prefix base) {
    if (plan_ && !plan_->tenant_blocks().empty())
      throw Error(Errc::invalid_state, "cannot re-initialize a plan that has tenants");
    if (!plan_ || plan_->test_subnets().empty()) {
      plan_ = Ipam::init(base);
      return;
    }
    throw Error(Errc::invalid_state, "cannot re-initialize a plan with live allocations");
  }

  bool has_plan() const { return plan_.has_value(); }
  const Ipam& plan() const {
    if (!plan_) throw Error(Errc::invalid_state, "no address plan; run 'plan init' first");
    return *plan_;
  }
  const VlanPool& vlans() const { return vlans_; }
  const Inventory& inventory() const { return inventory_; }
  const EngineConfig& config() const { return config_; }

  // Inventory ----------------------------------------------------------------

  SiteId register_site(const std::string& name, SiteKind kind) {
    return inventory_.register_site(name, kind);
  }

  SwitchId register_switch(SiteId site, const std::string& model,
                           const std::vector<PortSpec>& ports, ClockRole clock_role,
                           const std::string& name = {}) {
    return inventory_.register_switch(site, model, ports, clock_role, name);
  }

  DeviceId register_device(SiteId site, std::optional<TenantId> owner, DeviceRole role,
                           DeviceKind kind, const std::vector<PortSpec>& ports,
                           FeatureSet features, const std::string& name = {}) {
    if (owner) (void)tenant(*owner);
    return inventory_.register_device(site, owner, role, kind, ports, std::move(features), name);
  }

  LinkId add_link(PortId a, PortId b, LinkKind kind) { return inventory_.add_link(a, b, kind); }

  void import_inventory(const nlohmann::json& doc) {
    if (!inventory_.devices().empty() || !inventory_.switches().empty())
      throw Error(Errc::invalid_state, "inventory import needs an empty inventory");
    Inventory inv = Inventory::from_json(doc);
    for (const auto& [id, d] : inv.devices())
      if (d.owner && !tenants_.count(*d.owner))
        throw Error(Errc::not_found, "device '" + d.name + "' owned by unknown tenant");
    inventory_ = std::move(inv);
  }

  // Tenants ------------------------------------------------------------------

  // Allocates the tenant's /24 and carves its management, OOB and VPN nets.
  TenantId create_tenant(const std::string& name) {
    if (name.empty()) throw Error(Errc::invalid_argument, "tenant name is empty");
    if (find_tenant(name)) throw Error(Errc::duplicate, "tenant '" + name + "' already exists");
    if (!plan_) throw Error(Errc::invalid_state, "no address plan; run 'plan init' first");
    TenantId id{next_tenant_};
    Ipam next = *plan_;
    Ipv4Prefix block = next.allocate_tenant_block(id);
    next.carve_tenant_subnets(block);
    plan_ = std::move(next);
    tenants_[id] = Tenant{id, name};
    ++next_tenant_;
    return id;
  }

  void delete_tenant(TenantId id) {
    (void)tenant(id);
    for (const auto& [sid, s] : sessions_)
      if (s.state != SessionState::torn_down && s.tenants.count(id))
        throw Error(Errc::still_referenced,
                    "tenant '" + tenants_.at(id).name + "' still has session s" +
                        std::to_string(sid.value));
    for (const auto& [did, d] : inventory_.devices())
      if (d.owner == id)
        throw Error(Errc::still_referenced,
                    "tenant '" + tenants_.at(id).name + "' still owns device '" + d.name + "'");
    Ipam next = plan();
    next.release_tenant_block(id);
    plan_ = std::move(next);
    tenants_.erase(id);
  }

  const Tenant& tenant(TenantId id) const {
    auto it = tenants_.find(id);
    if (it == tenants_.end())
      throw Error(Errc::not_found, "unknown tenant " + std::to_string(id.value));
    return it->second;
  }

  std::optional<TenantId> find_tenant(std::string_view name) const {
    for (const auto& [id, t] : tenants_)
      if (t.name == name) return id;
    return std::nullopt;
  }

  const std::map<TenantId, Tenant>& tenants() const { return tenants_; }

  std::vector<SessionId> active_sessions(TenantId id) const {
    std::vector<SessionId> out;
    for (const auto& [sid, s] : sessions_)
      if (s.state != SessionState::torn_down && s.tenants.count(id)) out.push_back(sid);
    return out;
  }

  // Sessions -----------------------------------------------------------------

  SessionId plan_session(SessionKind kind, const std::set<TenantId>& tenants,
                         const std::vector<DeviceId>& participants, TestOptions options) {
    for (TenantId t : tenants) (void)tenant(t);
    for (DeviceId d : participants) {
      const Device& dev = inventory_.device(d);
      if (dev.owner && !tenants.count(*dev.owner))
        throw Error(Errc::invalid_argument,
                    "device '" + dev.name + "' belongs to tenant '" +
                        tenants_.at(*dev.owner).name + "', which is not part of the session");
    }
    std::optional<IotProfile> profile;
    if (kind == SessionKind::wg4_iot) {
      auto pick = [&](DeviceKind k) -> const Device* {
        for (DeviceId d : participants)
          if (inventory_.device(d).kind == k) return &inventory_.device(d);
        return nullptr;
      };
      const Device* du = pick(DeviceKind::du);
      const Device* ru = pick(DeviceKind::ru);
      if (du && ru) {
        profile = match_iot_profile(du->features, ru->features);
        auto src = profile->common.find("plane_s_source");
        if (!options.splane && src != profile->common.end() && src->second.size() == 1)
          options.splane = parse_enum<SplaneChoice>(*src->second.begin());
      }
    }
    LogicalTopology topo = compile(inventory_, kind, participants, options);
    Session s;
    s.id = SessionId{next_session_};
    s.kind = kind;
    s.tenants = tenants;
    s.participants = participants;
    std::sort(s.participants.begin(), s.participants.end());
    s.options = options;
    s.topology = std::move(topo);
    s.iot_profile = std::move(profile);
    s.report = nullptr;
    sessions_[s.id] = std::move(s);
    ++next_session_;
    return SessionId{next_session_ - 1};
  }

  const Session& session(SessionId id) const {
    auto it = sessions_.find(id);
    if (it == sessions_.end())
      throw Error(Errc::not_found, "unknown session s" + std::to_string(id.value));
    return it->second;
  }

  const std::map<SessionId, Session>& sessions() const { return sessions_; }

  // Atomically reserves one VID per interface class, one /29 per routed
  // interface, and the port configs along every edge's path.
  const Session& provision(SessionId id) {
    Session& s = session_mut(id);
    if (s.state == SessionState::provisioned || s.state == SessionState::active) return s;
    if (s.state != SessionState::draft)
      throw Error(Errc::invalid_state, "session s" + std::to_string(id.value) + " is " +
                                           std::string(name_of(s.state)));
    const Ipam& base_plan = plan();
    for (DeviceId d : s.participants)
      for (const auto& [oid, other] : sessions_)
        if (oid != id && holds_resources(other.state) &&
            std::binary_search(other.participants.begin(), other.participants.end(), d))
          throw Error(Errc::conflict, "device '" + inventory_.device(d).name +
                                          "' is claimed by session s" +
                                          std::to_string(oid.value));

    Ipam ipam = base_plan;
    VlanPool vlans = vlans_;
    SessionAllocations alloc;

    for (const auto& e : s.topology.digital_edges)
      for (const auto& channel : edge_channels(e, s.topology.split_cu_planes))
        if (!alloc.vids.count(channel))
          alloc.vids[channel] = vlans.allocate_vid({channel.first, id, channel.second});

    for (InterfaceKind k : s.topology.interfaces()) {
      if (!has_data_net(k)) continue;
      Ipv4Prefix p = ipam.allocate_test_subnet(k, id);
      ipam.retain(p);
      alloc.subnets[k] = p;
      alloc.grant.subnets.insert(p);
      if (s.options.shared) alloc.grant.subnets.insert(ipam.shared_subnet(k));
    }

    auto adj = switch_adjacency(inventory_);
    auto attach = [&](PortId device_port) {
      auto sp = switch_attachment(inventory_, device_port);
      if (!sp)
        throw Error(Errc::no_path,
                    "port " + inventory_.port_label(device_port) + " is not cabled to a switch");
      return *sp;
    };
    for (const auto& e : s.topology.digital_edges) {
      PortId pa = attach(e.a);
      PortId pb = attach(e.b);
      auto path = shortest_switch_path(adj, inventory_.port(pa).switch_id(),
                                       inventory_.port(pb).switch_id());
      if (!path)
        throw Error(Errc::no_path, "no trunk path between " + inventory_.port_label(e.a) +
                                       " and " + inventory_.port_label(e.b));
      for (const auto& channel : edge_channels(e, s.topology.split_cu_planes)) {
        Vid v = alloc.vids.at(channel);
        alloc.port_vids[pa].insert(v);
        alloc.port_vids[pb].insert(v);
        alloc.device_facing.insert(pa);
        alloc.device_facing.insert(pb);
        for (const auto& hop : *path) {
          alloc.port_vids[hop.local].insert(v);
          alloc.port_vids[hop.remote].insert(v);
        }
      }
    }
    for (const auto& [channel, v] : alloc.vids) vlans.retain(v);

    alloc.grant.session = id;
    alloc.grant.tenants = s.tenants;
    alloc.grant.vids = alloc.vid_set();

    *plan_ = std::move(ipam);
    vlans_ = std::move(vlans);
    s.allocations = std::move(alloc);
    s.state = SessionState::provisioned;
    return s;
  }

  // Intent and isolation for this session on the live fabric. The session
  // becomes active on a clean report and failed otherwise.
  VerificationReport verify(SessionId id) {
    Session& s = session_mut(id);
    if (!holds_resources(s.state))
      throw Error(Errc::invalid_state, "session s" + std::to_string(id.value) + " is " +
                                           std::string(name_of(s.state)));
    VerificationReport report = session_report(s);
    if (report.passed()) {
      if (s.state == SessionState::provisioned) s.state = SessionState::active;
    } else {
      s.state = SessionState::failed;
    }
    s.report = report_to_json(report, &inventory_);
    return report;
  }

  void teardown(SessionId id) {
    Session& s = session_mut(id);
    if (s.state == SessionState::torn_down)
      throw Error(Errc::invalid_state, "session s" + std::to_string(id.value) +
                                           " is already torn down");
    if (!holds_resources(s.state))
      throw Error(Errc::invalid_state,
                  "session s" + std::to_string(id.value) + " was never provisioned");
    Ipam ipam = plan();
    VlanPool vlans = vlans_;
    for (const auto& [channel, v] : s.allocations.vids) {
      vlans.drop(v);
      vlans.release_vid(v);
    }
    for (const auto& [k, p] : s.allocations.subnets) {
      ipam.drop(p);
      ipam.release(p);
    }
    *plan_ = std::move(ipam);
    vlans_ = std::move(vlans);
    s.allocations = {};
    s.state = SessionState::torn_down;
  }

  void advance_plane(SessionId id, TestPlane plane, bool passed) {
    Session& s = session_mut(id);
    if (s.state != SessionState::active)
      throw Error(Errc::invalid_state, "plane results need an active session");
    s.checklist.advance(plane, passed);
  }

  // Manual per-port overrides on top of session-derived configs (operator
  // drift, fault drills). Cleared explicitly.
  void set_port_override(PortId port, PortConfig config) {
    const Port& p = inventory_.port(port);
    if (!p.on_switch())
      throw Error(Errc::invalid_argument, "overrides apply to switch ports only");
    if (p.medium != Medium::ethernet)
      throw Error(Errc::invalid_argument, "port " + inventory_.port_label(port) +
                                              " cannot carry VLANs");
    for (Vid v : config.vids)
      if (!vlans_.is_active(v))
        throw Error(Errc::invalid_argument, "VID " + std::to_string(v) + " is not active");
    overrides_[port] = std::move(config);
  }

  void clear_port_override(PortId port) {
    if (!overrides_.erase(port))
      throw Error(Errc::not_found, "no override on port " + inventory_.port_label(port));
  }

  const PortConfigMap& overrides() const { return overrides_; }

  // Derived state ------------------------------------------------------------

  // Effective config for every switch port that carries something. Ports not
  // listed are shut down.
  PortConfigMap port_configs() const {
    std::map<PortId, std::set<Vid>> carried;
    std::set<PortId> facing;
    for (const auto& [id, s] : sessions_) {
      if (!holds_resources(s.state)) continue;
      for (const auto& [p, vids] : s.allocations.port_vids)
        carried[p].insert(vids.begin(), vids.end());
      facing.insert(s.allocations.device_facing.begin(), s.allocations.device_facing.end());
    }
    PortConfigMap out;
    for (const auto& [p, vids] : carried) {
      if (facing.count(p) && vids.size() == 1) out[p] = PortConfig::access(*vids.begin());
      else out[p] = PortConfig::trunk(vids);
    }
    // An override keeps only VIDs that are still allocated; an access port
    // whose VID went away falls back to shutdown.
    for (const auto& [p, c] : overrides_) {
      PortConfig eff = c;
      std::erase_if(eff.vids, [this](Vid v) { return !vlans_.is_active(v); });
      if (eff.mode == PortMode::access && eff.vids.empty()) eff = PortConfig::shutdown();
      out[p] = eff;
    }
    return out;
  }

  // Sessions that contribute VIDs to a given switch port.
  std::set<SessionId> sessions_on_port(PortId p) const {
    std::set<SessionId> out;
    for (const auto& [id, s] : sessions_)
      if (holds_resources(s.state) && s.allocations.port_vids.count(p)) out.insert(id);
    return out;
  }

  std::vector<Grant> grants() const {
    std::vector<Grant> out;
    for (const auto& [id, s] : sessions_)
      if (holds_resources(s.state)) out.push_back(s.allocations.grant);
    return out;
  }

  Ownership ownership() const {
    Ownership out;
    for (const auto& [id, d] : inventory_.devices()) out[id] = d.owner;
    return out;
  }

  // Plan subnets annotated with the tenants allowed to use them.
  std::vector<SubnetInfo> subnet_catalog() const {
    if (!plan_) return {};
    auto subnets = plan_->known_subnets();
    for (auto& info : subnets) {
      if (info.session) {
        if (auto it = sessions_.find(*info.session); it != sessions_.end())
          info.owners = it->second.tenants;
        continue;
      }
      for (const auto& g : grants())
        if (g.subnets.count(info.prefix)) info.owners.insert(g.tenants.begin(), g.tenants.end());
    }
    return subnets;
  }

  std::set<Vid> active_vids() const {
    std::set<Vid> out;
    for (const auto& [v, p] : vlans_.active()) out.insert(v);
    return out;
  }

  FabricModel fabric() const {
    return build_fabric(inventory_, port_configs(), subnet_catalog(), active_vids());
  }

  // Intent for every session holding resources, plus facility-wide isolation.
  VerificationReport check_all() const {
    FabricModel f = fabric();
    VerificationReport report;
    for (const auto& [id, s] : sessions_)
      if (holds_resources(s.state))
        report.merge(verify_intent(f, s.topology, s.allocations.vids));
    report.merge(verify_isolation(f, ownership(), grants()));
    return report;
  }

  // Fingerprint of everything handed out: address space, VIDs, port claims.
  std::uint64_t allocator_fingerprint() const {
    nlohmann::json j;
    j["plan"] = plan_ ? plan_->to_json() : nlohmann::json(nullptr);
    j["vlans"] = vlans_.to_json();
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& [id, s] : sessions_)
      if (holds_resources(s.state))
        claims.push_back({{"session", id}, {"devices", s.participants}});
    j["claims"] = claims;
    nlohmann::json ports = nlohmann::json::array();
    for (const auto& [p, c] : port_configs())
      ports.push_back({{"port", p}, {"mode", c.mode}, {"vids", c.vids}});
    j["ports"] = ports;
    return fnv1a(j.dump());
  }

  std::uint64_t state_hash() const { return fnv1a(to_json().dump()); }

  // Documents ----------------------------------------------------------------

  static nlohmann::json session_to_json(const Session& s) {
    using nlohmann::json;
    json vids = json::array();
    for (const auto& [channel, v] : s.allocations.vids)
      vids.push_back({{"interface", channel.first},
                      {"plane", channel.second ? json(*channel.second) : json(nullptr)},
                      {"vid", v}});
    json subnets = json::object();
    for (const auto& [k, p] : s.allocations.subnets) subnets[std::string(name_of(k))] = p;
    json ports = json::array();
    for (const auto& [p, vs] : s.allocations.port_vids)
      ports.push_back(
          {{"port", p}, {"vids", vs}, {"device_facing", s.allocations.device_facing.count(p) > 0}});
    const Grant& g = s.allocations.grant;
    json grant = {{"session", g.session},
                  {"tenants", g.tenants},
                  {"vids", g.vids},
                  {"subnets", g.subnets}};
    return {{"version", kDocumentVersion},
            {"id", s.id},
            {"kind", s.kind},
            {"state", s.state},
            {"tenants", s.tenants},
            {"participants", s.participants},
            {"options", s.options},
            {"topology", topology_to_json(s.topology)},
            {"allocations", {{"vids", vids}, {"subnets", subnets}, {"ports", ports}, {"grant", grant}}},
            {"checklist", s.checklist.to_json()},
            {"iot_profile", s.iot_profile ? json(*s.iot_profile) : json(nullptr)},
            {"report", s.report}};
  }

  static Session session_from_json(const nlohmann::json& j) {
    Session s;
    s.id = j.at("id").get<SessionId>();
    s.kind = j.at("kind").get<SessionKind>();
    s.state = j.at("state").get<SessionState>();
    s.tenants = j.at("tenants").get<std::set<TenantId>>();
    s.participants = j.at("participants").get<std::vector<DeviceId>>();
    s.options = j.at("options").get<TestOptions>();
    s.topology = topology_from_json(j.at("topology"));
    const auto& a = j.at("allocations");
    for (const auto& v : a.at("vids")) {
      std::optional<Plane> plane;
      if (!v.at("plane").is_null()) plane = v.at("plane").get<Plane>();
      s.allocations.vids[{v.at("interface").get<InterfaceKind>(), plane}] = v.at("vid").get<Vid>();
    }
    for (const auto& [k, p] : a.at("subnets").items())
      s.allocations.subnets[parse_enum<InterfaceKind>(k)] = p.get<Ipv4Prefix>();
    for (const auto& p : a.at("ports")) {
      PortId port = p.at("port").get<PortId>();
      s.allocations.port_vids[port] = p.at("vids").get<std::set<Vid>>();
      if (p.at("device_facing").get<bool>()) s.allocations.device_facing.insert(port);
    }
    const auto& g = a.at("grant");
    s.allocations.grant = {g.at("session").get<SessionId>(), g.at("tenants").get<std::set<TenantId>>(),
                           g.at("vids").get<std::set<Vid>>(),
                           g.at("subnets").get<std::set<Ipv4Prefix>>()};
    s.checklist = PlaneChecklist::from_json(j.at("checklist"));
    if (!j.at("iot_profile").is_null()) s.iot_profile = j.at("iot_profile").get<IotProfile>();
    s.report = j.at("report");
    return s;
  }

  nlohmann::json to_json() const {
    using nlohmann::json;
    json tenants = json::array();
    for (const auto& [id, t] : tenants_) tenants.push_back({{"id", id}, {"name", t.name}});
    json sessions = json::array();
    for (const auto& [id, s] : sessions_) sessions.push_back(session_to_json(s));
    json overrides = json::array();
    for (const auto& [p, c] : overrides_)
      overrides.push_back({{"port", p}, {"mode", c.mode}, {"vids", c.vids}});
    return {{"version", kDocumentVersion},
            {"config", {{"vid_first", config_.vid_first}, {"vid_last", config_.vid_last}}},
            {"plan", plan_ ? plan_->to_json() : json(nullptr)},
            {"inventory", inventory_.to_json()},
            {"vlans", vlans_.to_json()},
            {"tenants", tenants},
            {"sessions", sessions},
            {"overrides", overrides},
            {"next_tenant", next_tenant_},
            {"next_session", next_session_}};
  }

  static Engine from_json(const nlohmann::json& j) {
    if (j.value("version", 0) != kDocumentVersion)
      throw Error(Errc::invalid_argument, "unsupported state document version");
    EngineConfig cfg{j.at("config").at("vid_first").get<Vid>(),
                     j.at("config").at("vid_last").get<Vid>()};
    Engine e(cfg);
    if (!j.at("plan").is_null()) e.plan_ = Ipam::from_json(j.at("plan"));
    e.inventory_ = Inventory::from_json(j.at("inventory"));
    e.vlans_ = VlanPool::from_json(j.at("vlans"));
    for (const auto& t : j.at("tenants")) {
      TenantId id = t.at("id").get<TenantId>();
      e.tenants_[id] = Tenant{id, t.at("name").get<std::string>()};
    }
    for (const auto& sj : j.at("sessions")) {
      Session s = session_from_json(sj);
      e.sessions_[s.id] = std::move(s);
    }
    for (const auto& o : j.at("overrides"))
      e.overrides_[o.at("port").get<PortId>()] =
          PortConfig{o.at("mode").get<PortMode>(), o.at("vids").get<std::set<Vid>>(), false};
    e.next_tenant_ = j.at("next_tenant").get<std::uint32_t>();
    e.next_session_ = j.at("next_session").get<std::uint32_t>();
    return e;
  }

  bool operator==(const Engine& o) const { return to_json() == o.to_json(); }

 private:
  Session& session_mut(SessionId id) {
    auto it = sessions_.find(id);
    if (it == sessions_.end())
      throw Error(Errc::not_found, "unknown session s" + std::to_string(id.value));
    return it->second;
  }

  VerificationReport session_report(const Session& s) const {
    FabricModel f = fabric();
    VerificationReport report = verify_intent(f, s.topology, s.allocations.vids);
    VerificationReport iso = verify_isolation(f, ownership(), grants());
    std::set<Vid> mine = s.allocations.vid_set();
    std::set<DeviceId> members(s.participants.begin(), s.participants.end());
    const Inventory& inv = f.inventory();
    for (const auto& v : iso.isolation_violations) {
      bool relevant = false;
      if (v.vid) {
        relevant = mine.count(*v.vid) || members.count(inv.port(v.port_a).device_id()) ||
                   members.count(inv.port(v.port_b).device_id());
      } else {
        relevant = s.tenants.count(v.tenant_a) || s.tenants.count(v.tenant_b);
      }
      if (relevant) report.isolation_violations.push_back(v);
    }
    return report;
  }

  EngineConfig config_;
  std::optional<Ipam> plan_;
  Inventory inventory_;
  VlanPool vlans_;
  std::map<TenantId, Tenant> tenants_;
  std::map<SessionId, Session> sessions_;
  PortConfigMap overrides_;
  std::uint32_t next_tenant_ = 1;
  std::uint32_t next_session_ = 1;
};

}  // namespace otic
