#pragma once

#include <charconv>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/session.hpp"

namespace otic {

// Every engine mutation has a name and a JSON payload. The journal stores
// exactly these, so replaying them through apply_command rebuilds the state.
inline constexpr std::string_view kCommands[] = {
    "plan.init",        "site.register",      "switch.register",   "device.register",
    "link.add",         "inventory.import",   "tenant.create",     "tenant.delete",
    "session.plan",     "session.provision",  "session.verify",    "session.teardown",
    "session.advance",  "port.override",      "port.clear_override",
};

inline bool is_command(std::string_view name) {
  for (auto c : kCommands)
    if (c == name) return true;
  return false;
}

inline std::string session_label(SessionId id) { return "s" + std::to_string(id.value); }

namespace detail {

// Non-negative JSON integer that fits an id.
inline std::optional<std::uint32_t> json_u32(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint32_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0 &&
      j.get<std::int64_t>() <= std::numeric_limits<std::uint32_t>::max())
    return static_cast<std::uint32_t>(j.get<std::int64_t>());
  return std::nullopt;
}

inline std::optional<std::uint32_t> parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::invalid_argument, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::invalid_argument, std::string("bad value for '") + key + "'");
  }
}

}  // namespace detail

// Reference resolution: ids may be given as integers, names as strings.

inline TenantId resolve_tenant(const Engine& e, const nlohmann::json& ref) {
  if (auto v = detail::json_u32(ref)) {
    TenantId id{*v};
    (void)e.tenant(id);
    return id;
  }
  if (!ref.is_string()) throw Error(Errc::invalid_argument, "tenant reference must be a name or id");
  auto name = ref.get<std::string>();
  if (auto id = e.find_tenant(name)) return *id;
  if (auto v = detail::parse_u32(name); v && e.tenants().count(TenantId{*v})) return TenantId{*v};
  throw Error(Errc::not_found, "unknown tenant '" + name + "'");
}

inline SiteId resolve_site(const Engine& e, const nlohmann::json& ref) {
  if (auto v = detail::json_u32(ref)) {
    SiteId id{*v};
    (void)e.inventory().site(id);
    return id;
  }
  auto name = ref.get<std::string>();
  if (auto id = e.inventory().find_site(name)) return *id;
  throw Error(Errc::not_found, "unknown site '" + name + "'");
}

inline DeviceId resolve_device(const Engine& e, const nlohmann::json& ref) {
  if (auto v = detail::json_u32(ref)) {
    DeviceId id{*v};
    (void)e.inventory().device(id);
    return id;
  }
  auto name = ref.get<std::string>();
  if (auto id = e.inventory().find_device(name)) return *id;
  throw Error(Errc::not_found, "unknown device '" + name + "'");
}

inline PortId resolve_port(const Engine& e, const nlohmann::json& ref) {
  if (auto v = detail::json_u32(ref)) {
    PortId id{*v};
    (void)e.inventory().port(id);
    return id;
  }
  return e.inventory().resolve_port(ref.get<std::string>());
}

// Accepts 3, "3" or "s3".
inline SessionId resolve_session(const Engine& e, const nlohmann::json& ref) {
  std::optional<std::uint32_t> v;
  if (ref.is_number()) {
    v = detail::json_u32(ref);
  } else if (ref.is_string()) {
    std::string_view s = ref.get_ref<const std::string&>();
    if (!s.empty() && s.front() == 's') s.remove_prefix(1);
    v = detail::parse_u32(s);
  }
  if (!v) throw Error(Errc::invalid_argument, "bad session reference " + ref.dump());
  SessionId id{*v};
  (void)e.session(id);
  return id;
}

// "eth0", "eth0:ethernet:25" or {"name", "medium", "capacity_gbps"}.
inline PortSpec parse_port_spec(const nlohmann::json& j) {
  PortSpec spec;
  if (j.is_object()) {
    spec.name = detail::get<std::string>(j, "name");
    if (j.contains("medium")) spec.medium = parse_enum<Medium>(j.at("medium").get<std::string>());
    spec.capacity_gbps = j.value("capacity_gbps", spec.medium == Medium::ethernet ? 10u : 0u);
    return spec;
  }
  if (!j.is_string()) throw Error(Errc::invalid_argument, "bad port spec " + j.dump());
  std::string_view s = j.get_ref<const std::string&>();
  auto c1 = s.find(':');
  spec.name = std::string(s.substr(0, c1));
  if (c1 == std::string_view::npos) {
    spec.capacity_gbps = 10;
    return spec;
  }
  auto rest = s.substr(c1 + 1);
  auto c2 = rest.find(':');
  spec.medium = parse_enum<Medium>(rest.substr(0, c2));
  if (c2 == std::string_view::npos) {
    spec.capacity_gbps = spec.medium == Medium::ethernet ? 10 : 0;
  } else {
    auto cap = detail::parse_u32(rest.substr(c2 + 1));
    if (!cap) throw Error(Errc::invalid_argument, "bad port capacity in '" + std::string(s) + "'");
    spec.capacity_gbps = *cap;
  }
  return spec;
}

inline nlohmann::json port_spec_to_json(const PortSpec& p) {
  return {{"name", p.name}, {"medium", p.medium}, {"capacity_gbps", p.capacity_gbps}};
}

inline FeatureSet parse_features(const nlohmann::json& j) {
  FeatureSet out;
  if (j.is_null()) return out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_array()) {
      for (const auto& x : v) out[k].insert(x.is_string() ? x.get<std::string>() : x.dump());
    } else {
      out[k].insert(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  return out;
}

// Read-side documents ----------------------------------------------------------

inline nlohmann::json tenant_to_json(const Engine& e, TenantId id) {
  using nlohmann::json;
  const Tenant& t = e.tenant(id);
  json j = {{"version", 1}, {"id", id}, {"name", t.name}, {"block", nullptr}};
  if (e.has_plan())
    if (const TenantBlock* tb = e.plan().tenant_block(id)) {
      j["block"] = tb->block;
      if (tb->carved)
        j["carving"] = {{"management", tb->carved->management},
                        {"oob", tb->carved->oob},
                        {"vpn", tb->carved->vpn}};
    }
  json sessions = json::array();
  for (SessionId s : e.active_sessions(id)) sessions.push_back(session_label(s));
  j["active_sessions"] = sessions;
  return j;
}

inline nlohmann::json session_doc(const Engine& e, SessionId id) {
  nlohmann::json j = Engine::session_to_json(e.session(id));
  j["name"] = session_label(id);
  return j;
}

inline nlohmann::json plan_summary(const Ipam& plan) {
  using nlohmann::json;
  json nets = json::array();
  for (InterfaceKind k : kDataNetInterfaces)
    nets.push_back({{"interface", k}, {"prefix", plan.data_net(k)}, {"routable", data_net_routable(k)}});
  return {{"version", 1},
          {"base", plan.base()},
          {"fixed_nets",
           {{"oob", plan.otic_net(OticNet::oob)},
            {"management", plan.otic_net(OticNet::management)},
            {"services", plan.otic_net(OticNet::services)}}},
          {"data_nets", nets}};
}

// Dispatch -------------------------------------------------------------------

inline nlohmann::json apply_command(Engine& e, std::string_view command,
                                    const nlohmann::json& p) {
  using detail::get;
  using nlohmann::json;

  if (command == "plan.init") {
    e.init_plan(Ipv4Prefix::parse(get<std::string>(p, "base")));
    return plan_summary(e.plan());
  }
  if (command == "site.register") {
    auto kind = p.contains("kind") ? parse_enum<SiteKind>(get<std::string>(p, "kind"))
                                   : SiteKind::data_center;
    SiteId id = e.register_site(get<std::string>(p, "name"), kind);
    return {{"id", id}, {"name", e.inventory().site(id).name}};
  }
  if (command == "switch.register") {
    std::vector<PortSpec> ports;
    for (const auto& x : detail::field(p, "ports")) ports.push_back(parse_port_spec(x));
    auto clock = p.contains("clock_role") ? parse_enum<ClockRole>(get<std::string>(p, "clock_role"))
                                          : ClockRole::none;
    SwitchId id = e.register_switch(resolve_site(e, detail::field(p, "site")),
                                    p.value("model", std::string("generic")), ports, clock,
                                    p.value("name", std::string()));
    return {{"id", id}, {"name", e.inventory().switch_(id).name}};
  }
  if (command == "device.register") {
    std::vector<PortSpec> ports;
    for (const auto& x : detail::field(p, "ports")) ports.push_back(parse_port_spec(x));
    std::optional<TenantId> owner;
    if (p.contains("owner") && !p.at("owner").is_null()) owner = resolve_tenant(e, p.at("owner"));
    DeviceId id = e.register_device(
        resolve_site(e, detail::field(p, "site")), owner,
        parse_enum<DeviceRole>(get<std::string>(p, "role")),
        parse_enum<DeviceKind>(get<std::string>(p, "kind")), ports,
        parse_features(p.value("features", json(nullptr))), p.value("name", std::string()));
    json warnings = json::array();
    for (const auto& w : catalog_warnings(e.inventory().device(id).features)) warnings.push_back(w);
    return {{"id", id}, {"name", e.inventory().device(id).name}, {"warnings", warnings}};
  }
  if (command == "link.add") {
    auto kind = p.contains("kind") ? parse_enum<LinkKind>(get<std::string>(p, "kind"))
                                   : LinkKind::access;
    LinkId id = e.add_link(resolve_port(e, detail::field(p, "a")),
                           resolve_port(e, detail::field(p, "b")), kind);
    const PhysicalLink& l = e.inventory().link(id);
    return {{"id", id},
            {"a", e.inventory().port_label(l.a)},
            {"b", e.inventory().port_label(l.b)},
            {"kind", l.kind}};
  }
  if (command == "inventory.import") {
    e.import_inventory(detail::field(p, "inventory"));
    const Inventory& inv = e.inventory();
    return {{"sites", inv.sites().size()},
            {"switches", inv.switches().size()},
            {"devices", inv.devices().size()},
            {"links", inv.links().size()}};
  }
  if (command == "tenant.create") {
    return tenant_to_json(e, e.create_tenant(get<std::string>(p, "name")));
  }
  if (command == "tenant.delete") {
    TenantId id = resolve_tenant(e, detail::field(p, "tenant"));
    std::string name = e.tenant(id).name;
    e.delete_tenant(id);
    return {{"id", id}, {"name", name}, {"deleted", true}};
  }
  if (command == "session.plan") {
    std::set<TenantId> tenants;
    if (p.contains("tenants"))
      for (const auto& t : p.at("tenants")) tenants.insert(resolve_tenant(e, t));
    std::vector<DeviceId> participants;
    for (const auto& d : detail::field(p, "participants"))
      participants.push_back(resolve_device(e, d));
    TestOptions options;
    if (p.contains("options")) {
      try {
        options = p.at("options").get<TestOptions>();
      } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::invalid_argument, std::string("bad session options: ") + ex.what());
      }
    }
    SessionId id = e.plan_session(parse_enum<SessionKind>(get<std::string>(p, "kind")), tenants,
                                  participants, options);
    return session_doc(e, id);
  }
  if (command == "session.provision") {
    SessionId id = resolve_session(e, detail::field(p, "session"));
    e.provision(id);
    return session_doc(e, id);
  }
  if (command == "session.verify") {
    SessionId id = resolve_session(e, detail::field(p, "session"));
    VerificationReport r = e.verify(id);
    return {{"session", session_label(id)},
            {"state", e.session(id).state},
            {"passed", r.passed()},
            {"report", report_to_json(r, &e.inventory())}};
  }
  if (command == "session.teardown") {
    SessionId id = resolve_session(e, detail::field(p, "session"));
    e.teardown(id);
    return {{"session", session_label(id)}, {"state", e.session(id).state}};
  }
  if (command == "session.advance") {
    SessionId id = resolve_session(e, detail::field(p, "session"));
    e.advance_plane(id, parse_enum<TestPlane>(get<std::string>(p, "plane")),
                    get<bool>(p, "passed"));
    return {{"session", session_label(id)}, {"checklist", e.session(id).checklist.to_json()}};
  }
  if (command == "port.override") {
    PortId port = resolve_port(e, detail::field(p, "port"));
    auto mode = parse_enum<PortMode>(get<std::string>(p, "mode"));
    std::set<Vid> vids = p.contains("vids") ? get<std::set<Vid>>(p, "vids") : std::set<Vid>{};
    PortConfig c{mode, vids, false};
    if (mode == PortMode::access && vids.size() != 1)
      throw Error(Errc::invalid_argument, "access ports carry exactly one VID");
    if (mode == PortMode::shutdown) c.vids.clear();
    e.set_port_override(port, c);
    return {{"port", e.inventory().port_label(port)}, {"mode", c.mode}, {"vids", c.vids}};
  }
  if (command == "port.clear_override") {
    PortId port = resolve_port(e, detail::field(p, "port"));
    e.clear_port_override(port);
    return {{"port", e.inventory().port_label(port)}, {"cleared", true}};
  }
  throw Error(Errc::invalid_argument, "unknown command '" + std::string(command) + "'");
}

}  // namespace otic
