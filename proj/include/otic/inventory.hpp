#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/enum_names.hpp"
#include "otic/error.hpp"
#include "otic/feature_catalog.hpp"
#include "otic/ids.hpp"

namespace otic {

enum class SiteKind { data_center, lab, anechoic_chamber, outdoor };
enum class ClockRole { none, t_bc, t_gm };
enum class DeviceRole { dut, te, service };
enum class DeviceKind {
  cu,
  du,
  ru,
  ue_emulator,
  du_emulator,
  ru_ue_emulator,
  core_emulator,
  vst,
  impairment_emulator,
  t_gm,
  compute,
  vpn,
  storage,
  directory,
  dns,
  monitor,
};
enum class Medium { ethernet, rf_coaxial, rf_antenna, gps_coax };
enum class LinkKind { access, trunk, analog, oob };

template <>
struct EnumNames<SiteKind> {
  static constexpr std::array table{
      std::pair{SiteKind::data_center, "data_center"},
      std::pair{SiteKind::lab, "lab"},
      std::pair{SiteKind::anechoic_chamber, "anechoic_chamber"},
      std::pair{SiteKind::outdoor, "outdoor"},
  };
};
template <>
struct EnumNames<ClockRole> {
  static constexpr std::array table{
      std::pair{ClockRole::none, "none"},
      std::pair{ClockRole::t_bc, "t_bc"},
      std::pair{ClockRole::t_gm, "t_gm"},
  };
};
template <>
struct EnumNames<DeviceRole> {
  static constexpr std::array table{
      std::pair{DeviceRole::dut, "dut"},
      std::pair{DeviceRole::te, "te"},
      std::pair{DeviceRole::service, "service"},
  };
};
template <>
struct EnumNames<DeviceKind> {
  static constexpr std::array table{
      std::pair{DeviceKind::cu, "cu"},
      std::pair{DeviceKind::du, "du"},
      std::pair{DeviceKind::ru, "ru"},
      std::pair{DeviceKind::ue_emulator, "ue_emulator"},
      std::pair{DeviceKind::du_emulator, "du_emulator"},
      std::pair{DeviceKind::ru_ue_emulator, "ru_ue_emulator"},
      std::pair{DeviceKind::core_emulator, "core_emulator"},
      std::pair{DeviceKind::vst, "vst"},
      std::pair{DeviceKind::impairment_emulator, "impairment_emulator"},
      std::pair{DeviceKind::t_gm, "t_gm"},
      std::pair{DeviceKind::compute, "compute"},
      std::pair{DeviceKind::vpn, "vpn"},
      std::pair{DeviceKind::storage, "storage"},
      std::pair{DeviceKind::directory, "directory"},
      std::pair{DeviceKind::dns, "dns"},
      std::pair{DeviceKind::monitor, "monitor"},
  };
};
template <>
struct EnumNames<Medium> {
  static constexpr std::array table{
      std::pair{Medium::ethernet, "ethernet"},
      std::pair{Medium::rf_coaxial, "rf_coaxial"},
      std::pair{Medium::rf_antenna, "rf_antenna"},
      std::pair{Medium::gps_coax, "gps_coax"},
  };
};
template <>
struct EnumNames<LinkKind> {
  static constexpr std::array table{
      std::pair{LinkKind::access, "access"},
      std::pair{LinkKind::trunk, "trunk"},
      std::pair{LinkKind::analog, "analog"},
      std::pair{LinkKind::oob, "oob"},
  };
};

constexpr bool is_digital(Medium m) { return m == Medium::ethernet; }

struct PortSpec {
  std::string name;
  Medium medium = Medium::ethernet;
  std::uint32_t capacity_gbps = 0;
};

using PortOwner = std::variant<SwitchId, DeviceId>;

struct Port {
  PortId id;
  std::string name;
  Medium medium = Medium::ethernet;
  std::uint32_t capacity_gbps = 0;
  PortOwner owner;

  bool on_switch() const { return std::holds_alternative<SwitchId>(owner); }
  SwitchId switch_id() const { return std::get<SwitchId>(owner); }
  DeviceId device_id() const { return std::get<DeviceId>(owner); }

  bool operator==(const Port&) const = default;
};

struct Site {
  SiteId id;
  std::string name;
  SiteKind kind = SiteKind::data_center;
  bool operator==(const Site&) const = default;
};

struct Switch {
  SwitchId id;
  std::string name;
  SiteId site;
  std::string model;
  std::vector<PortId> ports;
  ClockRole clock_role = ClockRole::none;
  bool operator==(const Switch&) const = default;
};

struct Device {
  DeviceId id;
  std::string name;
  SiteId site;
  std::optional<TenantId> owner;  // nullopt: OTIC-internal
  DeviceRole role = DeviceRole::te;
  DeviceKind kind = DeviceKind::compute;
  std::vector<PortId> ports;
  FeatureSet features;
  bool operator==(const Device&) const = default;
};

struct PhysicalLink {
  LinkId id;
  PortId a;
  PortId b;
  LinkKind kind = LinkKind::access;

  PortId other(PortId p) const { return p == a ? b : a; }
  bool operator==(const PhysicalLink&) const = default;
};

// Sites, switches, devices, their ports and the cabling between them.
// Switch and device names share one namespace so that "DU1/eth0" style port
// references are unambiguous.
class Inventory {
 public:
  static constexpr int kDocumentVersion = 1;

  SiteId register_site(const std::string& name, SiteKind kind) {
    if (name.empty()) throw Error(Errc::invalid_argument, "site name is empty");
    for (const auto& [id, s] : sites_)
      if (s.name == name)
        throw Error(Errc::duplicate, "site '" + name + "' already exists");
    SiteId id{next_site_++};
    sites_.emplace(id, Site{id, name, kind});
    return id;
  }

  SwitchId register_switch(SiteId site, const std::string& model,
                           const std::vector<PortSpec>& port_specs,
                           ClockRole clock_role, std::string name = {}) {
    require_site(site);
    check_port_specs(port_specs);
    SwitchId id{next_switch_};
    if (name.empty()) name = "sw" + std::to_string(id.value);
    check_name_free(name);
    ++next_switch_;
    Switch sw{id, name, site, model, {}, clock_role};
    for (const auto& spec : port_specs) sw.ports.push_back(add_port(spec, id));
    switches_.emplace(id, std::move(sw));
    return id;
  }

  DeviceId register_device(SiteId site, std::optional<TenantId> owner,
                           DeviceRole role, DeviceKind kind,
                           const std::vector<PortSpec>& port_specs,
                           FeatureSet features, std::string name = {}) {
    require_site(site);
    if (role == DeviceRole::dut && !owner)
      throw Error(Errc::invalid_argument, "a DUT must have a tenant owner");
    check_port_specs(port_specs);
    DeviceId id{next_device_};
    if (name.empty()) name = "dev" + std::to_string(id.value);
    check_name_free(name);
    ++next_device_;
    Device dev{id, name, site, owner, role, kind, {}, std::move(features)};
    for (const auto& spec : port_specs) dev.ports.push_back(add_port(spec, id));
    devices_.emplace(id, std::move(dev));
    return id;
  }

  LinkId add_link(PortId a, PortId b, LinkKind kind) {
    const Port& pa = port(a);
    const Port& pb = port(b);
    if (a == b) throw Error(Errc::invalid_argument, "cannot link a port to itself");
    if (pa.owner == pb.owner)
      throw Error(Errc::invalid_argument, "both ports belong to the same node");
    if (is_digital(pa.medium) != is_digital(pb.medium))
      throw Error(Errc::medium_mismatch,
                  "cannot link " + std::string(name_of(pa.medium)) + " to " +
                      std::string(name_of(pb.medium)));
    bool analog_kind = kind == LinkKind::analog;
    if (analog_kind == is_digital(pa.medium))
      throw Error(Errc::medium_mismatch,
                  std::string(name_of(kind)) + " link cannot use " +
                      std::string(name_of(pa.medium)) + " ports");
    for (PortId p : {a, b})
      if (link_by_port_.count(p))
        throw Error(Errc::port_occupied, "port " + port_label(p) + " is already linked");
    LinkId id{next_link_++};
    links_.emplace(id, PhysicalLink{id, a, b, kind});
    link_by_port_[a] = id;
    link_by_port_[b] = id;
    return id;
  }

  // Lookups ----------------------------------------------------------------

  const Site& site(SiteId id) const { return lookup(sites_, id, "site"); }
  const Switch& switch_(SwitchId id) const { return lookup(switches_, id, "switch"); }
  const Device& device(DeviceId id) const { return lookup(devices_, id, "device"); }
  const Port& port(PortId id) const { return lookup(ports_, id, "port"); }
  const PhysicalLink& link(LinkId id) const { return lookup(links_, id, "link"); }

  bool has_device(DeviceId id) const { return devices_.count(id) > 0; }
  bool has_port(PortId id) const { return ports_.count(id) > 0; }

  const std::map<SiteId, Site>& sites() const { return sites_; }
  const std::map<SwitchId, Switch>& switches() const { return switches_; }
  const std::map<DeviceId, Device>& devices() const { return devices_; }
  const std::map<PortId, Port>& ports() const { return ports_; }
  const std::map<LinkId, PhysicalLink>& links() const { return links_; }

  std::optional<LinkId> link_of(PortId p) const {
    auto it = link_by_port_.find(p);
    if (it == link_by_port_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<PortId> peer(PortId p) const {
    auto l = link_of(p);
    if (!l) return std::nullopt;
    return links_.at(*l).other(p);
  }

  std::optional<SiteId> find_site(std::string_view name) const {
    for (const auto& [id, s] : sites_)
      if (s.name == name) return id;
    return std::nullopt;
  }
  std::optional<SwitchId> find_switch(std::string_view name) const {
    for (const auto& [id, s] : switches_)
      if (s.name == name) return id;
    return std::nullopt;
  }
  std::optional<DeviceId> find_device(std::string_view name) const {
    for (const auto& [id, d] : devices_)
      if (d.name == name) return id;
    return std::nullopt;
  }

  // Resolves "<switch-or-device name>/<port name>" or a bare numeric port id.
  PortId resolve_port(std::string_view ref) const {
    auto slash = ref.find('/');
    if (slash == std::string_view::npos) {
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), v);
      if (ec != std::errc{} || p != ref.data() + ref.size() || !ports_.count(PortId{v}))
        throw Error(Errc::not_found, "unknown port '" + std::string(ref) + "'");
      return PortId{v};
    }
    auto node = ref.substr(0, slash);
    auto pname = ref.substr(slash + 1);
    const std::vector<PortId>* candidates = nullptr;
    if (auto sw = find_switch(node)) candidates = &switches_.at(*sw).ports;
    else if (auto dev = find_device(node)) candidates = &devices_.at(*dev).ports;
    if (candidates)
      for (PortId p : *candidates)
        if (ports_.at(p).name == pname) return p;
    throw Error(Errc::not_found, "unknown port '" + std::string(ref) + "'");
  }

  std::string node_name(const PortOwner& owner) const {
    if (auto sw = std::get_if<SwitchId>(&owner)) return switch_(*sw).name;
    return device(std::get<DeviceId>(owner)).name;
  }

  std::string port_label(PortId p) const {
    auto it = ports_.find(p);
    if (it == ports_.end()) return "#" + std::to_string(p.value);
    return node_name(it->second.owner) + "/" + it->second.name;
  }

  // Documents --------------------------------------------------------------

  nlohmann::json to_json() const {
    using nlohmann::json;
    json doc;
    doc["version"] = kDocumentVersion;
    doc["sites"] = json::array();
    for (const auto& [id, s] : sites_)
      doc["sites"].push_back({{"id", s.id}, {"name", s.name}, {"kind", s.kind}});
    doc["switches"] = json::array();
    for (const auto& [id, s] : switches_)
      doc["switches"].push_back({{"id", s.id},
                                 {"name", s.name},
                                 {"site", s.site},
                                 {"model", s.model},
                                 {"clock_role", s.clock_role},
                                 {"ports", ports_json(s.ports)}});
    doc["devices"] = json::array();
    for (const auto& [id, d] : devices_) {
      json owner = d.owner ? json(*d.owner) : json(nullptr);
      doc["devices"].push_back({{"id", d.id},
                                {"name", d.name},
                                {"site", d.site},
                                {"owner", owner},
                                {"role", d.role},
                                {"kind", d.kind},
                                {"features", d.features},
                                {"ports", ports_json(d.ports)}});
    }
    doc["links"] = json::array();
    for (const auto& [id, l] : links_)
      doc["links"].push_back({{"id", l.id}, {"a", l.a}, {"b", l.b}, {"kind", l.kind}});
    return doc;
  }

  static Inventory from_json(const nlohmann::json& doc) {
    if (doc.value("version", 0) != kDocumentVersion)
      throw Error(Errc::invalid_argument, "unsupported inventory document version");
    Inventory inv;
    for (const auto& s : doc.at("sites")) {
      Site site{s.at("id").get<SiteId>(), s.at("name").get<std::string>(),
                s.at("kind").get<SiteKind>()};
      inv.sites_.emplace(site.id, site);
      inv.next_site_ = std::max(inv.next_site_, site.id.value + 1);
    }
    for (const auto& s : doc.at("switches")) {
      Switch sw;
      sw.id = s.at("id").get<SwitchId>();
      sw.name = s.at("name").get<std::string>();
      sw.site = s.at("site").get<SiteId>();
      sw.model = s.at("model").get<std::string>();
      sw.clock_role = s.at("clock_role").get<ClockRole>();
      inv.require_site(sw.site);
      sw.ports = inv.import_ports(s.at("ports"), sw.id);
      inv.switches_.emplace(sw.id, std::move(sw));
      inv.next_switch_ = std::max(inv.next_switch_, s.at("id").get<std::uint32_t>() + 1);
    }
    for (const auto& d : doc.at("devices")) {
      Device dev;
      dev.id = d.at("id").get<DeviceId>();
      dev.name = d.at("name").get<std::string>();
      dev.site = d.at("site").get<SiteId>();
      if (!d.at("owner").is_null()) dev.owner = d.at("owner").get<TenantId>();
      dev.role = d.at("role").get<DeviceRole>();
      dev.kind = d.at("kind").get<DeviceKind>();
      dev.features = d.at("features").get<FeatureSet>();
      inv.require_site(dev.site);
      dev.ports = inv.import_ports(d.at("ports"), dev.id);
      inv.devices_.emplace(dev.id, std::move(dev));
      inv.next_device_ = std::max(inv.next_device_, d.at("id").get<std::uint32_t>() + 1);
    }
    for (const auto& l : doc.at("links")) {
      // Re-validate through add_link, then pin the original id.
      inv.next_link_ = l.at("id").get<std::uint32_t>();
      inv.add_link(l.at("a").get<PortId>(), l.at("b").get<PortId>(),
                   l.at("kind").get<LinkKind>());
    }
    std::uint32_t max_link = 0;
    for (const auto& [id, l] : inv.links_) max_link = std::max(max_link, id.value);
    inv.next_link_ = inv.links_.empty() ? 1 : max_link + 1;
    return inv;
  }

  bool operator==(const Inventory& o) const {
    return sites_ == o.sites_ && switches_ == o.switches_ &&
           devices_ == o.devices_ && ports_ == o.ports_ && links_ == o.links_;
  }

 private:
  template <typename Map, typename Key>
  static const typename Map::mapped_type& lookup(const Map& m, Key id,
                                                 const char* what) {
    auto it = m.find(id);
    if (it == m.end())
      throw Error(Errc::not_found,
                  std::string("unknown ") + what + " " + std::to_string(id.value));
    return it->second;
  }

  void require_site(SiteId id) const { (void)site(id); }

  void check_name_free(const std::string& name) const {
    if (name.find('/') != std::string::npos)
      throw Error(Errc::invalid_argument, "name '" + name + "' contains '/'");
    if (find_switch(name) || find_device(name))
      throw Error(Errc::duplicate, "name '" + name + "' is already in use");
  }

  static void check_port_specs(const std::vector<PortSpec>& specs) {
    std::set<std::string> names;
    for (const auto& s : specs) {
      if (s.name.empty()) throw Error(Errc::invalid_argument, "port name is empty");
      if (!names.insert(s.name).second)
        throw Error(Errc::duplicate, "duplicate port name '" + s.name + "'");
      if (!is_digital(s.medium) && s.capacity_gbps != 0)
        throw Error(Errc::invalid_argument,
                    "analog port '" + s.name + "' must have zero capacity");
    }
  }

  PortId add_port(const PortSpec& spec, PortOwner owner) {
    PortId id{next_port_++};
    ports_.emplace(id, Port{id, spec.name, spec.medium, spec.capacity_gbps, owner});
    return id;
  }

  nlohmann::json ports_json(const std::vector<PortId>& ids) const {
    auto arr = nlohmann::json::array();
    for (PortId p : ids) {
      const Port& port = ports_.at(p);
      arr.push_back({{"id", port.id},
                     {"name", port.name},
                     {"medium", port.medium},
                     {"capacity_gbps", port.capacity_gbps}});
    }
    return arr;
  }

  std::vector<PortId> import_ports(const nlohmann::json& arr, PortOwner owner) {
    std::vector<PortSpec> specs;
    for (const auto& p : arr)
      specs.push_back({p.at("name").get<std::string>(), p.at("medium").get<Medium>(),
                       p.at("capacity_gbps").get<std::uint32_t>()});
    check_port_specs(specs);
    std::vector<PortId> ids;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      PortId id = arr[i].at("id").get<PortId>();
      if (ports_.count(id))
        throw Error(Errc::duplicate, "port id " + std::to_string(id.value) + " reused");
      ports_.emplace(id, Port{id, specs[i].name, specs[i].medium,
                              specs[i].capacity_gbps, owner});
      next_port_ = std::max(next_port_, id.value + 1);
      ids.push_back(id);
    }
    return ids;
  }

  std::map<SiteId, Site> sites_;
  std::map<SwitchId, Switch> switches_;
  std::map<DeviceId, Device> devices_;
  std::map<PortId, Port> ports_;
  std::map<LinkId, PhysicalLink> links_;
  std::map<PortId, LinkId> link_by_port_;
  std::uint32_t next_site_ = 1;
  std::uint32_t next_switch_ = 1;
  std::uint32_t next_device_ = 1;
  std::uint32_t next_port_ = 1;
  std::uint32_t next_link_ = 1;
};

}  // namespace otic
