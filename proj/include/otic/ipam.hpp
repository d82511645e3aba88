#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"
#include "otic/hash.hpp"
#include "otic/ids.hpp"
#include "otic/interface.hpp"
#include "otic/ipv4.hpp"

namespace otic {

enum class OticNet { oob, management, services };

template <>
struct EnumNames<OticNet> {
  static constexpr std::array table{
      std::pair{OticNet::oob, "oob"},
      std::pair{OticNet::management, "management"},
      std::pair{OticNet::services, "services"},
  };
};

// Layout constants of the /16 plan, expressed as third octets or offsets
// inside a /24.
inline constexpr int kTenantFirstOctet = 4;
inline constexpr int kTenantLastOctet = 100;
inline constexpr int kTenantPoolSize = kTenantLastOctet - kTenantFirstOctet + 1;
inline constexpr std::uint32_t kTestSubnetFirstOffset = 64;
inline constexpr int kTestSubnetLength = 29;
inline constexpr int kSharedSubnetLength = 26;

constexpr int otic_net_octet(OticNet n) { return static_cast<int>(n); }

struct TenantCarving {
  Ipv4Prefix management;  // /26 at .0
  Ipv4Prefix oob;         // /27 at .128
  Ipv4Prefix vpn;         // /29 at .160
  bool operator==(const TenantCarving&) const = default;
};

// Fixed carving of a tenant /24. Pure; does not touch allocator state.
inline TenantCarving tenant_layout(Ipv4Prefix block) {
  if (block.length() != 24)
    throw Error(Errc::invalid_argument, "tenant block must be a /24, got " + block.str());
  return {block.subnet(0, 26), block.subnet(128, 27), block.subnet(160, 29)};
}

struct TenantBlock {
  TenantId tenant;
  Ipv4Prefix block;
  std::optional<TenantCarving> carved;
  std::set<Ipv4Prefix> custom;  // tenant-local subnets outside the carving
  bool operator==(const TenantBlock&) const = default;
};

struct TestSubnet {
  Ipv4Prefix prefix;
  InterfaceKind interface = InterfaceKind::F1;
  SessionId session;
  bool operator==(const TestSubnet&) const = default;
};

// A subnet the plan knows about, with its routing flag and who it belongs to.
struct SubnetInfo {
  Ipv4Prefix prefix;
  std::string label;
  bool routable = false;
  std::set<TenantId> owners;  // empty: OTIC-internal or unowned data net
  std::optional<SessionId> session;
  bool is_services = false;
};

// Address plan for one /16 plus the allocator state layered on it: the
// tenant /24 pool, carvings inside each tenant block, and per-test /29s inside
// each data network. Every allocation is deterministic first-fit.
class Ipam {
 public:
  static constexpr int kDocumentVersion = 1;

  Ipam() = default;

  static Ipam init(Ipv4Prefix base) {
    if (base.length() != 16)
      throw Error(Errc::invalid_argument, "address plan needs a /16, got " + base.str());
    Ipam ipam;
    ipam.base_ = base;
    return ipam;
  }

  Ipv4Prefix base() const { return base_; }

  Ipv4Prefix otic_net(OticNet n) const { return octet_net(otic_net_octet(n)); }

  Ipv4Prefix data_net(InterfaceKind k) const {
    auto octet = data_net_octet(k);
    if (!octet)
      throw Error(Errc::invalid_argument,
                  std::string(name_of(k)) +
                      (is_l2_only(k) ? " is L2-only and has no subnet"
                                     : " is analog and has no subnet"));
    return octet_net(*octet);
  }

  Ipv4Prefix shared_subnet(InterfaceKind k) const {
    return data_net(k).subnet(0, kSharedSubnetLength);
  }

  // Tenant pool ----------------------------------------------------------------

  Ipv4Prefix allocate_tenant_block(TenantId tenant) {
    if (tenants_.count(tenant))
      throw Error(Errc::duplicate, "tenant " + std::to_string(tenant.value) +
                                       " already holds a block");
    for (int octet = kTenantFirstOctet; octet <= kTenantLastOctet; ++octet) {
      if (block_owner_.count(octet)) continue;
      Ipv4Prefix block = octet_net(octet);
      block_owner_[octet] = tenant;
      tenants_[tenant] = TenantBlock{tenant, block, std::nullopt, {}};
      return block;
    }
    throw Error(Errc::exhausted, "tenant pool exhausted (" +
                                     std::to_string(kTenantPoolSize) + " blocks)");
  }

  const TenantBlock& carve_tenant_subnets(Ipv4Prefix block) {
    TenantBlock& tb = block_at(block);
    if (tb.carved)
      throw Error(Errc::duplicate, block.str() + " is already carved");
    tb.carved = tenant_layout(block);
    return tb;
  }

  // First-fit tenant-local subnet from the space the fixed carving leaves
  // free (offsets 64..127 and 168..255 of the block).
  Ipv4Prefix allocate_tenant_subnet(TenantId tenant, int length) {
    if (length < 26 || length > 30)
      throw Error(Errc::invalid_argument,
                  "tenant-local subnets must be /26../30, got /" + std::to_string(length));
    TenantBlock& tb = tenant_at(tenant);
    if (!tb.carved)
      throw Error(Errc::invalid_state, tb.block.str() + " is not carved yet");
    std::uint32_t step = std::uint32_t{1} << (32 - length);
    for (std::uint32_t off = 0; off + step <= 256; off += step) {
      Ipv4Prefix cand = tb.block.subnet(off, length);
      if (cand.overlaps(tb.carved->management) || cand.overlaps(tb.carved->oob) ||
          cand.overlaps(tb.carved->vpn))
        continue;
      bool clash = false;
      for (const auto& c : tb.custom) clash = clash || cand.overlaps(c);
      if (clash) continue;
      tb.custom.insert(cand);
      return cand;
    }
    throw Error(Errc::exhausted, "no free /" + std::to_string(length) + " in " +
                                     tb.block.str());
  }

  void release_tenant_block(TenantId tenant) {
    TenantBlock& tb = tenant_at(tenant);
    if (is_referenced(tb.block))
      throw Error(Errc::still_referenced, tb.block.str() + " is still referenced");
    for (const auto& c : tb.custom)
      if (is_referenced(c))
        throw Error(Errc::still_referenced, c.str() + " is still referenced");
    block_owner_.erase(tb.block.network().octet(2));
    tenants_.erase(tenant);
  }

  const TenantBlock* tenant_block(TenantId tenant) const {
    auto it = tenants_.find(tenant);
    return it == tenants_.end() ? nullptr : &it->second;
  }

  const std::map<TenantId, TenantBlock>& tenant_blocks() const { return tenants_; }

  // Data networks --------------------------------------------------------------

  Ipv4Prefix allocate_test_subnet(InterfaceKind k, SessionId session) {
    Ipv4Prefix net = data_net(k);
    for (std::uint32_t off = kTestSubnetFirstOffset; off < 256; off += 8) {
      Ipv4Prefix cand = net.subnet(off, kTestSubnetLength);
      if (test_subnets_.count(cand)) continue;
      test_subnets_[cand] = TestSubnet{cand, k, session};
      return cand;
    }
    throw Error(Errc::exhausted, "no free /29 left in " + net.str());
  }

  const std::map<Ipv4Prefix, TestSubnet>& test_subnets() const { return test_subnets_; }

  // Release & references -------------------------------------------------------

  // A referenced allocation cannot be released; sessions hold references on
  // the subnets they use while provisioned.
  void retain(Ipv4Prefix p) {
    if (!is_allocated(p))
      throw Error(Errc::not_found, p.str() + " is not an active allocation");
    ++references_[p];
  }

  void drop(Ipv4Prefix p) {
    auto it = references_.find(p);
    if (it == references_.end())
      throw Error(Errc::not_found, p.str() + " holds no references");
    if (--it->second == 0) references_.erase(it);
  }

  bool is_referenced(Ipv4Prefix p) const { return references_.count(p) > 0; }

  void release(Ipv4Prefix p) {
    if (is_referenced(p))
      throw Error(Errc::still_referenced, p.str() + " is still referenced");
    if (test_subnets_.erase(p)) return;
    for (auto& [tenant, tb] : tenants_) {
      if (tb.custom.erase(p)) return;
      if (tb.block == p) {
        release_tenant_block(tenant);
        return;
      }
      if (tb.carved && (p == tb.carved->management || p == tb.carved->oob ||
                        p == tb.carved->vpn))
        throw Error(Errc::invalid_argument,
                    p.str() + " is part of a fixed tenant carving");
    }
    throw Error(Errc::not_found, p.str() + " is not an active allocation");
  }

  // Routability ----------------------------------------------------------------

  // L2-only interfaces are listed as not routed; analog ones are not listed.
  bool is_routable(InterfaceKind k) const {
    if (is_analog(k)) throw Error(Errc::not_found, std::string(name_of(k)) + " has no network");
    if (is_l2_only(k)) return false;
    return data_net_routable(k);
  }

  bool is_routable(Ipv4Prefix p) const {
    for (const auto& info : known_subnets())
      if (info.prefix == p) return info.routable;
    throw Error(Errc::not_found, "unknown subnet " + p.str());
  }

  // Every subnet the plan defines or has allocated, in address order.
  std::vector<SubnetInfo> known_subnets() const {
    std::vector<SubnetInfo> out;
    auto add = [&out](Ipv4Prefix p, std::string label, bool routable,
                      std::set<TenantId> owners = {},
                      std::optional<SessionId> session = std::nullopt) {
      SubnetInfo info;
      info.prefix = p;
      info.label = std::move(label);
      info.routable = routable;
      info.owners = std::move(owners);
      info.session = session;
      out.push_back(std::move(info));
    };
    for (OticNet n : {OticNet::oob, OticNet::management, OticNet::services}) {
      add(otic_net(n), "otic/" + std::string(name_of(n)), true);
      out.back().is_services = n == OticNet::services;
    }
    for (const auto& [tenant, tb] : tenants_) {
      std::string t = "tenant" + std::to_string(tenant.value);
      add(tb.block, t, true, {tenant});
      if (tb.carved) {
        add(tb.carved->management, t + "/management", true, {tenant});
        add(tb.carved->oob, t + "/oob", true, {tenant});
        add(tb.carved->vpn, t + "/vpn", true, {tenant});
      }
      for (const auto& c : tb.custom) add(c, t + "/custom", true, {tenant});
    }
    for (InterfaceKind k : kDataNetInterfaces) {
      std::string n(name_of(k));
      add(data_net(k), "data/" + n, data_net_routable(k));
      add(shared_subnet(k), "data/" + n + "/shared", data_net_routable(k));
    }
    for (const auto& [p, ts] : test_subnets_)
      add(p, "data/" + std::string(name_of(ts.interface)) + "/test",
          data_net_routable(ts.interface), {}, ts.session);
    std::sort(out.begin(), out.end(), [](const SubnetInfo& a, const SubnetInfo& b) {
      return a.prefix < b.prefix;
    });
    return out;
  }

  // Documents ------------------------------------------------------------------

  nlohmann::json to_json() const {
    using nlohmann::json;
    json doc;
    doc["version"] = kDocumentVersion;
    doc["base_prefix"] = base_;
    json fixed = json::object();
    for (OticNet n : {OticNet::oob, OticNet::management, OticNet::services})
      fixed[std::string(name_of(n))] = {{"subnet", otic_net(n)}, {"routable", true}};
    doc["fixed_nets"] = fixed;
    json data = json::object();
    for (InterfaceKind k : kDataNetInterfaces)
      data[std::string(name_of(k))] = {{"subnet", data_net(k)},
                                       {"shared", shared_subnet(k)},
                                       {"routable", data_net_routable(k)}};
    data["OFH_CU"] = {{"subnet", nullptr}, {"l2_only", true}, {"routable", false}};
    doc["data_nets"] = data;
    json blocks = json::array();
    for (const auto& [tenant, tb] : tenants_) {
      json b = {{"tenant", tenant}, {"block", tb.block}, {"custom", tb.custom}};
      if (tb.carved)
        b["carved"] = {{"management", tb.carved->management},
                       {"oob", tb.carved->oob},
                       {"vpn", tb.carved->vpn}};
      else
        b["carved"] = nullptr;
      blocks.push_back(b);
    }
    doc["tenant_blocks"] = blocks;
    json allocs = json::array();
    for (const auto& [p, ts] : test_subnets_)
      allocs.push_back({{"interface", ts.interface}, {"subnet", p}, {"session", ts.session}});
    doc["data_net_allocations"] = allocs;
    json refs = json::array();
    for (const auto& [p, n] : references_) refs.push_back({{"subnet", p}, {"count", n}});
    doc["references"] = refs;
    return doc;
  }

  static Ipam from_json(const nlohmann::json& doc) {
    if (doc.value("version", 0) != kDocumentVersion)
      throw Error(Errc::invalid_argument, "unsupported plan document version");
    Ipam ipam = init(doc.at("base_prefix").get<Ipv4Prefix>());
    for (const auto& b : doc.at("tenant_blocks")) {
      TenantBlock tb;
      tb.tenant = b.at("tenant").get<TenantId>();
      tb.block = b.at("block").get<Ipv4Prefix>();
      int octet = tb.block.network().octet(2);
      if (!ipam.base_.contains(tb.block) || tb.block.length() != 24 ||
          octet < kTenantFirstOctet || octet > kTenantLastOctet ||
          ipam.block_owner_.count(octet))
        throw Error(Errc::invalid_argument, "bad tenant block " + tb.block.str());
      if (!b.at("carved").is_null()) tb.carved = tenant_layout(tb.block);
      tb.custom = b.at("custom").get<std::set<Ipv4Prefix>>();
      ipam.block_owner_[octet] = tb.tenant;
      ipam.tenants_[tb.tenant] = tb;
    }
    for (const auto& a : doc.at("data_net_allocations")) {
      TestSubnet ts{a.at("subnet").get<Ipv4Prefix>(), a.at("interface").get<InterfaceKind>(),
                    a.at("session").get<SessionId>()};
      if (!ipam.data_net(ts.interface).contains(ts.prefix))
        throw Error(Errc::invalid_argument, "bad test subnet " + ts.prefix.str());
      ipam.test_subnets_[ts.prefix] = ts;
    }
    for (const auto& r : doc.at("references"))
      ipam.references_[r.at("subnet").get<Ipv4Prefix>()] = r.at("count").get<int>();
    return ipam;
  }

  // Stable hash of everything that has been handed out.
  std::uint64_t fingerprint() const { return fnv1a(to_json().dump()); }

  bool operator==(const Ipam&) const = default;

 private:
  Ipv4Prefix octet_net(int octet) const {
    return base_.subnet(static_cast<std::uint32_t>(octet) << 8, 24);
  }

  bool is_allocated(Ipv4Prefix p) const {
    if (test_subnets_.count(p)) return true;
    for (const auto& [t, tb] : tenants_) {
      if (tb.block == p || tb.custom.count(p)) return true;
      if (tb.carved && (p == tb.carved->management || p == tb.carved->oob ||
                        p == tb.carved->vpn))
        return true;
    }
    return false;
  }

  TenantBlock& tenant_at(TenantId tenant) {
    auto it = tenants_.find(tenant);
    if (it == tenants_.end())
      throw Error(Errc::not_found,
                  "tenant " + std::to_string(tenant.value) + " holds no block");
    return it->second;
  }

  TenantBlock& block_at(Ipv4Prefix block) {
    for (auto& [t, tb] : tenants_)
      if (tb.block == block) return tb;
    throw Error(Errc::not_found, block.str() + " is not an allocated tenant block");
  }

  Ipv4Prefix base_;
  std::map<int, TenantId> block_owner_;  // third octet -> tenant
  std::map<TenantId, TenantBlock> tenants_;
  std::map<Ipv4Prefix, TestSubnet> test_subnets_;
  std::map<Ipv4Prefix, int> references_;
};

}  // namespace otic
