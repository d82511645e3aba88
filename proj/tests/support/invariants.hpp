#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "otic/session.hpp"

namespace otic::testing {

// Cross-module consistency of an engine state. Returns one line per broken
// invariant; empty means healthy.
inline std::vector<std::string> invariant_violations(const Engine& e) {
  std::vector<std::string> out;
  auto bad = [&](std::string s) { out.push_back(std::move(s)); };
  const Inventory& inv = e.inventory();

  // Tenants: one carved block each, nothing extra in the plan.
  if (e.has_plan()) {
    for (const auto& [id, t] : e.tenants()) {
      const TenantBlock* tb = e.plan().tenant_block(id);
      if (!tb) bad("tenant " + t.name + " has no block");
      else if (!tb->carved) bad("tenant " + t.name + " block not carved");
    }
    for (const auto& [id, tb] : e.plan().tenant_blocks())
      if (!e.tenants().count(id)) bad("orphan tenant block " + tb.block.str());
  } else if (!e.tenants().empty()) {
    bad("tenants without a plan");
  }
  for (const auto& [id, d] : inv.devices())
    if (d.owner && !e.tenants().count(*d.owner)) bad("device " + d.name + " has unknown owner");

  // Sessions: resources held exactly by live sessions.
  std::map<Vid, int> vid_holders;
  std::map<Ipv4Prefix, int> subnet_holders;
  std::map<DeviceId, int> claims;
  for (const auto& [sid, s] : e.sessions()) {
    std::string name = "s" + std::to_string(sid.value);
    for (TenantId t : s.tenants)
      if (!e.tenants().count(t)) bad(name + " references a deleted tenant");
    if (!holds_resources(s.state)) {
      if (!s.allocations.empty()) bad(name + " holds allocations in state " + std::string(name_of(s.state)));
      continue;
    }
    for (const auto& [ch, v] : s.allocations.vids) {
      ++vid_holders[v];
      auto purpose = e.vlans().lookup({ch.first, sid, ch.second});
      if (!purpose || *purpose != v) bad(name + " VID " + std::to_string(v) + " not in pool");
    }
    for (const auto& [k, p] : s.allocations.subnets) {
      ++subnet_holders[p];
      auto it = e.plan().test_subnets().find(p);
      if (it == e.plan().test_subnets().end() || it->second.session != sid)
        bad(name + " subnet " + p.str() + " not in plan");
      if (!e.plan().is_referenced(p)) bad(name + " subnet " + p.str() + " not referenced");
    }
    for (DeviceId d : s.participants) ++claims[d];
    for (const auto& [p, vids] : s.allocations.port_vids) {
      if (!inv.port(p).on_switch()) bad(name + " configures a device port");
      for (Vid v : vids)
        if (!s.allocations.grant.vids.count(v)) bad(name + " port carries a foreign VID");
    }
  }
  for (const auto& [v, n] : vid_holders)
    if (n > 1) bad("VID " + std::to_string(v) + " held by " + std::to_string(n) + " sessions");
  for (const auto& [v, purpose] : e.vlans().active())
    if (!vid_holders.count(v)) bad("leaked VID " + std::to_string(v));
  for (const auto& [p, n] : subnet_holders)
    if (n > 1) bad("subnet " + p.str() + " held twice");
  if (e.has_plan())
    for (const auto& [p, ts] : e.plan().test_subnets())
      if (!subnet_holders.count(p)) bad("leaked subnet " + p.str());
  for (const auto& [d, n] : claims)
    if (n > 1) bad("device " + inv.device(d).name + " claimed " + std::to_string(n) + " times");
  if (e.vlans().free_count() + e.vlans().active().size() != e.vlans().capacity())
    bad("VLAN pool accounting off");

  // Derived configs must build into a fabric (only active VIDs, valid ports).
  try {
    (void)e.fabric();
  } catch (const std::exception& ex) {
    bad(std::string("fabric does not build: ") + ex.what());
  }
  // Documents round-trip.
  try {
    if (!(Engine::from_json(e.to_json()) == e)) bad("state document does not round-trip");
  } catch (const std::exception& ex) {
    bad(std::string("state document does not load: ") + ex.what());
  }
  return out;
}

}  // namespace otic::testing
