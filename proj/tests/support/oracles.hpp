#pragma once

#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "otic/fabric.hpp"
#include "otic/inventory.hpp"
#include "otic/ipv4.hpp"

// Reference implementations written against the raw inventory and configs
// only. They share no code with the library's reachability or allocator
// internals.
namespace otic::testing {

inline bool oracle_admits(const PortConfigMap& configs, PortId p, Vid v) {
  auto it = configs.find(p);
  if (it == configs.end() || it->second.mode == PortMode::shutdown) return false;
  return it->second.vids.count(v) > 0;
}

inline std::optional<PortId> oracle_cable_peer(const Inventory& inv, PortId p) {
  for (const auto& [id, l] : inv.links()) {
    if (l.kind != LinkKind::access && l.kind != LinkKind::trunk) continue;
    if (l.a == p) return l.b;
    if (l.b == p) return l.a;
  }
  return std::nullopt;
}

// Switch port through which a frame tagged `vid` from port `p` is seen by the
// fabric, if any.
inline std::optional<PortId> oracle_entry(const Inventory& inv, const PortConfigMap& configs,
                                          PortId p, Vid vid) {
  PortId entry = p;
  if (!inv.port(p).on_switch()) {
    auto peer = oracle_cable_peer(inv, p);
    if (!peer || !inv.port(*peer).on_switch()) return std::nullopt;
    entry = *peer;
  }
  if (!oracle_admits(configs, entry, vid)) return std::nullopt;
  return entry;
}

// Breadth-first search over individual switch ports. A switch floods between
// its own admitting ports; a cable joins two switch ports when both admit.
inline bool oracle_l2_reachable(const Inventory& inv, const PortConfigMap& configs, PortId a,
                                PortId b, Vid vid) {
  auto ea = oracle_entry(inv, configs, a, vid);
  auto eb = oracle_entry(inv, configs, b, vid);
  if (!ea || !eb) return false;
  std::set<PortId> seen{*ea};
  std::deque<PortId> queue{*ea};
  while (!queue.empty()) {
    PortId cur = queue.front();
    queue.pop_front();
    if (cur == *eb) return true;
    SwitchId sw = inv.port(cur).switch_id();
    for (PortId q : inv.switch_(sw).ports)
      if (!seen.count(q) && oracle_admits(configs, q, vid)) {
        seen.insert(q);
        queue.push_back(q);
      }
    auto peer = oracle_cable_peer(inv, cur);
    if (peer && inv.port(*peer).on_switch() && !seen.count(*peer) &&
        oracle_admits(configs, *peer, vid)) {
      seen.insert(*peer);
      queue.push_back(*peer);
    }
  }
  return false;
}

// First aligned block of `length` at or after `from` inside `container` that
// overlaps none of `taken`, found by walking every candidate in order.
inline std::optional<Ipv4Prefix> oracle_first_fit(Ipv4Prefix container, int length,
                                                  const std::vector<Ipv4Prefix>& taken,
                                                  std::uint32_t from = 0) {
  std::uint64_t size = std::uint64_t{1} << (32 - length);
  std::uint64_t base = container.network().value;
  std::uint64_t end = base + container.size();
  for (std::uint64_t start = base + from; start + size <= end; start += size) {
    if ((start - base) % size) continue;
    std::uint64_t last = start + size - 1;
    bool clash = false;
    for (const auto& t : taken) {
      std::uint64_t ts = t.network().value, te = ts + t.size() - 1;
      if (start <= te && ts <= last) clash = true;
    }
    if (!clash) return Ipv4Prefix::make(Ipv4Address{static_cast<std::uint32_t>(start)}, length);
  }
  return std::nullopt;
}

// Random small fabric --------------------------------------------------------------

struct RandomFabric {
  Inventory inventory;
  PortConfigMap configs;
  std::vector<PortId> device_ports;
  std::vector<PortId> switch_ports;
  std::vector<Vid> vids;
};

inline RandomFabric random_fabric(std::mt19937_64& rng, int max_switches = 5, int max_devices = 20,
                                  int max_vids = 30) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  RandomFabric f;
  std::set<Vid> vid_pool;
  int n_vids = pick(1, max_vids);
  while (static_cast<int>(vid_pool.size()) < n_vids) vid_pool.insert(static_cast<Vid>(pick(2, 4094)));
  f.vids.assign(vid_pool.begin(), vid_pool.end());

  SiteId site = f.inventory.register_site("site", SiteKind::lab);
  int n_sw = pick(1, max_switches);
  std::vector<PortId> free_ports;
  for (int i = 0; i < n_sw; ++i) {
    std::vector<PortSpec> specs;
    int n = pick(2, 10);
    for (int p = 0; p < n; ++p) specs.push_back({"p" + std::to_string(p), Medium::ethernet, 10});
    SwitchId sw = f.inventory.register_switch(site, "m", specs, ClockRole::none,
                                              "sw" + std::to_string(i));
    for (PortId p : f.inventory.switch_(sw).ports) {
      f.switch_ports.push_back(p);
      free_ports.push_back(p);
    }
  }
  int n_dev = pick(0, max_devices);
  for (int i = 0; i < n_dev; ++i) {
    std::vector<PortSpec> specs{{"eth0", Medium::ethernet, 10}};
    if (chance(0.3)) specs.push_back({"eth1", Medium::ethernet, 10});
    if (chance(0.2)) specs.push_back({"rf0", Medium::rf_coaxial, 0});
    DeviceId d = f.inventory.register_device(site, std::nullopt, DeviceRole::te,
                                             DeviceKind::compute, specs, {},
                                             "dev" + std::to_string(i));
    for (PortId p : f.inventory.device(d).ports)
      if (f.inventory.port(p).medium == Medium::ethernet) {
        f.device_ports.push_back(p);
        free_ports.push_back(p);
      }
  }
  std::shuffle(free_ports.begin(), free_ports.end(), rng);
  // Cable random pairs; some ports stay dark.
  for (std::size_t i = 0; i + 1 < free_ports.size(); i += 2) {
    if (chance(0.2)) continue;
    LinkKind kind = chance(0.1) ? LinkKind::oob : (chance(0.5) ? LinkKind::trunk : LinkKind::access);
    PortId a = free_ports[i], b = free_ports[i + 1];
    const Port& pa = f.inventory.port(a);
    const Port& pb = f.inventory.port(b);
    if (pa.owner == pb.owner) continue;
    f.inventory.add_link(a, b, kind);
  }
  for (PortId p : f.switch_ports) {
    int r = pick(0, 9);
    if (r < 2) continue;
    if (r < 3) {
      f.configs[p] = PortConfig::shutdown();
    } else if (r < 6) {
      f.configs[p] = PortConfig::access(f.vids[pick(0, static_cast<int>(f.vids.size()) - 1)]);
    } else {
      std::set<Vid> allowed;
      for (Vid v : f.vids)
        if (chance(0.5)) allowed.insert(v);
      f.configs[p] = PortConfig::trunk(allowed);
    }
  }
  return f;
}

}  // namespace otic::testing
