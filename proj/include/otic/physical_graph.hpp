#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "otic/inventory.hpp"

namespace otic {

// Links that carry Ethernet frames between nodes. OOB cabling and analog RF
// never take part in VLAN forwarding.
constexpr bool is_data_link(LinkKind k) {
  return k == LinkKind::access || k == LinkKind::trunk;
}

// The switch port a device port is cabled to, if any.
inline std::optional<PortId> switch_attachment(const Inventory& inv, PortId device_port) {
  auto link = inv.link_of(device_port);
  if (!link) return std::nullopt;
  const PhysicalLink& l = inv.link(*link);
  if (!is_data_link(l.kind)) return std::nullopt;
  PortId other = l.other(device_port);
  if (!inv.port(other).on_switch()) return std::nullopt;
  return other;
}

struct InterSwitchHop {
  LinkId link;
  PortId local;
  PortId remote;
  SwitchId neighbor;
};

// Switch-to-switch data links, per switch, ordered by link id.
inline std::map<SwitchId, std::vector<InterSwitchHop>> switch_adjacency(const Inventory& inv) {
  std::map<SwitchId, std::vector<InterSwitchHop>> adj;
  for (const auto& [id, sw] : inv.switches()) adj[id];
  for (const auto& [id, l] : inv.links()) {
    if (!is_data_link(l.kind)) continue;
    const Port& pa = inv.port(l.a);
    const Port& pb = inv.port(l.b);
    if (!pa.on_switch() || !pb.on_switch()) continue;
    adj[pa.switch_id()].push_back({id, l.a, l.b, pb.switch_id()});
    adj[pb.switch_id()].push_back({id, l.b, l.a, pa.switch_id()});
  }
  for (auto& [id, hops] : adj)
    std::sort(hops.begin(), hops.end(),
              [](const InterSwitchHop& x, const InterSwitchHop& y) { return x.link < y.link; });
  return adj;
}

// Fewest-hop path between two switches. Neighbours are expanded in link-id
// order, so among equal-length paths the one using lower link ids first wins.
inline std::optional<std::vector<InterSwitchHop>> shortest_switch_path(
    const std::map<SwitchId, std::vector<InterSwitchHop>>& adj, SwitchId from, SwitchId to) {
  if (from == to) return std::vector<InterSwitchHop>{};
  // neighbour -> (hop used to reach it, predecessor)
  std::map<SwitchId, std::pair<InterSwitchHop, SwitchId>> came_by;
  std::deque<SwitchId> queue{from};
  while (!queue.empty()) {
    SwitchId cur = queue.front();
    queue.pop_front();
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (const auto& hop : it->second) {
      if (hop.neighbor == from || came_by.count(hop.neighbor)) continue;
      came_by.emplace(hop.neighbor, std::pair{hop, cur});
      if (hop.neighbor == to) {
        std::vector<InterSwitchHop> path;
        for (SwitchId s = to; s != from; s = came_by.at(s).second)
          path.push_back(came_by.at(s).first);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(hop.neighbor);
    }
  }
  return std::nullopt;
}

}  // namespace otic
