#pragma once

#include <array>
#include <optional>
#include <utility>

#include "otic/enum_names.hpp"

namespace otic {

// Logical interfaces a test topology can require. X2 and Xn extend the fixed
// set for WG5 interoperability sessions.
enum class InterfaceKind { F1, NG, O1, E1, OFH_M, OFH_CU, X2, Xn, Uu_analog };

// Open Fronthaul planes. M-plane rides on OFH_M; control and user planes ride
// on OFH_CU.
enum class Plane { m, cu_c, cu_u };

template <>
struct EnumNames<InterfaceKind> {
  static constexpr std::array table{
      std::pair{InterfaceKind::F1, "F1"},
      std::pair{InterfaceKind::NG, "NG"},
      std::pair{InterfaceKind::O1, "O1"},
      std::pair{InterfaceKind::E1, "E1"},
      std::pair{InterfaceKind::OFH_M, "OFH_M"},
      std::pair{InterfaceKind::OFH_CU, "OFH_CU"},
      std::pair{InterfaceKind::X2, "X2"},
      std::pair{InterfaceKind::Xn, "Xn"},
      std::pair{InterfaceKind::Uu_analog, "Uu_analog"},
  };
};

template <>
struct EnumNames<Plane> {
  static constexpr std::array table{
      std::pair{Plane::m, "m"},
      std::pair{Plane::cu_c, "cu_c"},
      std::pair{Plane::cu_u, "cu_u"},
  };
};

// OFH CU-plane is bridged only; it gets a VLAN but never a subnet.
constexpr bool is_l2_only(InterfaceKind k) { return k == InterfaceKind::OFH_CU; }

constexpr bool is_analog(InterfaceKind k) { return k == InterfaceKind::Uu_analog; }

constexpr bool has_data_net(InterfaceKind k) {
  return !is_l2_only(k) && !is_analog(k);
}

// Third octet of the per-interface data network inside the /16.
constexpr std::optional<int> data_net_octet(InterfaceKind k) {
  switch (k) {
    case InterfaceKind::F1: return 101;
    case InterfaceKind::NG: return 102;
    case InterfaceKind::O1: return 103;
    case InterfaceKind::E1: return 104;
    case InterfaceKind::OFH_M: return 105;
    case InterfaceKind::X2: return 106;
    case InterfaceKind::Xn: return 107;
    case InterfaceKind::OFH_CU:
    case InterfaceKind::Uu_analog: return std::nullopt;
  }
  return std::nullopt;
}

// Only the fronthaul management network is routed among the data networks.
constexpr bool data_net_routable(InterfaceKind k) {
  return k == InterfaceKind::OFH_M;
}

inline constexpr std::array kDataNetInterfaces{
    InterfaceKind::F1, InterfaceKind::NG,    InterfaceKind::O1, InterfaceKind::E1,
    InterfaceKind::OFH_M, InterfaceKind::X2, InterfaceKind::Xn,
};

}  // namespace otic
