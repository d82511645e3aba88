#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

#include <nlohmann/json.hpp>

namespace otic {

// Integer identifier tagged with the entity it names, so a PortId can never be
// passed where a DeviceId is expected.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const Id&) const = default;

  friend std::ostream& operator<<(std::ostream& os, Id id) {
    return os << id.value;
  }
  friend void to_json(nlohmann::json& j, Id id) { j = id.value; }
  friend void from_json(const nlohmann::json& j, Id& id) {
    id.value = j.get<std::uint32_t>();
  }
};

using SiteId = Id<struct SiteTag>;
using SwitchId = Id<struct SwitchTag>;
using DeviceId = Id<struct DeviceTag>;
using PortId = Id<struct PortTag>;
using LinkId = Id<struct LinkTag>;
using TenantId = Id<struct TenantTag>;
using SessionId = Id<struct SessionTag>;

}  // namespace otic

template <typename Tag>
struct std::hash<otic::Id<Tag>> {
  std::size_t operator()(otic::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
