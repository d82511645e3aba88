#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"

namespace otic {

struct Ipv4Address {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const Ipv4Address&) const = default;

  constexpr std::uint8_t octet(int i) const {
    return static_cast<std::uint8_t>(value >> (8 * (3 - i)));
  }

  std::string str() const {
    return std::to_string(octet(0)) + "." + std::to_string(octet(1)) + "." +
           std::to_string(octet(2)) + "." + std::to_string(octet(3));
  }

  static Ipv4Address parse(std::string_view text) {
    std::uint32_t v = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 4; ++i) {
      unsigned seg = 0;
      auto [next, ec] = std::from_chars(p, end, seg);
      if (ec != std::errc{} || next == p || seg > 255)
        throw Error(Errc::invalid_argument,
                    "invalid IPv4 address '" + std::string(text) + "'");
      v = (v << 8) | seg;
      p = next;
      if (i < 3) {
        if (p == end || *p != '.')
          throw Error(Errc::invalid_argument,
                      "invalid IPv4 address '" + std::string(text) + "'");
        ++p;
      }
    }
    if (p != end)
      throw Error(Errc::invalid_argument,
                  "trailing characters in IPv4 address '" + std::string(text) + "'");
    return Ipv4Address{v};
  }
};

// A CIDR block. The network address never has host bits set.
class Ipv4Prefix {
 public:
  constexpr Ipv4Prefix() = default;

  static Ipv4Prefix make(Ipv4Address network, int length) {
    if (length < 0 || length > 32)
      throw Error(Errc::invalid_argument,
                  "prefix length out of range: " + std::to_string(length));
    Ipv4Prefix p;
    p.network_ = network.value;
    p.length_ = static_cast<std::uint8_t>(length);
    if ((p.network_ & ~p.mask()) != 0)
      throw Error(Errc::invalid_argument,
                  network.str() + "/" + std::to_string(length) +
                      " has host bits set");
    return p;
  }

  static Ipv4Prefix parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
      throw Error(Errc::invalid_argument,
                  "missing prefix length in '" + std::string(text) + "'");
    auto addr = Ipv4Address::parse(text.substr(0, slash));
    auto len_text = text.substr(slash + 1);
    int len = -1;
    auto [next, ec] =
        std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
    if (ec != std::errc{} || next != len_text.data() + len_text.size())
      throw Error(Errc::invalid_argument,
                  "invalid prefix length in '" + std::string(text) + "'");
    return make(addr, len);
  }

  constexpr Ipv4Address network() const { return Ipv4Address{network_}; }
  constexpr int length() const { return length_; }
  constexpr std::uint32_t mask() const {
    return length_ == 0 ? 0u : ~std::uint32_t{0} << (32 - length_);
  }
  constexpr std::uint64_t size() const { return std::uint64_t{1} << (32 - length_); }
  constexpr Ipv4Address last() const { return Ipv4Address{network_ | ~mask()}; }

  constexpr bool contains(Ipv4Address a) const {
    return (a.value & mask()) == network_;
  }
  constexpr bool contains(const Ipv4Prefix& other) const {
    return other.length_ >= length_ && contains(other.network());
  }
  constexpr bool overlaps(const Ipv4Prefix& other) const {
    return contains(other) || other.contains(*this);
  }

  // Sub-block of the given length starting `offset` addresses into this one.
  Ipv4Prefix subnet(std::uint32_t offset, int sub_length) const {
    if (sub_length < length_)
      throw Error(Errc::invalid_argument, "subnet wider than parent");
    auto sub = make(Ipv4Address{network_ + offset}, sub_length);
    if (!contains(sub))
      throw Error(Errc::invalid_argument, "subnet outside parent " + str());
    return sub;
  }

  std::string str() const {
    return network().str() + "/" + std::to_string(length_);
  }

  constexpr auto operator<=>(const Ipv4Prefix&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const Ipv4Prefix& p) {
    return os << p.str();
  }
  friend void to_json(nlohmann::json& j, const Ipv4Prefix& p) { j = p.str(); }
  friend void from_json(const nlohmann::json& j, Ipv4Prefix& p) {
    p = parse(j.get<std::string>());
  }

 private:
  std::uint32_t network_ = 0;
  std::uint8_t length_ = 0;
};

}  // namespace otic
