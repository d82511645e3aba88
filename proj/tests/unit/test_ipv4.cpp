#include <random>

#include <gtest/gtest.h>

#include "otic/ipv4.hpp"

namespace otic {
namespace {

TEST(Ipv4Address, ParsesAndPrints) {
  auto a = Ipv4Address::parse("10.77.4.160");
  EXPECT_EQ(a.value, 0x0A4D04A0u);
  EXPECT_EQ(a.octet(0), 10);
  EXPECT_EQ(a.octet(3), 160);
  EXPECT_EQ(a.str(), "10.77.4.160");
}

TEST(Ipv4Address, RejectsMalformed) {
  for (const char* bad : {"", "10.0.0", "10.0.0.256", "10.0.0.1.", "a.b.c.d", "10..0.1", "10.0.0.1x"}) {
    try {
      (void)Ipv4Address::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::invalid_argument) << bad;
    }
  }
}

TEST(Ipv4Prefix, HostBitsRejected) {
  EXPECT_THROW((void)Ipv4Prefix::parse("10.77.4.1/24"), Error);
  EXPECT_THROW((void)Ipv4Prefix::parse("10.77.4.0/33"), Error);
  EXPECT_THROW((void)Ipv4Prefix::parse("10.77.4.0"), Error);
  EXPECT_NO_THROW((void)Ipv4Prefix::parse("0.0.0.0/0"));
}

TEST(Ipv4Prefix, ContainmentAndSubnet) {
  auto net = Ipv4Prefix::parse("10.77.102.0/24");
  auto shared = net.subnet(0, 26);
  EXPECT_EQ(shared.str(), "10.77.102.0/26");
  EXPECT_EQ(net.subnet(64, 29).str(), "10.77.102.64/29");
  EXPECT_TRUE(net.contains(shared));
  EXPECT_FALSE(shared.contains(net));
  EXPECT_TRUE(shared.overlaps(net));
  EXPECT_FALSE(shared.overlaps(net.subnet(64, 29)));
  EXPECT_EQ(net.last().str(), "10.77.102.255");
  EXPECT_EQ(net.size(), 256u);
  EXPECT_THROW((void)net.subnet(4, 29), Error);
  EXPECT_THROW((void)net.subnet(0, 16), Error);
  EXPECT_THROW((void)net.subnet(256, 29), Error);
}

TEST(Ipv4Prefix, OverlapAgreesWithIntervalArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> addr;
  std::uniform_int_distribution<int> len(8, 32);
  for (int i = 0; i < 20000; ++i) {
    int la = len(rng), lb = len(rng);
    auto mk = [&](int l) {
      std::uint32_t mask = l == 0 ? 0 : ~std::uint32_t{0} << (32 - l);
      // Keep both prefixes inside one /8 so overlaps actually happen.
      std::uint32_t v = (0x0A000000u | (addr(rng) & 0x00FFFFFFu)) & mask;
      return Ipv4Prefix::make(Ipv4Address{v}, l);
    };
    auto a = mk(la), b = mk(lb);
    std::uint64_t as = a.network().value, ae = as + a.size() - 1;
    std::uint64_t bs = b.network().value, be = bs + b.size() - 1;
    EXPECT_EQ(a.overlaps(b), as <= be && bs <= ae);
    EXPECT_EQ(a.contains(b), as <= bs && be <= ae);
  }
}

TEST(Ipv4Prefix, JsonRoundTrip) {
  auto p = Ipv4Prefix::parse("10.77.4.128/27");
  nlohmann::json j = p;
  EXPECT_EQ(j, "10.77.4.128/27");
  EXPECT_EQ(j.get<Ipv4Prefix>(), p);
}

}  // namespace
}  // namespace otic
