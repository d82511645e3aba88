#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "otic/fabric.hpp"

namespace otic {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::corrupt;
}

Ipv4Prefix P(const char* s) { return Ipv4Prefix::parse(s); }

// Two switches, two devices on each, one trunk between them.
class TwoSwitches : public ::testing::Test {
 protected:
  void SetUp() override {
    SiteId s = inv.register_site("s", SiteKind::lab);
    std::vector<PortSpec> ports;
    for (int i = 0; i < 4; ++i) ports.push_back({"p" + std::to_string(i), Medium::ethernet, 25});
    sw1 = inv.register_switch(s, "m", ports, ClockRole::none, "sw1");
    sw2 = inv.register_switch(s, "m", ports, ClockRole::none, "sw2");
    for (const char* n : {"a", "b", "c", "d"})
      inv.register_device(s, TenantId{static_cast<std::uint32_t>(n[0] - 'a' + 1)}, DeviceRole::dut,
                          DeviceKind::du, {{"eth0", Medium::ethernet, 25}, {"rf0", Medium::rf_coaxial, 0}}, {}, n);
    link("a/eth0", "sw1/p0");
    link("b/eth0", "sw1/p1");
    link("c/eth0", "sw2/p0");
    link("d/eth0", "sw2/p1");
    inv.add_link(port("sw1/p3"), port("sw2/p3"), LinkKind::trunk);
  }
  void link(const char* x, const char* y) { inv.add_link(port(x), port(y), LinkKind::access); }
  PortId port(const char* ref) const { return inv.resolve_port(ref); }

  Inventory inv;
  SwitchId sw1, sw2;
};

TEST_F(TwoSwitches, EmptyConfigsReachNothing) {
  auto f = build_fabric(inv, {});
  EXPECT_FALSE(f.l2_reachable(port("a/eth0"), port("b/eth0"), 10));
  EXPECT_TRUE(f.configured_vids().empty());
}

TEST_F(TwoSwitches, SameSwitchAccess) {
  PortConfigMap c{{port("sw1/p0"), PortConfig::access(10)}, {port("sw1/p1"), PortConfig::access(10)}};
  auto f = build_fabric(inv, c);
  EXPECT_TRUE(f.l2_reachable(port("a/eth0"), port("b/eth0"), 10));
  EXPECT_FALSE(f.l2_reachable(port("a/eth0"), port("b/eth0"), 11));
  ASSERT_EQ(f.segments(10).size(), 1u);
  EXPECT_EQ(f.segments(10)[0].size(), 2u);
  c[port("sw1/p1")] = PortConfig::access(20);
  EXPECT_FALSE(build_fabric(inv, c).l2_reachable(port("a/eth0"), port("b/eth0"), 10));
}

TEST_F(TwoSwitches, TrunkAdmission) {
  PortConfigMap c{{port("sw1/p0"), PortConfig::access(10)},
                  {port("sw2/p0"), PortConfig::access(10)},
                  {port("sw1/p3"), PortConfig::trunk({10})},
                  {port("sw2/p3"), PortConfig::trunk({10})}};
  EXPECT_TRUE(build_fabric(inv, c).l2_reachable(port("a/eth0"), port("c/eth0"), 10));
  c[port("sw2/p3")] = PortConfig::trunk({20});
  EXPECT_FALSE(build_fabric(inv, c).l2_reachable(port("a/eth0"), port("c/eth0"), 10));
  c[port("sw2/p3")] = PortConfig::shutdown();
  EXPECT_FALSE(build_fabric(inv, c).l2_reachable(port("a/eth0"), port("c/eth0"), 10));
}

TEST_F(TwoSwitches, BuildErrors) {
  EXPECT_EQ(code_of([&] { build_fabric(inv, {{port("a/rf0"), PortConfig::access(10)}}); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { build_fabric(inv, {{PortId{999}, PortConfig::access(10)}}); }), Errc::not_found);
  EXPECT_EQ(code_of([&] { build_fabric(inv, {{port("sw1/p0"), PortConfig::access(1)}}); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { build_fabric(inv, {{port("sw1/p0"), PortConfig{PortMode::access, {10, 11}, false}}}); }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { build_fabric(inv, {{port("sw1/p0"), PortConfig::access(10)}}, {}, std::set<Vid>{11}); }),
            Errc::invalid_argument);
  auto f = build_fabric(inv, {});
  EXPECT_EQ(code_of([&] { (void)f.l2_reachable(PortId{999}, port("a/eth0"), 10); }), Errc::not_found);
}

TEST_F(TwoSwitches, IsolationLeakAndGrant) {
  PortConfigMap c{{port("sw1/p0"), PortConfig::access(10)}, {port("sw1/p1"), PortConfig::access(10)}};
  auto f = build_fabric(inv, c);
  Ownership own;
  for (const auto& [id, d] : inv.devices()) own[id] = d.owner;
  auto r = verify_isolation(f, own, {});
  ASSERT_EQ(r.isolation_violations.size(), 1u);
  EXPECT_EQ(r.isolation_violations[0].vid, Vid{10});
  EXPECT_EQ(r.isolation_violations[0].tenant_a, TenantId{1});
  EXPECT_EQ(r.isolation_violations[0].tenant_b, TenantId{2});
  Grant g{SessionId{1}, {TenantId{1}, TenantId{2}}, {10}, {}};
  EXPECT_TRUE(verify_isolation(f, own, {g}).isolated());
  g.vids = {11};
  EXPECT_FALSE(verify_isolation(f, own, {g}).isolated());
  own.erase(*inv.find_device("a"));
  EXPECT_EQ(code_of([&] { verify_isolation(f, own, {}); }), Errc::not_found);
}

TEST_F(TwoSwitches, IntentReport) {
  LogicalTopology t;
  EXPECT_TRUE(verify_intent(build_fabric(inv, {}), t, {}).passed());
  t.digital_edges.push_back({port("a/eth0"), port("c/eth0"), InterfaceKind::F1, {}});
  EXPECT_EQ(code_of([&] { verify_intent(build_fabric(inv, {}), t, {}); }), Errc::invalid_argument);
  VlanMap vm{{{InterfaceKind::F1, std::nullopt}, 10}};
  PortConfigMap c{{port("sw1/p0"), PortConfig::access(10)},
                  {port("sw2/p0"), PortConfig::access(10)},
                  {port("sw1/p3"), PortConfig::trunk({10})},
                  {port("sw2/p3"), PortConfig::trunk({10})}};
  EXPECT_TRUE(verify_intent(build_fabric(inv, c), t, vm).passed());
  c[port("sw1/p3")] = PortConfig::trunk({});
  auto r = verify_intent(build_fabric(inv, c), t, vm);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(report_to_json(r, &inv)["intent_results"][0]["a"], "a/eth0");
  t.analog_edges.push_back({port("a/rf0"), port("b/rf0"), AnalogMode::conducted});
  r = verify_intent(build_fabric(inv, c), t, vm);
  EXPECT_FALSE(r.intent_results.back().passed);
  inv.add_link(port("a/rf0"), port("b/rf0"), LinkKind::analog);
  r = verify_intent(build_fabric(inv, c), t, vm);
  EXPECT_TRUE(r.intent_results.back().passed);
}

// Library reachability vs a port-level BFS written from scratch.
TEST(FabricOracle, L2MatchesBfsOnRandomFabrics) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    auto rf = testing::random_fabric(rng);
    auto f = build_fabric(rf.inventory, rf.configs);
    std::vector<PortId> ports = rf.device_ports;
    ports.insert(ports.end(), rf.switch_ports.begin(), rf.switch_ports.end());
    for (Vid v : rf.vids)
      for (PortId a : ports)
        for (PortId b : ports)
          ASSERT_EQ(f.l2_reachable(a, b, v), testing::oracle_l2_reachable(rf.inventory, rf.configs, a, b, v))
              << "fabric " << i << " vid " << v;
  }
}

TEST(FabricOracle, SymmetricAndTransitive) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    auto rf = testing::random_fabric(rng, 4, 12, 6);
    auto f = build_fabric(rf.inventory, rf.configs);
    for (Vid v : rf.vids) {
      const auto& ps = rf.device_ports;
      for (PortId a : ps)
        for (PortId b : ps) {
          EXPECT_EQ(f.l2_reachable(a, b, v), f.l2_reachable(b, a, v));
          if (!f.l2_reachable(a, b, v)) continue;
          for (PortId c : ps)
            if (f.l2_reachable(b, c, v)) {
              EXPECT_TRUE(f.l2_reachable(a, c, v));
            }
        }
    }
  }
}

class L3Policy : public ::testing::Test {
 protected:
  testing::TwoSiteLab lab = testing::two_site_lab(true);
  FabricModel f = lab.engine.fabric();
};

TEST_F(L3Policy, TenantRules) {
  EXPECT_TRUE(f.l3_reachable(P("10.77.4.160/29"), P("10.77.4.0/26")));
  EXPECT_FALSE(f.l3_reachable(P("10.77.4.0/26"), P("10.77.5.0/26")));
  EXPECT_TRUE(f.l3_reachable(P("10.77.5.0/24"), P("10.77.2.0/24")));
  EXPECT_FALSE(f.l3_reachable(P("10.77.4.0/24"), P("10.77.101.0/24")));
  EXPECT_FALSE(f.l3_reachable(P("10.77.101.0/24"), P("10.77.101.0/24")));
  EXPECT_EQ(code_of([&] { (void)f.l3_reachable(P("10.77.4.0/24"), P("10.77.200.0/24")); }), Errc::not_found);
}

TEST_F(L3Policy, RouterHoldsOnlyRoutable) {
  for (const auto& s : f.router()) EXPECT_TRUE(s.routable) << s.prefix;
  for (const auto& s : f.known_subnets())
    if (s.prefix.network().octet(2) >= 101 && s.prefix.network().octet(2) <= 104) {
      EXPECT_FALSE(s.routable) << s.prefix;
    }
}

TEST_F(L3Policy, TwoSiteHasNoViolations) {
  auto r = lab.engine.check_all();
  EXPECT_TRUE(r.passed()) << report_to_json(r).dump();
}

}  // namespace
}  // namespace otic
