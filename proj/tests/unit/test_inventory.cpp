#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "otic/feature_catalog.hpp"
#include "otic/inventory.hpp"
#include "otic/physical_graph.hpp"

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

std::vector<PortSpec> eth(int n) {
  std::vector<PortSpec> out;
  for (int i = 0; i < n; ++i) out.push_back({"eth" + std::to_string(i), Medium::ethernet, 25});
  return out;
}

class InventoryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dc = inv.register_site("dc", SiteKind::data_center);
    sw = inv.register_switch(dc, "fabric-100g", eth(4), ClockRole::t_bc, "sw-a");
    du = inv.register_device(dc, TenantId{1}, DeviceRole::dut, DeviceKind::du, eth(2), {}, "DU1");
    ru = inv.register_device(dc, TenantId{1}, DeviceRole::dut, DeviceKind::ru,
                             {{"eth0", Medium::ethernet, 25}, {"ant0", Medium::rf_antenna, 0}}, {}, "RU1");
    vst = inv.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::vst,
                              {{"ant0", Medium::rf_antenna, 0}}, {}, "VST");
  }
  PortId port(const char* ref) const { return inv.resolve_port(ref); }

  Inventory inv;
  SiteId dc;
  SwitchId sw;
  DeviceId du, ru, vst;
};

TEST_F(InventoryTest, RegistrationAndLookup) {
  EXPECT_EQ(inv.switch_(sw).ports.size(), 4u);
  EXPECT_EQ(inv.device(du).ports.size(), 2u);
  EXPECT_EQ(inv.find_device("RU1"), ru);
  EXPECT_EQ(inv.find_switch("sw-a"), sw);
  EXPECT_EQ(inv.port_label(port("DU1/eth1")), "DU1/eth1");
  EXPECT_EQ(inv.resolve_port(std::to_string(port("sw-a/eth3").value)), port("sw-a/eth3"));
  EXPECT_EQ(code_of([&] { (void)port("DU1/eth9"); }), Errc::not_found);
  EXPECT_EQ(code_of([&] { (void)port("nope/eth0"); }), Errc::not_found);
  EXPECT_EQ(code_of([&] { (void)inv.device(DeviceId{99}); }), Errc::not_found);
}

TEST_F(InventoryTest, RegistrationErrors) {
  EXPECT_EQ(code_of([&] { inv.register_site("dc", SiteKind::lab); }), Errc::duplicate);
  EXPECT_EQ(code_of([&] { inv.register_site("", SiteKind::lab); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { inv.register_device(SiteId{9}, std::nullopt, DeviceRole::te, DeviceKind::compute, eth(1), {}); }),
            Errc::not_found);
  EXPECT_EQ(code_of([&] { inv.register_device(dc, std::nullopt, DeviceRole::dut, DeviceKind::du, eth(1), {}); }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { inv.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::compute, eth(1), {}, "DU1"); }),
            Errc::duplicate);
  EXPECT_EQ(code_of([&] { inv.register_switch(dc, "m", eth(1), ClockRole::none, "DU1"); }), Errc::duplicate);
  EXPECT_EQ(code_of([&] { inv.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::compute,
                                              {{"p", Medium::ethernet, 1}, {"p", Medium::ethernet, 1}}, {}); }),
            Errc::duplicate);
  EXPECT_EQ(code_of([&] { inv.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::vst,
                                              {{"rf", Medium::rf_coaxial, 5}}, {}); }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { inv.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::compute, eth(1), {}, "a/b"); }),
            Errc::invalid_argument);
}

TEST_F(InventoryTest, Links) {
  inv.add_link(port("DU1/eth0"), port("sw-a/eth0"), LinkKind::access);
  EXPECT_EQ(inv.peer(port("sw-a/eth0")), port("DU1/eth0"));
  EXPECT_EQ(switch_attachment(inv, port("DU1/eth0")), port("sw-a/eth0"));
  EXPECT_EQ(code_of([&] { inv.add_link(port("DU1/eth0"), port("sw-a/eth1"), LinkKind::access); }),
            Errc::port_occupied);
  EXPECT_EQ(code_of([&] { inv.add_link(port("RU1/ant0"), port("sw-a/eth1"), LinkKind::access); }),
            Errc::medium_mismatch);
  EXPECT_EQ(code_of([&] { inv.add_link(port("RU1/eth0"), port("sw-a/eth1"), LinkKind::analog); }),
            Errc::medium_mismatch);
  EXPECT_EQ(code_of([&] { inv.add_link(port("DU1/eth1"), port("DU1/eth1"), LinkKind::access); }),
            Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { inv.add_link(port("sw-a/eth2"), port("sw-a/eth3"), LinkKind::trunk); }),
            Errc::invalid_argument);
  EXPECT_NO_THROW(inv.add_link(port("RU1/ant0"), port("VST/ant0"), LinkKind::analog));
  // OOB cabling never counts as a data attachment.
  inv.add_link(port("DU1/eth1"), port("sw-a/eth1"), LinkKind::oob);
  EXPECT_EQ(switch_attachment(inv, port("DU1/eth1")), std::nullopt);
}

TEST_F(InventoryTest, DocumentRoundTrip) {
  inv.add_link(port("DU1/eth0"), port("sw-a/eth0"), LinkKind::access);
  inv.add_link(port("RU1/ant0"), port("VST/ant0"), LinkKind::analog);
  auto doc = inv.to_json();
  Inventory back = Inventory::from_json(doc);
  EXPECT_EQ(back, inv);
  EXPECT_EQ(back.to_json(), doc);
  // Ids keep counting after a reload.
  DeviceId next = back.register_device(dc, std::nullopt, DeviceRole::te, DeviceKind::compute, eth(1), {});
  EXPECT_GT(next, vst);
}

TEST(InventoryRandom, DocumentRoundTripOnRandomLabs) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    Engine e;
    testing::run_script(e, testing::random_lab_script(rng));
    const Inventory& inv = e.inventory();
    EXPECT_EQ(Inventory::from_json(inv.to_json()), inv);
    for (const auto& [id, l] : inv.links()) {
      EXPECT_EQ(inv.link_of(l.a), id);
      EXPECT_EQ(inv.peer(l.a), l.b);
      EXPECT_EQ(is_digital(inv.port(l.a).medium), l.kind != LinkKind::analog);
    }
  }
}

TEST(SwitchPath, FewestHopsLowestLinkFirst) {
  Inventory inv;
  SiteId s = inv.register_site("s", SiteKind::lab);
  std::vector<SwitchId> sw;
  for (int i = 0; i < 4; ++i) sw.push_back(inv.register_switch(s, "m", eth(4), ClockRole::none, "sw" + std::to_string(i)));
  auto p = [&](int s_, int e) { return inv.switch_(sw[s_]).ports[e]; };
  LinkId l01 = inv.add_link(p(0, 0), p(1, 0), LinkKind::trunk);
  inv.add_link(p(1, 1), p(3, 0), LinkKind::trunk);
  inv.add_link(p(0, 1), p(2, 0), LinkKind::trunk);
  inv.add_link(p(2, 1), p(3, 1), LinkKind::trunk);
  auto path = shortest_switch_path(switch_adjacency(inv), sw[0], sw[3]);
  ASSERT_TRUE(path);
  ASSERT_EQ(path->size(), 2u);
  EXPECT_EQ((*path)[0].link, l01);
  EXPECT_EQ((*path)[1].neighbor, sw[3]);
  EXPECT_TRUE(shortest_switch_path(switch_adjacency(inv), sw[2], sw[2])->empty());
  SwitchId lone = inv.register_switch(s, "m", eth(1), ClockRole::none, "lone");
  EXPECT_FALSE(shortest_switch_path(switch_adjacency(inv), sw[0], lone));
}

// The compiled-in catalog and data/feature_catalog.json must agree.
TEST(FeatureCatalog, MatchesDataFile) {
  std::ifstream in(OTIC_FEATURE_CATALOG_PATH);
  ASSERT_TRUE(in) << OTIC_FEATURE_CATALOG_PATH;
  auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("version"), kFeatureCatalogVersion);
  const auto& features = doc.at("features");
  ASSERT_EQ(features.size(), kFeatureCatalog.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    const CatalogEntry& e = kFeatureCatalog[i];
    EXPECT_EQ(f.at("key").get<std::string>(), e.key);
    EXPECT_EQ(f.at("iot_mandatory").get<bool>(), e.iot_mandatory);
    std::vector<std::string> compiled;
    for (auto v : e.values)
      if (!v.empty()) compiled.emplace_back(v);
    EXPECT_EQ(f.at("values").get<std::vector<std::string>>(), compiled) << e.key;
  }
}

TEST(FeatureCatalog, Warnings) {
  FeatureSet fs{{"scs_khz", {"30", "17"}}, {"colour", {"red"}}, {"bandwidth_mhz", {"100"}}};
  auto w = catalog_warnings(fs);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NE(w[0].find("colour"), std::string::npos);
  EXPECT_NE(w[1].find("17"), std::string::npos);
}

}  // namespace
}  // namespace otic
