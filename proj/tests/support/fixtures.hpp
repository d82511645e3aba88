#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/commands.hpp"
#include "otic/session.hpp"

namespace otic::testing {

struct Command {
  std::string name;
  nlohmann::json payload;
};

using Script = std::vector<Command>;

inline void run_script(Engine& e, const Script& script) {
  for (const auto& c : script) apply_command(e, c.name, c.payload);
}

inline nlohmann::json switch_ports(int access_ports, int uplinks) {
  nlohmann::json ports = nlohmann::json::array();
  for (int i = 1; i <= access_ports; ++i) ports.push_back("p" + std::to_string(i) + ":ethernet:25");
  for (int i = 1; i <= uplinks; ++i) ports.push_back("up" + std::to_string(i) + ":ethernet:100");
  return ports;
}

// Two sites joined by two parallel 100G trunks: a data center switch for the
// digital equipment and a lab switch next to the chamber for radios and RF
// test gear. Three tenants own the DUTs of the three parallel tests.
inline Script two_site_inventory_script() {
  using nlohmann::json;
  Script s;
  s.push_back({"plan.init", {{"base", "10.77.0.0/16"}}});
  for (const char* t : {"tenant1", "tenant2", "tenant3"}) s.push_back({"tenant.create", {{"name", t}}});
  s.push_back({"site.register", {{"name", "dc"}, {"kind", "data_center"}}});
  s.push_back({"site.register", {{"name", "lab"}, {"kind", "lab"}}});
  s.push_back({"switch.register", {{"name", "sw-dc"}, {"site", "dc"}, {"model", "S5248F-ON"},
                                   {"clock_role", "t_bc"}, {"ports", switch_ports(12, 2)}}});
  s.push_back({"switch.register", {{"name", "sw-lab"}, {"site", "lab"}, {"model", "S5232F-ON"},
                                   {"clock_role", "t_bc"}, {"ports", switch_ports(12, 2)}}});
  s.push_back({"link.add", {{"a", "sw-dc/up1"}, {"b", "sw-lab/up1"}, {"kind", "trunk"}}});
  s.push_back({"link.add", {{"a", "sw-dc/up2"}, {"b", "sw-lab/up2"}, {"kind", "trunk"}}});

  struct Dev {
    const char* name;
    const char* site;
    json owner;
    const char* role;
    const char* kind;
    json ports;
  };
  std::vector<Dev> devs = {
      {"CU1", "dc", "tenant1", "dut", "cu", {"eth0"}},
      {"DU1", "dc", "tenant1", "dut", "du", {"eth0"}},
      {"DU2", "dc", "tenant2", "dut", "du", {"eth0"}},
      {"CoreEmu1", "dc", nullptr, "te", "core_emulator", {"eth0"}},
      {"CoreEmu2", "dc", nullptr, "te", "core_emulator", {"eth0"}},
      {"DUEmu", "dc", nullptr, "te", "du_emulator", {"eth0"}},
      {"RUEmu", "dc", nullptr, "te", "ru_ue_emulator", {"eth0"}},
      {"RU1", "lab", "tenant3", "dut", "ru", {"eth0", "ant0:rf_antenna"}},
      {"RU-ref", "lab", nullptr, "te", "ru", {"eth0", "rf0:rf_coaxial"}},
      {"UEEmu", "lab", nullptr, "te", "ue_emulator", {"eth0", "rf0:rf_coaxial"}},
      {"VST", "lab", nullptr, "te", "vst", {"eth0", "ant0:rf_antenna"}},
  };
  int dc_port = 1, lab_port = 1;
  for (const auto& d : devs) {
    json p = {{"name", d.name}, {"site", d.site}, {"role", d.role}, {"kind", d.kind},
              {"ports", d.ports}};
    if (!d.owner.is_null()) p["owner"] = d.owner;
    s.push_back({"device.register", p});
    bool dc = std::string(d.site) == "dc";
    std::string sw = dc ? "sw-dc/p" + std::to_string(dc_port++) : "sw-lab/p" + std::to_string(lab_port++);
    s.push_back({"link.add", {{"a", std::string(d.name) + "/eth0"}, {"b", sw}, {"kind", "access"}}});
  }
  s.push_back({"link.add", {{"a", "RU1/ant0"}, {"b", "VST/ant0"}, {"kind", "analog"}}});
  s.push_back({"link.add", {{"a", "RU-ref/rf0"}, {"b", "UEEmu/rf0"}, {"kind", "analog"}}});
  return s;
}

// The three parallel tests: tenant1 conducted E2E on CU1/DU1, tenant2 DU
// conformance on DU2, tenant3 radiated RU conformance on RU1.
inline Script two_site_session_script() {
  Script s;
  s.push_back({"session.plan",
               {{"kind", "e2e"},
                {"tenants", {"tenant1"}},
                {"participants", {"UEEmu", "RU-ref", "DU1", "CU1", "CoreEmu1"}},
                {"options", {{"analog_mode", "conducted"}}}}});
  s.push_back({"session.plan",
               {{"kind", "du_conformance"},
                {"tenants", {"tenant2"}},
                {"participants", {"DU2", "RUEmu", "CoreEmu2"}}}});
  s.push_back({"session.plan",
               {{"kind", "ru_conformance"},
                {"tenants", {"tenant3"}},
                {"participants", {"RU1", "DUEmu", "VST"}},
                {"options", {{"analog_mode", "radiated"}}}}});
  for (int i = 1; i <= 3; ++i) s.push_back({"session.provision", {{"session", i}}});
  return s;
}

struct TwoSiteLab {
  Engine engine;
  SessionId e2e{1};
  SessionId du_conformance{2};
  SessionId ru_conformance{3};

  DeviceId device(const std::string& name) const { return *engine.inventory().find_device(name); }
  TenantId tenant(const std::string& name) const { return *engine.find_tenant(name); }
  PortId port(const std::string& ref) const { return engine.inventory().resolve_port(ref); }
};

inline TwoSiteLab two_site_lab(bool provision = true) {
  TwoSiteLab lab;
  run_script(lab.engine, two_site_inventory_script());
  if (provision) run_script(lab.engine, two_site_session_script());
  return lab;
}

// Randomized lab ------------------------------------------------------------------

struct RandomLabOptions {
  int max_switches = 4;
  int tenants = 3;
};

// A random but well-formed lab: a spanning tree of trunks (sometimes with a
// parallel or cycle-closing extra), and a pool of DUTs and TE of every kind.
// A few devices are left uncabled or without RF cabling on purpose.
inline Script random_lab_script(std::mt19937_64& rng, RandomLabOptions opt = {}) {
  using nlohmann::json;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  Script s;
  s.push_back({"plan.init", {{"base", "10.77.0.0/16"}}});
  for (int t = 1; t <= opt.tenants; ++t)
    s.push_back({"tenant.create", {{"name", "tenant" + std::to_string(t)}}});
  s.push_back({"site.register", {{"name", "dc"}, {"kind", "data_center"}}});
  s.push_back({"site.register", {{"name", "lab"}, {"kind", "lab"}}});

  int n_sw = pick(1, opt.max_switches);
  std::vector<int> next_port(n_sw, 1), next_up(n_sw, 1);
  for (int i = 0; i < n_sw; ++i) {
    const char* clock = chance(0.8) ? "t_bc" : "none";
    s.push_back({"switch.register", {{"name", "sw" + std::to_string(i)},
                                     {"site", i % 2 ? "lab" : "dc"},
                                     {"clock_role", clock},
                                     {"ports", switch_ports(24, 6)}}});
  }
  auto uplink = [&](int a, int b) {
    if (next_up[a] > 6 || next_up[b] > 6) return;
    s.push_back({"link.add",
                 {{"a", "sw" + std::to_string(a) + "/up" + std::to_string(next_up[a]++)},
                  {"b", "sw" + std::to_string(b) + "/up" + std::to_string(next_up[b]++)},
                  {"kind", "trunk"}}});
  };
  for (int i = 1; i < n_sw; ++i) uplink(i, pick(0, i - 1));
  if (n_sw > 1 && chance(0.5)) {
    int a = pick(0, n_sw - 1), b = pick(0, n_sw - 1);
    if (a != b) uplink(a, b);
  }

  struct Kind {
    const char* kind;
    int count;
    bool dut;
    bool rf;
  };
  std::vector<Kind> kinds = {
      {"cu", 2, true, false},           {"du", 3, true, false},
      {"ru", 4, true, true},            {"ue_emulator", 2, false, true},
      {"du_emulator", 2, false, false}, {"ru_ue_emulator", 2, false, false},
      {"core_emulator", 3, false, false}, {"vst", 2, false, true},
      {"impairment_emulator", 1, false, false}, {"t_gm", 1, false, false},
  };
  const std::vector<std::string> bandwidths = {"20", "40", "100"};
  std::vector<std::string> rf_devices;
  for (const auto& k : kinds) {
    for (int i = 1; i <= k.count; ++i) {
      std::string name = std::string(k.kind) + "-" + std::to_string(i);
      json ports = {"eth0"};
      if (k.rf) {
        ports.push_back("ant0:rf_antenna");
        ports.push_back("rf0:rf_coaxial");
        rf_devices.push_back(name);
      }
      json p = {{"name", name}, {"site", k.rf ? "lab" : "dc"}, {"role", k.dut ? "dut" : "te"},
                {"kind", k.kind}, {"ports", ports}};
      if (k.dut) p["owner"] = "tenant" + std::to_string(pick(1, opt.tenants));
      if (std::string(k.kind) == "du" || std::string(k.kind) == "ru") {
        json bw = json::array();
        for (const auto& b : bandwidths)
          if (chance(0.7)) bw.push_back(b);
        p["features"] = {{"bandwidth_mhz", bw}, {"scs_khz", {"30"}}, {"plane_s_source", {"t_gm"}}};
      }
      s.push_back({"device.register", p});
      if (chance(0.95)) {
        int sw = pick(0, n_sw - 1);
        if (next_port[sw] <= 24)
          s.push_back({"link.add", {{"a", name + "/eth0"},
                                    {"b", "sw" + std::to_string(sw) + "/p" +
                                              std::to_string(next_port[sw]++)},
                                    {"kind", "access"}}});
      }
    }
  }
  // RF cabling between random pairs of radio-side devices.
  std::shuffle(rf_devices.begin(), rf_devices.end(), rng);
  for (std::size_t i = 0; i + 1 < rf_devices.size(); i += 2) {
    const char* port = chance(0.5) ? "/ant0" : "/rf0";
    s.push_back({"link.add", {{"a", rf_devices[i] + port}, {"b", rf_devices[i + 1] + port},
                              {"kind", "analog"}}});
  }
  return s;
}

}  // namespace otic::testing
