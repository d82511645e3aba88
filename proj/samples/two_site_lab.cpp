// Three tenants testing in parallel on a two-site lab: an end-to-end run, a
// DU conformance run and a radiated RU conformance run. Builds the lab through
// the same commands the CLI journals, provisions and verifies every session,
// and prints what each one was given.

#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/commands.hpp"
#include "otic/switch_config.hpp"

using nlohmann::json;

namespace {

void run(otic::Engine& e, const std::string& cmd, const json& payload) {
  otic::apply_command(e, cmd, payload);
}

json ports(int access, int uplinks) {
  json out = json::array();
  for (int i = 1; i <= access; ++i) out.push_back("p" + std::to_string(i) + ":ethernet:25");
  for (int i = 1; i <= uplinks; ++i) out.push_back("up" + std::to_string(i) + ":ethernet:100");
  return out;
}

void build_lab(otic::Engine& e) {
  run(e, "plan.init", {{"base", "10.77.0.0/16"}});
  for (const char* t : {"tenant1", "tenant2", "tenant3"}) run(e, "tenant.create", {{"name", t}});
  run(e, "site.register", {{"name", "dc"}, {"kind", "data_center"}});
  run(e, "site.register", {{"name", "lab"}, {"kind", "lab"}});
  run(e, "switch.register", {{"name", "sw-dc"}, {"site", "dc"}, {"model", "S5248F-ON"},
                             {"clock_role", "t_bc"}, {"ports", ports(12, 1)}});
  run(e, "switch.register", {{"name", "sw-lab"}, {"site", "lab"}, {"model", "S5232F-ON"},
                             {"clock_role", "t_bc"}, {"ports", ports(12, 1)}});
  run(e, "link.add", {{"a", "sw-dc/up1"}, {"b", "sw-lab/up1"}, {"kind", "trunk"}});

  struct Dev {
    const char* name;
    const char* site;
    const char* owner;
    const char* kind;
    const char* rf;
  };
  const Dev devs[] = {
      {"CU1", "dc", "tenant1", "cu", nullptr},
      {"DU1", "dc", "tenant1", "du", nullptr},
      {"DU2", "dc", "tenant2", "du", nullptr},
      {"CoreEmu1", "dc", nullptr, "core_emulator", nullptr},
      {"CoreEmu2", "dc", nullptr, "core_emulator", nullptr},
      {"DUEmu", "dc", nullptr, "du_emulator", nullptr},
      {"RUEmu", "dc", nullptr, "ru_ue_emulator", nullptr},
      {"RU1", "lab", "tenant3", "ru", "ant0:rf_antenna"},
      {"RU-ref", "lab", nullptr, "ru", "rf0:rf_coaxial"},
      {"UEEmu", "lab", nullptr, "ue_emulator", "rf0:rf_coaxial"},
      {"VST", "lab", nullptr, "vst", "ant0:rf_antenna"},
  };
  int next_port[2] = {1, 1};
  for (const Dev& d : devs) {
    json p = {{"name", d.name}, {"site", d.site}, {"kind", d.kind},
              {"role", d.owner ? "dut" : "te"}, {"ports", {"eth0"}}};
    if (d.owner) p["owner"] = d.owner;
    if (d.rf) p["ports"].push_back(d.rf);
    run(e, "device.register", p);
    bool dc = std::string(d.site) == "dc";
    std::string sw = std::string(dc ? "sw-dc/p" : "sw-lab/p") + std::to_string(next_port[dc]++);
    run(e, "link.add", {{"a", std::string(d.name) + "/eth0"}, {"b", sw}, {"kind", "access"}});
  }
  run(e, "link.add", {{"a", "RU1/ant0"}, {"b", "VST/ant0"}, {"kind", "analog"}});
  run(e, "link.add", {{"a", "RU-ref/rf0"}, {"b", "UEEmu/rf0"}, {"kind", "analog"}});
}

}  // namespace

int main() {
  otic::Engine engine;
  build_lab(engine);

  run(engine, "session.plan", {{"kind", "e2e"}, {"tenants", {"tenant1"}},
                               {"participants", {"UEEmu", "RU-ref", "DU1", "CU1", "CoreEmu1"}}});
  run(engine, "session.plan", {{"kind", "du_conformance"}, {"tenants", {"tenant2"}},
                               {"participants", {"DU2", "RUEmu", "CoreEmu2"}}});
  run(engine, "session.plan", {{"kind", "ru_conformance"}, {"tenants", {"tenant3"}},
                               {"participants", {"RU1", "DUEmu", "VST"}},
                               {"options", {{"analog_mode", "radiated"}}}});

  bool all_passed = true;
  std::vector<otic::SessionId> ids;
  for (const auto& [id, s] : engine.sessions()) ids.push_back(id);
  for (otic::SessionId id : ids) {
    run(engine, "session.provision", {{"session", id.value}});
    json v = otic::apply_command(engine, "session.verify", {{"session", id.value}});
    const otic::Session& done = engine.session(id);
    std::cout << otic::session_label(id) << "  " << otic::name_of(done.kind) << "  "
              << otic::name_of(done.state) << "\n";
    for (const auto& [channel, vid] : done.allocations.vids) {
      std::cout << "    vlan " << vid << "  " << otic::name_of(channel.first);
      if (channel.second) std::cout << ":" << otic::name_of(*channel.second);
      std::cout << "\n";
    }
    for (const auto& [iface, prefix] : done.allocations.subnets)
      std::cout << "    subnet " << prefix << "  " << otic::name_of(iface) << "\n";
    all_passed = all_passed && v.at("passed").get<bool>();
  }

  auto report = engine.check_all();
  std::cout << "isolation violations: " << report.isolation_violations.size() << "\n";

  for (const auto& doc : otic::export_switch_configs(engine)) {
    if (doc.name != "sw-lab") continue;
    std::cout << "sw-lab running config:\n";
    for (const auto& p : doc.ports)
      if (p.mode != otic::PortMode::shutdown)
        std::cout << "    " << p.name << "  " << otic::name_of(p.mode) << "  " << json(p.vids).dump() << "\n";
  }
  return all_passed && report.passed() ? 0 : 1;
}
