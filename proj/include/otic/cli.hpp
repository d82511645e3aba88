#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "otic/api.hpp"
#include "otic/commands.hpp"
#include "otic/journal.hpp"
#include "otic/switch_config.hpp"

namespace otic {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitIntent = 2,
  kExitIsolation = 3,
  kExitExhausted = 4,
};

inline int exit_code_for(const VerificationReport& r) {
  if (!r.isolated()) return kExitIsolation;
  if (!r.intent_passed()) return kExitIntent;
  return kExitOk;
}

// Starts the HTTP service; provided by the binary so that the library does not
// pull in the HTTP server for every user of the CLI.
using ServeHook = std::function<int(const ApiRouter&, const std::string& host, int port,
                                    std::ostream& out)>;

namespace cli_detail {

inline std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string vids_str(const nlohmann::json& vids) {
  std::vector<std::string> parts;
  for (const auto& v : vids) parts.push_back(std::to_string(v.get<int>()));
  return parts.empty() ? "-" : join(parts, ",");
}

// "key=v1,v2" pairs into a feature object.
inline nlohmann::json features_from(const std::vector<std::string>& items) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::invalid_argument, "feature '" + item + "' is not key=value[,value]");
    auto& arr = j[item.substr(0, eq)];
    if (arr.is_null()) arr = nlohmann::json::array();
    std::stringstream ss(item.substr(eq + 1));
    std::string v;
    while (std::getline(ss, v, ','))
      if (!v.empty()) arr.push_back(v);
  }
  return j;
}

inline void print_tenant(std::ostream& out, const nlohmann::json& t) {
  out << "tenant " << t.at("name").get<std::string>() << " (id " << t.at("id") << "): "
      << (t.at("block").is_null() ? "no block" : t.at("block").get<std::string>()) << "\n";
  if (t.contains("carving"))
    for (const char* k : {"management", "oob", "vpn"})
      out << "  " << k << " " << t.at("carving").at(k).get<std::string>() << "\n";
  if (!t.at("active_sessions").empty()) {
    std::vector<std::string> s = t.at("active_sessions").get<std::vector<std::string>>();
    out << "  sessions " << join(s, ", ") << "\n";
  }
}

inline void print_session(std::ostream& out, const Engine& e, const nlohmann::json& s) {
  out << s.at("name").get<std::string>() << " " << s.at("kind").get<std::string>() << " ["
      << s.at("state").get<std::string>() << "]\n";
  std::vector<std::string> names;
  for (const auto& d : s.at("participants"))
    names.push_back(e.inventory().device(d.get<DeviceId>()).name);
  out << "  participants " << join(names, ", ") << "\n";
  const auto& a = s.at("allocations");
  for (const auto& v : a.at("vids")) {
    out << "  vid " << v.at("vid") << " " << v.at("interface").get<std::string>();
    if (!v.at("plane").is_null()) out << ":" << v.at("plane").get<std::string>();
    out << "\n";
  }
  for (const auto& [k, p] : a.at("subnets").items())
    out << "  subnet " << k << " " << p.get<std::string>() << "\n";
}

inline void print_report(std::ostream& out, const nlohmann::json& r) {
  for (const auto& e : r.at("intent_results")) {
    out << (e.at("passed").get<bool>() ? "  ok   " : "  FAIL ") << e.at("a").get<std::string>()
        << " -- " << e.at("b").get<std::string>();
    if (e.contains("interface")) out << " " << e.at("interface").get<std::string>();
    else out << " analog";
    if (e.contains("vids")) out << " vid " << vids_str(e.at("vids"));
    out << "\n";
  }
  for (const auto& v : r.at("isolation_violations")) out << "  VIOLATION " << v.dump() << "\n";
  out << (r.at("passed").get<bool>() ? "passed" : "failed") << "\n";
}

}  // namespace cli_detail

// Runs one oticctl invocation. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   ServeHook serve_hook = nullptr) {
  using nlohmann::json;
  namespace cd = cli_detail;

  CLI::App app{"OTIC lab orchestrator", "oticctl"};
  app.require_subcommand(1);
  std::string state_dir;
  if (const char* env = std::getenv("OTIC_STATE_DIR")) state_dir = env;
  if (state_dir.empty()) state_dir = "otic-state";
  bool as_json = false;
  app.add_option("--state-dir", state_dir, "State directory (journal and snapshots)");
  app.add_flag("--json", as_json, "Machine-readable output");

  std::function<int()> action;
  std::unique_ptr<Orchestrator> orch;
  std::optional<EngineConfig> new_config;

  auto open = [&]() -> Orchestrator& {
    if (!orch) orch = Orchestrator::open(state_dir, new_config);
    return *orch;
  };
  auto emit = [&](const json& doc, const std::function<void()>& human) {
    if (as_json) out << doc.dump(2) << "\n";
    else human();
  };
  auto exec = [&](const std::string& cmd, const json& payload) {
    return open().execute(cmd, payload).result;
  };

  // plan
  auto* plan = app.add_subcommand("plan", "Address plan")->require_subcommand(1);
  std::string cidr;
  int vid_first = kFirstVid, vid_last = kLastVid;
  auto* plan_init = plan->add_subcommand("init", "Initialize the /16 address plan");
  plan_init->add_option("cidr", cidr, "Base prefix, e.g. 10.77.0.0/16")->required();
  plan_init->add_option("--vid-first", vid_first, "First VID the orchestrator manages")
      ->check(CLI::Range(int{kFirstVid}, int{kLastVid}));
  plan_init->add_option("--vid-last", vid_last, "Last VID the orchestrator manages")
      ->check(CLI::Range(int{kFirstVid}, int{kLastVid}));
  plan_init->callback([&] {
    action = [&] {
      new_config = EngineConfig{static_cast<Vid>(vid_first), static_cast<Vid>(vid_last)};
      json r = exec("plan.init", {{"base", cidr}});
      emit(r, [&] {
        out << "plan " << r.at("base").get<std::string>() << "\n";
        for (const char* k : {"oob", "management", "services"})
          out << "  " << k << " " << r.at("fixed_nets").at(k).get<std::string>() << "\n";
        for (const auto& d : r.at("data_nets"))
          out << "  " << d.at("interface").get<std::string>() << " "
              << d.at("prefix").get<std::string>()
              << (d.at("routable").get<bool>() ? " routable" : " non-routable") << "\n";
      });
      return kExitOk;
    };
  });

  // tenant
  auto* tenant = app.add_subcommand("tenant", "Tenants")->require_subcommand(1);
  std::string tenant_name;
  auto* tenant_create = tenant->add_subcommand("create", "Create a tenant and allocate its /24");
  tenant_create->add_option("name", tenant_name)->required();
  tenant_create->callback([&] {
    action = [&] {
      json r = exec("tenant.create", {{"name", tenant_name}});
      emit(r, [&] { cd::print_tenant(out, r); });
      return kExitOk;
    };
  });
  auto* tenant_delete = tenant->add_subcommand("delete", "Delete a tenant and release its /24");
  tenant_delete->add_option("name", tenant_name)->required();
  tenant_delete->callback([&] {
    action = [&] {
      json r = exec("tenant.delete", {{"tenant", tenant_name}});
      emit(r, [&] { out << "deleted tenant " << r.at("name").get<std::string>() << "\n"; });
      return kExitOk;
    };
  });
  auto* tenant_show = tenant->add_subcommand("show", "Show one tenant or all");
  tenant_show->add_option("name", tenant_name);
  tenant_show->callback([&] {
    action = [&] {
      auto e = open().snapshot();
      json arr = json::array();
      if (!tenant_name.empty()) arr.push_back(tenant_to_json(*e, resolve_tenant(*e, tenant_name)));
      else
        for (const auto& [id, t] : e->tenants()) arr.push_back(tenant_to_json(*e, id));
      json doc = tenant_name.empty() ? json{{"version", 1}, {"tenants", arr}} : arr.at(0);
      emit(doc, [&] {
        for (const auto& t : arr) cd::print_tenant(out, t);
      });
      return kExitOk;
    };
  });

  // site / switch / device
  std::string node_name, site_ref, kind_str, role_str, owner_ref, model = "generic",
                                                                  clock_role = "none";
  std::vector<std::string> port_specs, features;
  auto* site = app.add_subcommand("site", "Sites")->require_subcommand(1);
  auto* site_register = site->add_subcommand("register", "Register a site");
  site_register->add_option("name", node_name)->required();
  site_register->add_option("--kind", kind_str, "data_center, lab, anechoic_chamber, outdoor");
  site_register->callback([&] {
    action = [&] {
      json p = {{"name", node_name}};
      if (!kind_str.empty()) p["kind"] = kind_str;
      json r = exec("site.register", p);
      emit(r, [&] { out << "site " << node_name << " (id " << r.at("id") << ")\n"; });
      return kExitOk;
    };
  });

  auto* sw = app.add_subcommand("switch", "Switches")->require_subcommand(1);
  auto* sw_register = sw->add_subcommand("register", "Register a switch");
  sw_register->add_option("name", node_name)->required();
  sw_register->add_option("--site", site_ref)->required();
  sw_register->add_option("--model", model);
  sw_register->add_option("--clock-role", clock_role, "none, t_bc, t_gm");
  sw_register->add_option("--port", port_specs, "name[:medium[:gbps]]")->required();
  sw_register->callback([&] {
    action = [&] {
      json r = exec("switch.register", {{"name", node_name},
                                        {"site", site_ref},
                                        {"model", model},
                                        {"clock_role", clock_role},
                                        {"ports", port_specs}});
      emit(r, [&] {
        out << "switch " << node_name << " (id " << r.at("id") << "), " << port_specs.size()
            << " ports\n";
      });
      return kExitOk;
    };
  });

  auto* device = app.add_subcommand("device", "Devices and cabling")->require_subcommand(1);
  auto* dev_register = device->add_subcommand("register", "Register a DUT, TE or service device");
  dev_register->add_option("name", node_name)->required();
  dev_register->add_option("--site", site_ref)->required();
  dev_register->add_option("--role", role_str, "dut, te, service")->required();
  dev_register->add_option("--kind", kind_str, "cu, du, ru, du_emulator, vst, ...")->required();
  dev_register->add_option("--owner", owner_ref, "Owning tenant");
  dev_register->add_option("--port", port_specs, "name[:medium[:gbps]]")->required();
  dev_register->add_option("--feature", features, "key=v1,v2");
  dev_register->callback([&] {
    action = [&] {
      json p = {{"name", node_name},       {"site", site_ref},
                {"role", role_str},        {"kind", kind_str},
                {"ports", port_specs},     {"features", cd::features_from(features)}};
      if (!owner_ref.empty()) p["owner"] = owner_ref;
      json r = exec("device.register", p);
      emit(r, [&] {
        out << "device " << node_name << " (id " << r.at("id") << ")\n";
        for (const auto& w : r.at("warnings")) err << "warning: " << w.get<std::string>() << "\n";
      });
      return kExitOk;
    };
  });
  std::string port_a, port_b, link_kind = "access";
  auto* dev_link = device->add_subcommand("link", "Cable two ports (Node/port)");
  dev_link->add_option("a", port_a)->required();
  dev_link->add_option("b", port_b)->required();
  dev_link->add_option("--kind", link_kind, "access, trunk, analog, oob");
  dev_link->callback([&] {
    action = [&] {
      json r = exec("link.add", {{"a", port_a}, {"b", port_b}, {"kind", link_kind}});
      emit(r, [&] {
        out << "link " << r.at("id") << ": " << r.at("a").get<std::string>() << " -- "
            << r.at("b").get<std::string>() << " (" << r.at("kind").get<std::string>() << ")\n";
      });
      return kExitOk;
    };
  });

  // session
  auto* session = app.add_subcommand("session", "Test sessions")->require_subcommand(1);
  std::string session_ref, analog_mode, splane, plane_str, verdict;
  std::vector<std::string> session_tenants, session_devices, impairments, wg5;
  bool o1_overlay = false, split_planes = false, shared = false;
  auto* s_plan = session->add_subcommand("plan", "Compile a session topology (draft)");
  s_plan->add_option("--kind", kind_str, "ru_conformance, du_conformance, wg4_iot, wg5_iot, e2e, e2e_mobility")
      ->required();
  s_plan->add_option("--tenant", session_tenants);
  s_plan->add_option("--device", session_devices)->required();
  s_plan->add_option("--analog-mode", analog_mode, "conducted or radiated");
  s_plan->add_option("--splane", splane, "emulator, t_gm, du, ru, external");
  s_plan->add_option("--impair", impairments, "INTERFACE=delay-profile");
  s_plan->add_option("--wg5", wg5, "Extra WG5 interfaces: E1, X2, Xn");
  s_plan->add_flag("--o1-overlay", o1_overlay);
  s_plan->add_flag("--split-cu-planes", split_planes);
  s_plan->add_flag("--shared", shared, "Grant the shared /26s (Plugfest mode)");
  s_plan->callback([&] {
    action = [&] {
      json options = {{"o1_overlay", o1_overlay}, {"split_cu_planes", split_planes}, {"shared", shared},
                      {"wg5_interfaces", wg5}};
      if (!analog_mode.empty()) options["analog_mode"] = analog_mode;
      if (!splane.empty()) options["splane"] = splane;
      json imp = json::object();
      for (const auto& i : impairments) {
        auto eq = i.find('=');
        if (eq == std::string::npos)
          throw Error(Errc::invalid_argument, "impairment '" + i + "' is not INTERFACE=profile");
        imp[i.substr(0, eq)] = i.substr(eq + 1);
      }
      options["impairments"] = imp;
      json r = exec("session.plan", {{"kind", kind_str},
                                     {"tenants", session_tenants},
                                     {"participants", session_devices},
                                     {"options", options}});
      emit(r, [&] {
        out << r.at("name").get<std::string>() << " planned (" << kind_str << "), "
            << r.at("topology").at("edges").size() << " digital and "
            << r.at("topology").at("analog").size() << " analog edges\n";
      });
      return kExitOk;
    };
  });
  auto session_cmd = [&](const char* name, const char* help) {
    auto* c = session->add_subcommand(name, help);
    c->add_option("session", session_ref, "s<N> or N")->required();
    return c;
  };
  session_cmd("provision", "Allocate VIDs, subnets and port configs")->callback([&] {
    action = [&] {
      json r = exec("session.provision", {{"session", session_ref}});
      emit(r, [&] { cd::print_session(out, *open().snapshot(), r); });
      return kExitOk;
    };
  });
  session_cmd("verify", "Check intent and isolation on the fabric")->callback([&] {
    action = [&] {
      json r = exec("session.verify", {{"session", session_ref}});
      emit(r, [&] {
        out << r.at("session").get<std::string>() << " " << r.at("state").get<std::string>() << "\n";
        cd::print_report(out, r.at("report"));
      });
      const auto& rep = r.at("report");
      if (!rep.at("isolation_violations").empty()) return int{kExitIsolation};
      if (!rep.at("intent_passed").get<bool>()) return int{kExitIntent};
      return int{kExitOk};
    };
  });
  session_cmd("teardown", "Release everything the session holds")->callback([&] {
    action = [&] {
      json r = exec("session.teardown", {{"session", session_ref}});
      emit(r, [&] { out << r.at("session").get<std::string>() << " torn down\n"; });
      return kExitOk;
    };
  });
  auto* s_show = session->add_subcommand("show", "Show one session or all");
  s_show->add_option("session", session_ref);
  s_show->callback([&] {
    action = [&] {
      auto e = open().snapshot();
      json arr = json::array();
      if (!session_ref.empty()) arr.push_back(session_doc(*e, resolve_session(*e, session_ref)));
      else
        for (const auto& [id, s] : e->sessions()) arr.push_back(session_doc(*e, id));
      json doc = session_ref.empty() ? json{{"version", 1}, {"sessions", arr}} : arr.at(0);
      emit(doc, [&] {
        for (const auto& s : arr) cd::print_session(out, *e, s);
      });
      return kExitOk;
    };
  });
  auto* s_advance = session_cmd("advance", "Record a test-plane result (M, S, CU, performance)");
  s_advance->add_option("plane", plane_str, "m_plane, s_plane, cu_plane, performance")->required();
  s_advance->add_option("result", verdict, "pass or fail")
      ->required()
      ->check(CLI::IsMember({"pass", "fail"}));
  s_advance->callback([&] {
    action = [&] {
      json r = exec("session.advance",
                    {{"session", session_ref}, {"plane", plane_str}, {"passed", verdict == "pass"}});
      emit(r, [&] { out << r.at("checklist").dump() << "\n"; });
      return kExitOk;
    };
  });

  // port overrides
  std::string port_ref, port_mode;
  std::vector<int> port_vids;
  auto* port = app.add_subcommand("port", "Manual switch-port overrides")->require_subcommand(1);
  auto* p_override = port->add_subcommand("override", "Force a port configuration");
  p_override->add_option("port", port_ref, "Switch/port")->required();
  p_override->add_option("--mode", port_mode, "access, trunk, shutdown")->required();
  p_override->add_option("--vid", port_vids);
  p_override->callback([&] {
    action = [&] {
      json r = exec("port.override", {{"port", port_ref}, {"mode", port_mode}, {"vids", port_vids}});
      emit(r, [&] {
        out << r.at("port").get<std::string>() << " " << r.at("mode").get<std::string>() << " "
            << cd::vids_str(r.at("vids")) << "\n";
      });
      return kExitOk;
    };
  });
  auto* p_clear = port->add_subcommand("clear", "Remove an override");
  p_clear->add_option("port", port_ref)->required();
  p_clear->callback([&] {
    action = [&] {
      json r = exec("port.clear_override", {{"port", port_ref}});
      emit(r, [&] { out << r.at("port").get<std::string>() << " override cleared\n"; });
      return kExitOk;
    };
  });

  // fabric
  std::string export_dir;
  auto* fabric = app.add_subcommand("fabric", "Fabric checks and switch configs")->require_subcommand(1);
  fabric->add_subcommand("check", "Intent for every live session plus facility isolation")
      ->callback([&] {
        action = [&] {
          auto e = open().snapshot();
          VerificationReport r = e->check_all();
          json doc = report_to_json(r, &e->inventory());
          emit(doc, [&] { cd::print_report(out, doc); });
          return exit_code_for(r);
        };
      });
  auto* f_export = fabric->add_subcommand("export", "Render per-switch config documents");
  f_export->add_option("--out", export_dir, "Write one <switch>.json per switch here");
  f_export->callback([&] {
    action = [&] {
      auto docs = export_switch_configs(*open().snapshot());
      if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        for (const auto& d : docs) write_json_file(std::filesystem::path(export_dir) / (d.name + ".json"), d.to_json());
      }
      json doc = configs_to_json(docs);
      emit(doc, [&] {
        for (const auto& d : docs) {
          out << d.name << "\n";
          for (const auto& p : d.ports) {
            out << "  " << p.name << " " << name_of(p.mode);
            if (!p.vids.empty()) out << " " << cd::vids_str(p.vids);
            if (p.oob) out << " oob";
            out << "\n";
          }
        }
      });
      return kExitOk;
    };
  });

  // state
  bool no_snapshot = false;
  auto* state = app.add_subcommand("state", "Persistence")->require_subcommand(1);
  state->add_subcommand("snapshot", "Write a full-state snapshot now")->callback([&] {
    action = [&] {
      auto path = open().write_snapshot();
      json doc = {{"snapshot", path.string()}, {"seq", orch->seq()},
                  {"state_hash", hex64(orch->snapshot()->state_hash())}};
      emit(doc, [&] { out << "snapshot at seq " << orch->seq() << ": " << path.string() << "\n"; });
      return kExitOk;
    };
  });
  auto* s_replay = state->add_subcommand("replay", "Replay the journal and report the state hash");
  s_replay->add_flag("--no-snapshot", no_snapshot, "Replay from empty state");
  s_replay->callback([&] {
    action = [&] {
      ReplayResult r = replay(state_dir, !no_snapshot);
      json doc = {{"last_seq", r.last_seq},
                  {"state_hash", hex64(r.engine.state_hash())},
                  {"dropped_partial_tail", r.dropped_partial_tail},
                  {"snapshot_seq", r.snapshot_seq ? json(*r.snapshot_seq) : json(nullptr)}};
      if (r.corrupt) doc["corrupt"] = {{"seq", r.corrupt->seq}, {"reason", r.corrupt->reason}};
      emit(doc, [&] {
        out << "replayed " << r.last_seq << " entries, state " << hex64(r.engine.state_hash()) << "\n";
        if (r.dropped_partial_tail) out << "dropped a torn final entry\n";
        if (r.corrupt)
          err << "corrupt journal entry " << r.corrupt->seq << ": " << r.corrupt->reason << "\n";
      });
      return r.corrupt ? int{kExitError} : int{kExitOk};
    };
  });

  // inventory
  std::string inv_file;
  auto* inventory = app.add_subcommand("inventory", "Inventory documents")->require_subcommand(1);
  auto* inv_import = inventory->add_subcommand("import", "Load an inventory document");
  inv_import->add_option("file", inv_file)->required()->check(CLI::ExistingFile);
  inv_import->callback([&] {
    action = [&] {
      json r = exec("inventory.import", {{"inventory", read_json_file(inv_file)}});
      emit(r, [&] {
        out << "imported " << r.at("switches") << " switches, " << r.at("devices")
            << " devices, " << r.at("links") << " links\n";
      });
      return kExitOk;
    };
  });
  inventory->add_subcommand("export", "Print the inventory document")->callback([&] {
    action = [&] {
      out << open().snapshot()->inventory().to_json().dump(2) << "\n";
      return kExitOk;
    };
  });

  // serve
  std::string host = "127.0.0.1", tokens_file;
  int http_port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", http_port);
  serve_cmd->add_option("--tokens", tokens_file, "Token map JSON")->required()->check(CLI::ExistingFile);
  serve_cmd->callback([&] {
    action = [&] {
      if (!serve_hook) throw Error(Errc::invalid_state, "this build has no HTTP server");
      ApiRouter router(open(), TokenMap::load(tokens_file));
      return serve_hook(router, host, http_port, out);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  auto fail = [&](const std::string& code, const std::string& msg, int exit_code) {
    if (as_json) out << json{{"error", code}, {"message", msg}}.dump(2) << "\n";
    err << "error: " << msg << "\n";
    return exit_code;
  };
  try {
    return action ? action() : int{kExitError};
  } catch (const Error& e) {
    return fail(std::string(to_string(e.code())), e.what(),
                e.code() == Errc::exhausted ? kExitExhausted : kExitError);
  } catch (const std::exception& e) {
    return fail("error", e.what(), kExitError);
  }
}

}  // namespace otic
