#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/commands.hpp"
#include "otic/journal.hpp"
#include "otic/switch_config.hpp"

namespace otic {

// Static bearer tokens: any number of admin tokens plus one per tenant name.
struct TokenMap {
  std::set<std::string> admin;
  std::map<std::string, std::string> tenants;  // tenant name -> token

  static TokenMap from_json(const nlohmann::json& j) {
    TokenMap m;
    if (j.contains("admin")) {
      const auto& a = j.at("admin");
      if (a.is_string()) m.admin.insert(a.get<std::string>());
      else m.admin = a.get<std::set<std::string>>();
    }
    if (j.contains("tenants")) m.tenants = j.at("tenants").get<std::map<std::string, std::string>>();
    return m;
  }

  static TokenMap load(const std::filesystem::path& p) { return from_json(read_json_file(p)); }
};

struct Principal {
  bool admin = false;
  std::string tenant;  // set for tenant tokens
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

inline int http_status(Errc c) {
  switch (c) {
    case Errc::not_found:
      return 404;
    case Errc::invalid_argument:
      return 400;
    case Errc::template_violation:
    case Errc::incompatible:
    case Errc::medium_mismatch:
    case Errc::out_of_order:
      return 422;
    case Errc::duplicate:
    case Errc::exhausted:
    case Errc::conflict:
    case Errc::still_referenced:
    case Errc::port_occupied:
    case Errc::invalid_state:
    case Errc::no_path:
      return 409;
    case Errc::corrupt:
      return 500;
  }
  return 500;
}

// Maps HTTP requests onto orchestrator commands and enforces tenant scoping:
// a tenant token only sees and changes its own tenant, devices and sessions.
class ApiRouter {
 public:
  ApiRouter(Orchestrator& orch, TokenMap tokens) : orch_(orch), tokens_(std::move(tokens)) {}

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view token,
                     std::string_view body) const {
    auto who = authenticate(token);
    if (!who) return error(401, "unauthorized", "missing or unknown bearer token");
    nlohmann::json payload = nlohmann::json::object();
    if (!body.empty()) {
      try {
        payload = nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception&) {
        return error(400, "invalid_argument", "request body is not JSON");
      }
      if (!payload.is_object()) return error(400, "invalid_argument", "request body must be an object");
    }
    auto parts = split(path);
    try {
      return route(*who, method, parts, payload);
    } catch (const Error& e) {
      ApiResponse r = error(http_status(e.code()), std::string(to_string(e.code())), e.what());
      if (method == "POST") {
        // Commands run on a private copy, so a failed mutation changed nothing.
        r.body["rolled_back"] = true;
        r.body["state_hash"] = hex64(orch_.snapshot()->state_hash());
      }
      return r;
    } catch (const nlohmann::json::exception& e) {
      return error(400, "invalid_argument", e.what());
    }
  }

  std::optional<Principal> authenticate(std::string_view token) const {
    if (token.empty()) return std::nullopt;
    if (tokens_.admin.count(std::string(token))) return Principal{true, {}};
    for (const auto& [name, t] : tokens_.tenants)
      if (t == token) return Principal{false, name};
    return std::nullopt;
  }

 private:
  static std::vector<std::string> split(std::string_view path) {
    std::vector<std::string> out;
    auto q = path.find('?');
    if (q != std::string_view::npos) path = path.substr(0, q);
    std::size_t i = 0;
    while (i < path.size()) {
      while (i < path.size() && path[i] == '/') ++i;
      std::size_t j = path.find('/', i);
      if (j == std::string_view::npos) j = path.size();
      if (j > i) out.emplace_back(path.substr(i, j - i));
      i = j;
    }
    return out;
  }

  static ApiResponse error(int status, std::string code, std::string message) {
    return {status, {{"error", std::move(code)}, {"message", std::move(message)}}};
  }

  static ApiResponse forbidden() {
    return error(403, "forbidden", "resource belongs to another tenant");
  }

  static ApiResponse admin_only() { return error(403, "forbidden", "admin token required"); }

  // The tenant a principal acts for, if it exists in the engine yet.
  static std::optional<TenantId> own_tenant(const Engine& e, const Principal& who) {
    if (who.admin) return std::nullopt;
    return e.find_tenant(who.tenant);
  }

  static bool may_see_session(const Engine& e, const Principal& who, SessionId id) {
    if (who.admin) return true;
    auto mine = own_tenant(e, who);
    const Session& s = e.session(id);
    return mine && s.tenants.count(*mine);
  }

  ApiResponse run(const std::string& command, const nlohmann::json& payload, int status) const {
    auto out = orch_.execute(command, payload);
    nlohmann::json body = out.result;
    if (body.is_object()) {
      body["seq"] = out.seq;
      body["state_hash"] = out.state_hash;
    }
    return {status, body};
  }

  ApiResponse route(const Principal& who, std::string_view method,
                    const std::vector<std::string>& parts, nlohmann::json payload) const {
    auto engine = orch_.snapshot();
    const Engine& e = *engine;
    auto n = parts.size();
    auto not_found = [] { return error(404, "not_found", "no such route"); };

    if (n >= 1 && parts[0] == "tenants") {
      if (n == 1 && method == "POST") {
        if (!who.admin) return admin_only();
        return run("tenant.create", payload, 201);
      }
      if (n == 1 && method == "GET") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [id, t] : e.tenants())
          if (who.admin || t.name == who.tenant) arr.push_back(tenant_to_json(e, id));
        return {200, {{"version", 1}, {"tenants", arr}}};
      }
      if (n == 2 && method == "GET") {
        if (!who.admin) {
          auto mine = own_tenant(e, who);
          if (!mine) return forbidden();
          std::optional<TenantId> asked;
          try {
            asked = resolve_tenant(e, parts[1]);
          } catch (const Error&) {
            return forbidden();
          }
          if (*asked != *mine) return forbidden();
        }
        return {200, tenant_to_json(e, resolve_tenant(e, parts[1]))};
      }
      return not_found();
    }

    if (n == 1 && parts[0] == "devices" && method == "POST") {
      if (!who.admin) {
        auto mine = own_tenant(e, who);
        if (!mine) return forbidden();
        if (!payload.contains("owner") || payload.at("owner").is_null()) {
          payload["owner"] = mine->value;
        } else if (resolve_tenant(e, payload.at("owner")) != *mine) {
          return forbidden();
        }
      }
      return run("device.register", payload, 201);
    }

    if (n == 1 && parts[0] == "links" && method == "POST") {
      if (!who.admin) return admin_only();
      return run("link.add", payload, 201);
    }

    if (n >= 1 && parts[0] == "sessions") {
      if (n == 1 && method == "POST") {
        if (!who.admin) {
          auto mine = own_tenant(e, who);
          if (!mine) return forbidden();
          if (!payload.contains("tenants")) payload["tenants"] = nlohmann::json::array({mine->value});
          for (const auto& t : payload.at("tenants"))
            if (resolve_tenant(e, t) != *mine) return forbidden();
        }
        return run("session.plan", payload, 201);
      }
      if (n >= 2) {
        SessionId id;
        try {
          id = resolve_session(e, parts[1]);
        } catch (const Error&) {
          if (!who.admin) return forbidden();
          throw;
        }
        if (!may_see_session(e, who, id)) return forbidden();
        if (n == 2 && method == "GET") return {200, session_doc(e, id)};
        if (n == 3 && method == "POST") {
          nlohmann::json p = {{"session", id.value}};
          if (parts[2] == "provision") return run("session.provision", p, 200);
          if (parts[2] == "verify") return run("session.verify", p, 200);
          if (parts[2] == "teardown") return run("session.teardown", p, 200);
          if (parts[2] == "advance") {
            p["plane"] = payload.value("plane", std::string());
            p["passed"] = payload.value("passed", false);
            return run("session.advance", p, 200);
          }
        }
      }
      return not_found();
    }

    if (n == 2 && parts[0] == "fabric" && parts[1] == "report" && method == "GET") {
      VerificationReport full = e.check_all();
      if (who.admin) return {200, report_to_json(full, &e.inventory())};
      auto mine = own_tenant(e, who);
      if (!mine) return forbidden();
      // A tenant sees only findings that involve itself.
      VerificationReport own;
      for (const auto& [sid, s] : e.sessions())
        if (holds_resources(s.state) && s.tenants.count(*mine))
          own.merge(verify_intent(e.fabric(), s.topology, s.allocations.vids));
      for (const auto& v : full.isolation_violations)
        if (v.tenant_a == *mine || v.tenant_b == *mine) own.isolation_violations.push_back(v);
      return {200, report_to_json(own, &e.inventory())};
    }

    if (n == 1 && parts[0] == "configs" && method == "GET") {
      if (!who.admin) return admin_only();
      return {200, configs_to_json(export_switch_configs(e))};
    }

    return not_found();
  }

  Orchestrator& orch_;
  TokenMap tokens_;
};

}  // namespace otic
