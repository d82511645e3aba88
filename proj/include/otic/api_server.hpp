#pragma once

#include <string>

#include <httplib.h>

#include "otic/api.hpp"

namespace otic {

inline std::string bearer_token(const httplib::Request& req) {
  auto h = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (h.rfind(kPrefix, 0) == 0) return h.substr(kPrefix.size());
  return {};
}

// Blocks serving the router until the server is stopped.
inline bool serve(const ApiRouter& router, const std::string& host, int port) {
  httplib::Server server;
  auto handler = [&router](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = router.handle(req.method, req.path, bearer_token(req), req.body);
    res.status = r.status;
    res.set_content(r.body.dump(2) + "\n", "application/json");
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  return server.listen(host, port);
}

}  // namespace otic
