#include <iostream>
#include <string>
#include <vector>

#include "otic/api_server.hpp"
#include "otic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto serve = [](const otic::ApiRouter& router, const std::string& host, int port,
                  std::ostream& out) {
    out << "listening on " << host << ":" << port << std::endl;
    return otic::serve(router, host, port) ? 0 : 1;
  };
  return otic::run_cli(args, std::cout, std::cerr, serve);
}
