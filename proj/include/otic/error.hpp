#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otic {

enum class Errc {
  invalid_argument,
  not_found,
  duplicate,
  exhausted,
  conflict,
  still_referenced,
  medium_mismatch,
  port_occupied,
  template_violation,
  incompatible,
  out_of_order,
  invalid_state,
  no_path,
  corrupt,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::not_found: return "not_found";
    case Errc::duplicate: return "duplicate";
    case Errc::exhausted: return "exhausted";
    case Errc::conflict: return "conflict";
    case Errc::still_referenced: return "still_referenced";
    case Errc::medium_mismatch: return "medium_mismatch";
    case Errc::port_occupied: return "port_occupied";
    case Errc::template_violation: return "template_violation";
    case Errc::incompatible: return "incompatible";
    case Errc::out_of_order: return "out_of_order";
    case Errc::invalid_state: return "invalid_state";
    case Errc::no_path: return "no_path";
    case Errc::corrupt: return "corrupt";
  }
  return "unknown";
}

// Every engine failure is reported through this exception. The code is what
// callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace otic
