#pragma once

#include <stdexcept>
#include <string>

namespace mfspin {

enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  order_exceeded = 3,
  side_required = 4,
  kink = 5,
  no_interior_maximum = 6,
  classification = 7,
  index = 8,
  empty_window = 9,
  size = 10,
  hypothesis = 11,
  unbracketable = 12,
  unsupported = 13,
  io = 14,
};

const char* error_code_name(ErrorCode code) noexcept;

// All library failures are reported through this type; the code drives the
// C API status and the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace mfspin
