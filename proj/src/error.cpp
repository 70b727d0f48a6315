#include "mfspin/error.hpp"

namespace mfspin {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::domain: return "domain";
    case ErrorCode::order_exceeded: return "order_exceeded";
    case ErrorCode::side_required: return "side_required";
    case ErrorCode::kink: return "kink";
    case ErrorCode::no_interior_maximum: return "no_interior_maximum";
    case ErrorCode::classification: return "classification";
    case ErrorCode::index: return "index";
    case ErrorCode::empty_window: return "empty_window";
    case ErrorCode::size: return "size";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::unbracketable: return "unbracketable";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mfspin
