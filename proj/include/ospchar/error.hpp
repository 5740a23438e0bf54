#pragma once

#include <stdexcept>
#include <string>

namespace ospc {

enum class ErrorCode {
  InvalidArgument = 1,
  Domain = 2,  // mathematically undefined: critical level, non-admissible pair, ...
  Limit = 3,   // rank, truncation or coordinate range exceeds configured caps
  IdentityFailure = 4,
  Io = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace ospc
