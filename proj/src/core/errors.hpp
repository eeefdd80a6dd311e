// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

enum class ErrorCode {
  InvalidArgument,
  UnknownName,
  UnsupportedGrid,
  CapExceeded,
  SingularSystem,
  NoConvergence,
  DimensionMismatch,
  Io,
  Internal,
};

/// Single exception type for the library; the code maps 1:1 onto the
/// C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw_error(code, what);
}

}  // namespace birkhoff
