#pragma once

#include <stdexcept>
#include <string>

namespace lampk {

// Error categories map 1:1 onto the CLI exit codes.
enum class ErrorKind {
  Parse = 2,
  Unsupported = 3,
  CapExceeded = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace lampk
