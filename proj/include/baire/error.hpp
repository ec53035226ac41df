#pragma once

#include <stdexcept>
#include <string>

namespace baire {

// Exit-code contract: 0 success, 1 numeric/precondition failure, 2 usage/IO failure.
enum class ErrorKind : int { numeric = 1, usage = 2 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(ErrorKind::numeric, msg);
}

[[noreturn]] inline void throw_usage(const std::string& msg) {
  throw Error(ErrorKind::usage, msg);
}

}  // namespace baire
