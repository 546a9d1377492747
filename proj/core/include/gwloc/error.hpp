#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwloc {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  UnsupportedGenus,
  MissingHodgeTable,
  GraphCapExceeded,
  NonGenericWeights,
  SingularWeight,
  DimensionMismatch,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure raised by the library carries a kind so that
/// drivers can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace gwloc
