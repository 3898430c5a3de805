#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgof {

enum class ErrorKind {
  InvalidArgument,
  InvalidPattern,
  NonConvergent,
  DegenerateFunction,
  Divergent,
  NoRoot,
  OutOfRange,
  DegenerateAlternative,
  ExpansionInapplicable,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::DegenerateFunction: return "DegenerateFunction";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateAlternative: return "DegenerateAlternative";
    case ErrorKind::ExpansionInapplicable: return "ExpansionInapplicable";
  }
  return "Unknown";
}

/// True for errors caused by bad caller input rather than by the numerics.
constexpr bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::InvalidArgument || kind == ErrorKind::InvalidPattern;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace mgof
