#pragma once

#include <stdexcept>
#include <string>

namespace vig {

// Failure categories; the CLI maps each to a distinct exit code.
enum class ErrorKind { Parse, Validation, Unsat, Resource, Io, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(std::string m) : Error(ErrorKind::Parse, std::move(m)) {}
};
struct ValidationError : Error {
  explicit ValidationError(std::string m) : Error(ErrorKind::Validation, std::move(m)) {}
};
struct UnsatError : Error {
  explicit UnsatError(std::string m) : Error(ErrorKind::Unsat, std::move(m)) {}
};
struct ResourceError : Error {
  explicit ResourceError(std::string m) : Error(ErrorKind::Resource, std::move(m)) {}
};
struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorKind::Io, std::move(m)) {}
};

}  // namespace vig
