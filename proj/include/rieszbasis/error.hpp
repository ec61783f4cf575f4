#pragma once

#include <stdexcept>
#include <string>

namespace rieszbasis {

/// Failure classes. The CLI maps each one to its own exit code.
enum class ErrorKind {
  kParse,     // malformed input text or file
  kCap,       // a search or enumeration exceeded its configured bound
  kContract,  // a precondition of an operation was violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::kParse, what) {}
};

class CapError : public Error {
 public:
  explicit CapError(const std::string& what) : Error(ErrorKind::kCap, what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ErrorKind::kContract, what) {}
};

}  // namespace rieszbasis
