#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vecsect {

enum class Errc {
  invalid_argument,
  unsupported_geometry,
  unsupported_capability,
  validation,
};

/// Base of every exception thrown by the library. Callers that only care
/// about "bad input vs. bug" can switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(Errc::invalid_argument, what) {}
};

class UnsupportedGeometry : public Error {
 public:
  explicit UnsupportedGeometry(const std::string& what) : Error(Errc::unsupported_geometry, what) {}
};

class UnsupportedCapability : public Error {
 public:
  explicit UnsupportedCapability(const std::string& what) : Error(Errc::unsupported_capability, what) {}
};

/// Malformed or non-canonical input data. offset() is an element index for
/// in-memory runs and a byte offset for run files.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::uint64_t offset)
      : Error(Errc::validation, what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace vecsect
