#pragma once

#include <stdexcept>
#include <string>

namespace wsp {

enum class ErrorKind {
  usage,      // caller violated a precondition
  ingestion,  // malformed or duplicate input data
  config,     // parameter set rejected
  resource,   // a configured cap was exceeded
  internal,   // an invariant of the data structure broke
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& m) : Error(ErrorKind::usage, m) {}
};

class IngestionError : public Error {
 public:
  IngestionError(const std::string& m, std::size_t row)
      : Error(ErrorKind::ingestion, m), row_(row) {}
  /// 1-based row of the offending record, 0 when not row-specific.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorKind::config, m) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& m) : Error(ErrorKind::resource, m) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& m) : Error(ErrorKind::internal, m) {}
};

}  // namespace wsp
