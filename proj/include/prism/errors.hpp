#pragma once

#include <stdexcept>
#include <string>

namespace prism {

// Error taxonomy, mapped to CLI exit codes: ConfigError -> 2,
// NumericError -> 3, IoError -> 4. Policy-layer failures are caught by the
// engine and degraded to Silence, never propagated out of a run.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class QuantizeError : public NumericError {
 public:
  explicit QuantizeError(const std::string& what) : NumericError(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class PolicyError : public std::runtime_error {
 public:
  explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

class ProtocolError : public PolicyError {
 public:
  explicit ProtocolError(const std::string& what) : PolicyError(what) {}
};

}  // namespace prism
