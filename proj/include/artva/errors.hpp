#pragma once

#include <stdexcept>
#include <string>

namespace artva {

/// Configuration rejected; message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File read/write failure; message carries the path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Field evaluation requested at (or numerically on top of) the source,
/// where the dipole model diverges.
class SingularField : public std::domain_error {
 public:
  explicit SingularField(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace artva
