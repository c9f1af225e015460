#pragma once

#include <stdexcept>
#include <string>

namespace rfsum {

// Argument violates an operation's precondition. Derived from
// std::invalid_argument so callers can catch either.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request that would exceed a configured memory or integer range budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal cross-check tripped. Never expected; signals a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rfsum
