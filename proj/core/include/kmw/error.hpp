#pragma once

#include <stdexcept>
#include <string>

namespace kmw {

// Input that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation exceeded a caller supplied resource cap.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, long long reached)
      : std::runtime_error(what), reached_(reached) {}
  long long reached() const { return reached_; }

 private:
  long long reached_;
};

// An internal identity that must hold exactly failed.
class ArithmeticFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kmw
