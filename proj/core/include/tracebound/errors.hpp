#ifndef TRACEBOUND_ERRORS_HPP_
#define TRACEBOUND_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tracebound {

// Malformed or inconsistent input: bad presentation files, unknown
// generators, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponential enumeration exceeded its configured cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t depth_reached)
      : std::runtime_error(what), depth_reached_(depth_reached) {}

  std::size_t depth_reached() const noexcept { return depth_reached_; }

 private:
  std::size_t depth_reached_;
};

}  // namespace tracebound

#endif  // TRACEBOUND_ERRORS_HPP_
