#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace candy {

// Input rejected at a validation boundary (bad counts, bad ranges, unmet hypothesis).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A trajectory did not revisit any state within the round cap.
// `initial` holds the offending starting counts when known.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what, std::vector<std::uint64_t> initial = {})
      : std::runtime_error(what), initial_(std::move(initial)) {}

  const std::vector<std::uint64_t>& initial() const noexcept { return initial_; }

 private:
  std::vector<std::uint64_t> initial_;
};

// A count does not fit in 64 bits, or a sweep is past the feasibility guard.
class Overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace candy
