#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stijl {

// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A tile that is not a subtile of the tile it is attached to.
class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Counts that cannot come from the same tile tree (e.g. a child claiming more
// ones than its parent has).
class CountError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OrderingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stijl
