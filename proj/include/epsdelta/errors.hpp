#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsdelta {

enum class ErrorKind {
  parse,             // malformed expression source
  config,            // invalid argument / configuration
  domain,            // evaluation outside the function's domain
  coincident_points, // Leibniz ratio at numerically equal points
  invalid_bracket,   // a >= b
  no_sign_change,    // root not bracketed
  bracket_expansion, // expansion budget exhausted
  iteration_limit,   // search did not terminate in max_iters
  hypothesis,        // theoretical assumption violated (f'(x) ~ 0)
  io,                // sink write failure
};

/// Single exception type for the whole library; `kind` drives CLI exit
/// codes and `offset` points into expression source text when meaningful.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

  Error(ErrorKind kind, std::string message, std::size_t offset = no_offset)
      : std::runtime_error(std::move(message)), kind_(kind), offset_(offset) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  bool has_offset() const noexcept { return offset_ != no_offset; }

 private:
  ErrorKind kind_;
  std::size_t offset_;
};

}  // namespace epsdelta
