#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace falg {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is the 0-based character offset.
class parse_error : public error {
 public:
  parse_error(std::size_t position, const std::string& message)
      : error("parse error at column " + std::to_string(position + 1) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class unknown_symbol : public error {
 public:
  using error::error;
};

class division_by_zero : public error {
 public:
  using error::error;
};

/// Operands live on different charts, or have incompatible shapes/types.
class mismatch_error : public error {
 public:
  using error::error;
};

/// A bracket would produce a monomial deeper than the truncation bound.
class depth_overflow : public error {
 public:
  using error::error;
};

/// Invalid input data (bad spec file contents, morphism invariants, ...).
class invalid_input : public error {
 public:
  using error::error;
};

}  // namespace falg
