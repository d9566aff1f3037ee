#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plurichrome {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (mismatched sizes, bad permutation, ...).
class invalid_input : public error {
public:
  using error::error;
};

/// An enumeration or subset sum would exceed its documented cap.
class cap_exceeded : public error {
public:
  using error::error;
};

/// Malformed text (partition syntax, expression file, formula DSL, ...).
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace plurichrome
