#pragma once

#include <stdexcept>
#include <string>

namespace skt {

/// Invalid (family, rank) combination or malformed type string.
class InvalidTypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A metric parameter left the positivity domain (x_alpha <= 0, non-SPD torus block, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation needs data that the structure does not carry (e.g. J_t).
class MissingDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal self-check failed. Always a bug or a numerically degenerate input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input document (structure file, CLI argument list, ...).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skt
