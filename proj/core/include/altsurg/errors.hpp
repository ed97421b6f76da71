#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altsurg {

/// A precondition on the mathematical input was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured search or size cap was exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (JSON, PD codes, CLI lists).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A consistency check inside the library failed. Always a bug or an
/// input that slipped past validation.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Torsion coefficients of an Alexander polynomial do not form a valid
/// V-sequence.
class NotLSpaceForm : public DomainError {
 public:
  NotLSpaceForm(std::size_t index, const std::string& what)
      : DomainError("NOT_LSPACE_FORM at index " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The white graph has a self-loop or cut-edge (nugatory crossing).
class ReduceFirst : public DomainError {
 public:
  explicit ReduceFirst(const std::string& what) : DomainError("REDUCE_FIRST: " + what) {}
};

}  // namespace altsurg
