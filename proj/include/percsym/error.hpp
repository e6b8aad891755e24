#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace percsym {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured bit cap.
class CapExceeded : public Error {
 public:
  CapExceeded(unsigned required_bits, unsigned cap_bits)
      : Error("enumeration needs 2^" + std::to_string(required_bits) +
              " configurations, cap is 2^" + std::to_string(cap_bits)),
        required_bits_(required_bits),
        cap_bits_(cap_bits) {}

  unsigned required_bits() const noexcept { return required_bits_; }
  unsigned cap_bits() const noexcept { return cap_bits_; }

 private:
  unsigned required_bits_;
  unsigned cap_bits_;
};

class ClosureCapExceeded : public Error {
 public:
  explicit ClosureCapExceeded(std::size_t cap)
      : Error("group closure exceeded " + std::to_string(cap) + " elements"),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class NonAutomorphismElement : public Error {
 public:
  explicit NonAutomorphismElement(std::size_t element_index)
      : Error("group element " + std::to_string(element_index) +
              " is not a graph automorphism"),
        element_index_(element_index) {}
  std::size_t element_index() const noexcept { return element_index_; }

 private:
  std::size_t element_index_;
};

class NoSwapper : public Error {
 public:
  NoSwapper() : Error("no group element exchanges V+ and V-") {}
};

// A scenario's symmetry preconditions do not hold; carries the diagnostic.
class SymmetryFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace percsym
