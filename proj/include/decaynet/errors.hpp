#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace decaynet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input shape (non-square matrix, index out of range, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A decay space or link system violates its axioms.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The link cannot overcome ambient noise on its own: P_v G_vv <= beta N.
class DrownedLinkError : public Error {
 public:
  explicit DrownedLinkError(std::size_t link)
      : Error("link " + std::to_string(link) + " drowned by noise"), link_(link) {}
  std::size_t link() const noexcept { return link_; }

 private:
  std::size_t link_;
};

}  // namespace decaynet
