#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not fit together.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error("structural error: " + what) {}
};

class InvalidNorm : public Error {
 public:
  explicit InvalidNorm(const std::string& what) : Error("invalid norm: " + what) {}
};

class InvalidBasis : public Error {
 public:
  explicit InvalidBasis(const std::string& what) : Error("invalid basis: " + what) {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error("invalid parameter: " + what) {}
};

/// The deleted index set does not leave a basis behind.
class InvalidDeletion : public Error {
 public:
  explicit InvalidDeletion(const std::string& what) : Error("invalid deletion: " + what) {}
};

class EnumerationCap : public Error {
 public:
  explicit EnumerationCap(const std::string& what) : Error("enumeration cap exceeded: " + what) {}
};

/// Frame operator is singular at the working tolerance.
class NotAFrame : public Error {
 public:
  explicit NotAFrame(const std::string& what) : Error("not a frame: " + what) {}
};

/// Raised when a result the algebra guarantees could not be produced,
/// which means the input never satisfied its preconditions.
class InternalInconsistency : public Error {
 public:
  explicit InternalInconsistency(const std::string& what)
      : Error("internal inconsistency: " + what) {}
};

/// Malformed frame, coefficient or block file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace framekit
