#pragma once

#include <stdexcept>
#include <string>

namespace superstyle {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Inputs that disagree in shape or size with each other.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class CodeLengthMismatch : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class ShapeMismatch : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class LengthMismatch : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class EmptyLabel : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class LabelAbsentInDonor : public Error {
 public:
  using Error::Error;
};

// Malformed JSON document or a document that does not follow its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace superstyle
