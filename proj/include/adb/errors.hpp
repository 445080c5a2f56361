#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adb {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- evaluation errors ---

/// Query point (or a component of it) lies outside the grid's bounding box.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Inverting a degree < 1 on a side whose approximation radius is zero.
class ZeroRadiusSide : public Error {
 public:
  using Error::Error;
};

/// Base node and neighbor node coincide.
class DegenerateNodes : public Error {
 public:
  using Error::Error;
};

// --- construction / validation errors ---

/// Axis or grid invariant violated: nodes not strictly increasing, fewer
/// than two nodes, tensor shape mismatch, or non-finite data.
class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class IncompleteGrid : public Error {
 public:
  using Error::Error;
};

class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

class InconsistentDimension : public Error {
 public:
  using Error::Error;
};

class InvalidRadii : public Error {
 public:
  using Error::Error;
};

// --- io errors ---

class FileError : public Error {
 public:
  using Error::Error;
};

class EmptyFile : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptFile : public Error {
 public:
  using Error::Error;
};

class SchemaVersionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownFunction : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

}  // namespace adb
