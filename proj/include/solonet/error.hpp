#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solonet {

// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed XML or JSON. `offset` is the byte position where the reader gave up.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Well-formed input that violates the expected document structure.
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

// A named part, node or measure does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

class EmptySoloError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied numeric argument outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class UndefinedStatsError : public Error {
 public:
  using Error::Error;
};

class DegenerateBaselineError : public Error {
 public:
  using Error::Error;
};

class EmptyGroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace solonet
