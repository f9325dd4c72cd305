#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagkit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problem in a corpus file (bad line, stray separator, ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A tag label that is not a member of the governing tagset.
class TagsetError : public Error {
 public:
  using Error::Error;
};

/// Operation that requires at least one sentence received none.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (unknown tag, empty sentence, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Interpolation weights requested but no trigram has a positive count.
class DegenerateCountsError : public Error {
 public:
  using Error::Error;
};

/// Brute-force decoding refused: sentence longer than the enumeration cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// Gold and predicted corpora disagree in shape or surfaces.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Base class for model deserialization failures.
class ModelLoadError : public Error {
 public:
  using Error::Error;
};

class VersionMismatchError : public ModelLoadError {
 public:
  using ModelLoadError::ModelLoadError;
};

class TruncatedModelError : public ModelLoadError {
 public:
  using ModelLoadError::ModelLoadError;
};

class ChecksumError : public ModelLoadError {
 public:
  using ModelLoadError::ModelLoadError;
};

class ModelFormatError : public ModelLoadError {
 public:
  using ModelLoadError::ModelLoadError;
};

}  // namespace tagkit
