#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tww {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element id is not part of the structure's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unknown relation symbol, arity mismatch or incompatible signatures.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Precondition on an argument violated (missing element, u == v, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A contraction sequence cannot be replayed.
class SequenceError : public Error {
 public:
  SequenceError(std::size_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// A twin-model violates the consistency axiom. Carries the witness cycle
/// as a closed walk of node names in the tree plus transversal pairs.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, std::vector<std::string> cycle)
      : Error(what), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

/// Invalid or non-covering star coloring.
class ColoringError : public Error {
 public:
  using Error::Error;
};

/// Unary marks do not satisfy the precondition of a decoder.
class MarkError : public Error {
 public:
  using Error::Error;
};

/// Decoding failed; `stage()` names the pipeline stage that rejected the input.
class DecodeError : public Error {
 public:
  DecodeError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Formula syntax error at a byte offset of the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A JSON document does not have the expected shape.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tww
