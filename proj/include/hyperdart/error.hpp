#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hyperdart {

// Root of every error raised by the library. The CLI maps subclasses onto
// its documented exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grammar or invariant violation while reading a dart.
class MalformedDart : public Error {
 public:
  MalformedDart(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A dart value that breaks one of its structural invariants.
class InvalidDart : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class TooManyDetails : public Error {
 public:
  TooManyDetails(std::size_t count, std::size_t limit)
      : Error("exact Shapley values need " + std::to_string(count) +
              " players but the exact limit is " + std::to_string(limit) +
              "; use permutation sampling instead"),
        count_(count),
        limit_(limit) {}

  std::size_t count() const { return count_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t count_;
  std::size_t limit_;
};

// A fidelity scorer could not produce a score (as opposed to producing a
// low one).
class ScorerFailure : public Error {
 public:
  ScorerFailure(std::string scorer_id, const std::string& cause)
      : Error("scorer '" + scorer_id + "' failed: " + cause),
        scorer_id_(std::move(scorer_id)) {}

  const std::string& scorer_id() const { return scorer_id_; }

 private:
  std::string scorer_id_;
};

class GeneratorFailure : public Error {
 public:
  using Error::Error;
};

class EmptyOriginal : public Error {
 public:
  EmptyOriginal() : Error("original text has no tokens") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("paired samples differ in length (" + std::to_string(a) +
              " vs " + std::to_string(b) + ")") {}
};

class TooFewPairs : public Error {
 public:
  explicit TooFewPairs(std::size_t n)
      : Error("paired test needs at least 2 pairs, got " + std::to_string(n)) {}
};

class EmptyDocument : public Error {
 public:
  EmptyDocument() : Error("document body is empty") {}
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace hyperdart
