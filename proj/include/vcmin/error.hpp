#pragma once

#include <stdexcept>
#include <string>

namespace vcmin {

// Base for every error raised by the library. The CLI maps all of these to
// exit code 2 except where a command documents otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Indices out of range, mismatched ground sizes, unparsable files.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// A ball list that is not a directed (laminar) family.
class NotDirected : public Error {
 public:
  NotDirected(std::size_t first, std::size_t second, const std::string& what)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// Two cheeses of a decomposition overlap.
class DisjointnessViolation : public Error {
 public:
  DisjointnessViolation(std::size_t first, std::size_t second)
      : Error("cheeses " + std::to_string(first) + " and " + std::to_string(second) + " overlap"),
        first_(first),
        second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// Target set cannot be written as a disjoint union of Swiss cheeses.
class Inexpressible : public Error {
 public:
  using Error::Error;
};

// An instance does not satisfy its own invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Extraction reached bound 1 with a nonempty neighbourhood.
class ComplexityBoundViolated : public Error {
 public:
  using Error::Error;
};

// A runtime assertion of the extraction argument failed. Seeing this means
// there is a bug; valid input can never trigger it.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace vcmin
