#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace causalbox {

// A named variable assignment, used to report where a computation broke down.
using NamedAssignment = std::map<std::string, int>;

std::string describe(const NamedAssignment& assignment);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class CycleError : public InvalidGraph {
 public:
  using InvalidGraph::InvalidGraph;
};

class UnknownVertex : public Error {
 public:
  explicit UnknownVertex(const std::string& name) : Error("unknown vertex '" + name + "'") {}
};

class OverlappingSets : public Error {
 public:
  using Error::Error;
};

class FixedNotParentless : public Error {
 public:
  explicit FixedNotParentless(const std::string& name)
      : Error("fixed vertex '" + name + "' has a parent") {}
};

class NotADistrict : public Error {
 public:
  using Error::Error;
};

class InvalidKernel : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class CardinalityMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// Raised when conditioning on an event of probability zero under some index row.
class ZeroProbabilityEvent : public Error {
 public:
  explicit ZeroProbabilityEvent(NamedAssignment index)
      : Error("conditioning event has probability zero at index " + describe(index)),
        index_(std::move(index)) {}
  const NamedAssignment& index() const { return index_; }

 private:
  NamedAssignment index_;
};

class ZeroSelectionProbability : public Error {
 public:
  using Error::Error;
};

// A conditional needed by a kernel recipe is undefined at `assignment`.
class ZeroDivision : public Error {
 public:
  explicit ZeroDivision(NamedAssignment assignment)
      : Error("undefined conditional at " + describe(assignment)), assignment_(std::move(assignment)) {}
  const NamedAssignment& assignment() const { return assignment_; }

 private:
  NamedAssignment assignment_;
};

class MultiLatent : public Error {
 public:
  using Error::Error;
};

class UnsupportedGraph : public Error {
 public:
  using Error::Error;
};

class NotNoSignalling : public Error {
 public:
  using Error::Error;
};

// Every two-input two-output no-signalling box has a decomposition; reaching this is a bug.
class DecompositionNotFound : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace causalbox
