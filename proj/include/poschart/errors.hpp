#pragma once

#include <stdexcept>
#include <string>

#include "poschart/numbers.hpp"

namespace poschart {

// Broad failure classes; the CLI maps them to exit codes.
enum class ErrorKind {
  Input,       // malformed input, schema violation, unknown catalog entry
  Assumption,  // a mathematical precondition of the construction fails
  Resource,    // configurable budget exhausted
  Internal     // identity checks that should never fail on valid data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

struct RankDeficientError : Error {
  explicit RankDeficientError(const std::string& m) : Error(ErrorKind::Assumption, "RankDeficient", m) {}
};

struct TorsionError : Error {
  explicit TorsionError(const std::string& m) : Error(ErrorKind::Assumption, "Torsion", m) {}
};

struct NotUnimodularError : Error {
  NotUnimodularError(const Int& det, const std::string& m)
      : Error(ErrorKind::Assumption, "NotUnimodular", m + " (det = " + det.str() + ")"), det(det) {}
  Int det;
};

struct UnboundedError : Error {
  explicit UnboundedError(const std::string& m) : Error(ErrorKind::Input, "Unbounded", m) {}
};

struct EmptyError : Error {
  explicit EmptyError(const std::string& m) : Error(ErrorKind::Input, "Empty", m) {}
};

struct NotLatticeError : Error {
  explicit NotLatticeError(const std::string& m) : Error(ErrorKind::Assumption, "NotLattice", m) {}
};

struct NotSimplicialError : Error {
  explicit NotSimplicialError(const std::string& m) : Error(ErrorKind::Assumption, "NotSimplicial", m) {}
};

struct NotPointedError : Error {
  explicit NotPointedError(const std::string& m) : Error(ErrorKind::Assumption, "NotPointed", m) {}
};

struct NotNefError : Error {
  explicit NotNefError(const std::string& m) : Error(ErrorKind::Assumption, "NotNef", m) {}
};

struct NegativeExponentError : Error {
  explicit NegativeExponentError(const std::string& m) : Error(ErrorKind::Assumption, "NegativeExponent", m) {}
};

struct NotSmoothFanError : Error {
  explicit NotSmoothFanError(const std::string& m) : Error(ErrorKind::Assumption, "NotSmoothFan", m) {}
};

struct AssumptionFacetCountError : Error {
  explicit AssumptionFacetCountError(const std::string& m)
      : Error(ErrorKind::Assumption, "AssumptionFacetCount", m) {}
};

struct AssumptionUnimodularError : Error {
  AssumptionUnimodularError(const Int& det, const std::string& m)
      : Error(ErrorKind::Assumption, "AssumptionUnimodular", m + " (det = " + det.str() + ")"), det(det) {}
  Int det;
};

struct AssumptionPositivityError : Error {
  explicit AssumptionPositivityError(const std::string& m)
      : Error(ErrorKind::Assumption, "AssumptionPositivity", m) {}
};

struct IdentityFailedError : Error {
  explicit IdentityFailedError(const std::string& m) : Error(ErrorKind::Internal, "IdentityFailed", m) {}
};

struct ResourceLimitError : Error {
  explicit ResourceLimitError(const std::string& m) : Error(ErrorKind::Resource, "ResourceLimit", m) {}
};

struct PoleError : Error {
  explicit PoleError(const std::string& m) : Error(ErrorKind::Input, "PoleAt", m) {}
};

struct DegenerateExponentError : Error {
  explicit DegenerateExponentError(const std::string& m)
      : Error(ErrorKind::Input, "DegenerateExponent", m) {}
};

struct NoConvergenceError : Error {
  explicit NoConvergenceError(const std::string& m) : Error(ErrorKind::Resource, "NoConvergence", m) {}
};

struct UnknownEntryError : Error {
  explicit UnknownEntryError(const std::string& m) : Error(ErrorKind::Input, "UnknownEntry", m) {}
};

struct InputError : Error {
  explicit InputError(const std::string& m) : Error(ErrorKind::Input, "InputError", m) {}
};

}  // namespace poschart
