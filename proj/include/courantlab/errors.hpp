#pragma once

#include <stdexcept>
#include <string>

namespace clab {

/// Base of all errors raised by the algebra layer. `witness()` carries the
/// canonical text of an offending expression when there is one.
class AlgebraError : public std::runtime_error {
 public:
  explicit AlgebraError(const std::string& what, std::string witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class SignatureMismatch : public AlgebraError {
 public:
  SignatureMismatch() : AlgebraError("operands belong to different signatures") {}
};

class InvalidSignature : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class DegreeMismatch : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class NotDegree3 : public AlgebraError {
 public:
  explicit NotDegree3(std::string witness)
      : AlgebraError("structure element is not homogeneous of degree 3", std::move(witness)) {}
};

class MasterEquationFails : public AlgebraError {
 public:
  explicit MasterEquationFails(std::string witness)
      : AlgebraError("{Theta, Theta} != 0", std::move(witness)) {}
};

class NotSkew : public AlgebraError {
 public:
  NotSkew() : AlgebraError("endomorphism is not skew-symmetric for the pairing") {}
};

class NotCps : public AlgebraError {
 public:
  NotCps() : AlgebraError("N^2 is not a rational multiple of the identity") {}
};

class BialgebroidConditionFails : public AlgebraError {
 public:
  BialgebroidConditionFails(const std::string& which, std::string witness)
      : AlgebraError(which + " != 0", std::move(witness)) {}
};

class TorsionNonzero : public AlgebraError {
 public:
  explicit TorsionNonzero(std::string witness)
      : AlgebraError("torsion of N does not vanish", std::move(witness)) {}
};

}  // namespace clab
