#pragma once

// The degree -2 graded Poisson bracket on the symplectic realization:
//   {q^i, p_j} = delta^i_j,   {tau^a, tau^b} = g^{ab}.
// A Courant algebroid structure is a degree 3 element Theta with {Theta, Theta} = 0.

#include "courantlab/graded_algebra.hpp"

namespace clab {

/// Reference implementation, one term pair at a time.
GradedPoly poisson_bracket_serial(const GradedPoly& f, const GradedPoly& g);

/// Same result, with the outer loop over the terms of f split across threads.
GradedPoly poisson_bracket_parallel(const GradedPoly& f, const GradedPoly& g);

/// Picks the parallel kernel for large operands when more than one thread is available.
GradedPoly poisson_bracket(const GradedPoly& f, const GradedPoly& g);

/// Partial derivatives, exposed for tests and for the Leibniz checks.
GradedPoly d_dq(const GradedPoly& f, int i);
GradedPoly d_dp(const GradedPoly& f, int i);
GradedPoly right_d_dodd(const GradedPoly& f, int a);
GradedPoly left_d_dodd(const GradedPoly& f, int a);

/// Throws NotDegree3 unless theta is homogeneous of degree 3 (or zero).
bool is_master(const GradedPoly& theta);

/// Theta together with its validated master equation.
class CourantStructure {
 public:
  /// Throws NotDegree3 or MasterEquationFails.
  explicit CourantStructure(GradedPoly theta);

  const GradedPoly& theta() const { return theta_; }
  const SignaturePtr& signature() const { return theta_.signature(); }

 private:
  GradedPoly theta_;
};

/// d f = {Theta, f}; on functions this is the transpose of the anchor, d^2 = 0.
GradedPoly d_operator(const CourantStructure& c, const GradedPoly& f);

}  // namespace clab
