#pragma once

// Endomorphisms commuting with the Dorfman bracket, found by exact linear
// algebra over an ansatz whose entries are polynomials in q of degree <= d.
//
//   (P1)  [u, phi v] = phi [u, v]  and  [phi u, v] = phi [u, v]
//   (P2)  [u, phi v] = phi [u, v]  and  phi d<u, v> = d<phi u, v>
//   (P1') [u, phi v] = phi [u, v]  and  [phi u, u] = phi [u, u]  (tested in polarized form)
//
// Test sections are the generators times q-monomials of degree <= 1; by the
// Leibniz rules this imposes the conditions for all polynomial sections.

#include <optional>
#include <string>
#include <vector>

#include "courantlab/bialgebroid.hpp"

namespace clab {

enum class Property { p1, p2, p1_prime };

struct SolutionSpace {
  std::size_t unknowns = 0;
  /// Coordinates of the basis in the ansatz, for comparing spaces.
  std::vector<std::vector<Rational>> coordinates;
  std::size_t dimension() const { return coordinates.size(); }
};

/// Same subspace of the same ansatz.
bool same_space(const SolutionSpace& a, const SolutionSpace& b);

struct CourantSolutions {
  SolutionSpace space;
  std::vector<Endomorphism> basis;
};

CourantSolutions solve_property(const GradedPoly& theta, Property property, bool symmetric, int max_q_degree);
inline CourantSolutions solve_p1(const GradedPoly& theta, bool symmetric, int max_q_degree) {
  return solve_property(theta, Property::p1, symmetric, max_q_degree);
}

enum class Verdict { irreducible, irreducible_up_to_degree, reducible };

std::string verdict_name(Verdict v);

struct CourantIrreducibility {
  Verdict verdict = Verdict::irreducible;
  int max_q_degree = 0;
  CourantSolutions symmetric_p1;
  std::optional<Endomorphism> witness;
  /// P1 and P2 solution spaces agree (no symmetry imposed).
  bool p1_equals_p2 = false;
  /// P1 and P1' agree on symmetric endomorphisms.
  bool p1_equals_p1_prime = false;
  bool contains_identity = false;
};

CourantIrreducibility is_irreducible_courant(const GradedPoly& theta, int max_q_degree);

struct AlgebroidSolutions {
  SolutionSpace space;
  std::vector<FunctionMatrix> basis;
};

/// psi [X, Y] = [X, psi Y] for sections of A under the bracket of mu.
AlgebroidSolutions solve_lie_algebroid(const DoubleFrame& frame, const GradedPoly& mu, int max_q_degree);

struct LieIrreducibility {
  Verdict verdict = Verdict::irreducible;
  int max_q_degree = 0;
  AlgebroidSolutions solutions;
  std::optional<FunctionMatrix> witness;
  bool contains_identity = false;
};

LieIrreducibility is_irreducible_lie_algebroid(const DoubleFrame& frame, const GradedPoly& mu, int max_q_degree);

}  // namespace clab
