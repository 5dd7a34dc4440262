#pragma once

// Derived operations of a Courant structure Theta:
//   rho(u) f = {{u, Theta}, f},  [u, v] = {{u, Theta}, v},  d f = {Theta, f},
//   <u, v> = {u, v}.
// Sections are degree 1 elements, functions are degree 0 elements.

#include <span>
#include <vector>

#include "courantlab/poisson.hpp"
#include "courantlab/report.hpp"

namespace clab {

bool is_section(const GradedPoly& u);
bool is_function(const GradedPoly& f);

GradedPoly pairing(const GradedPoly& u, const GradedPoly& v);
GradedPoly anchor_apply(const CourantStructure& c, const GradedPoly& u, const GradedPoly& f);
GradedPoly dorfman(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v);
GradedPoly partial_op(const CourantStructure& c, const GradedPoly& f);
GradedPoly courant_bracket(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v);

/// Dorfman bracket of an arbitrary degree 3 element, with no master-equation
/// requirement. Used for mu and gamma separately on doubles.
GradedPoly derived_bracket(const GradedPoly& theta, const GradedPoly& u, const GradedPoly& v);
GradedPoly derived_anchor(const GradedPoly& theta, const GradedPoly& u, const GradedPoly& f);

/// Coefficients f_a of u = sum_a f_a tau^a.
std::vector<GradedPoly> section_components(const GradedPoly& u);

/// All q-monomials of total degree <= max_degree, in canonical order.
std::vector<GradedPoly> base_monomials(const SignaturePtr& sig, int max_degree);

/// m tau^a for every q-monomial m of degree <= max_q_degree and every generator.
std::vector<GradedPoly> basis_sections(const SignaturePtr& sig, int max_q_degree);

/// (axiom1), (axiom2), the Dorfman Jacobi identity, the Leibniz rule in the
/// second slot, and rho(u) as a derivation. Exhaustive over basis sections up
/// to max_q_degree, then over consecutive pairs and triples of `samples`.
CheckReport verify_courant_axioms(const CourantStructure& c, std::span<const GradedPoly> samples,
                                  int max_q_degree = 2);

/// Checks <u, d f> = rho(u) f on the basis.
CheckReport verify_partial_op(const CourantStructure& c, int max_q_degree = 2);

}  // namespace clab
