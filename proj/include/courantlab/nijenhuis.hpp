#pragma once

// Torsion of endomorphisms of a Courant algebroid and deformations of Theta.
// Functions taking a raw GradedPoly `theta` accept any degree 3 element and
// use its derived bracket; they do not require the master equation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courantlab/courant.hpp"
#include "courantlab/endomorphism.hpp"

namespace clab {

/// [Nu, v] + [u, Nv] - N[u, v].
GradedPoly deformed_bracket_direct(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u,
                                   const GradedPoly& v);
/// {{u, {N~, Theta}}, v}.
GradedPoly deformed_bracket_poisson(const GradedPoly& theta, const GradedPoly& n_lift, const GradedPoly& u,
                                    const GradedPoly& v);

struct DeformedBracket {
  GradedPoly direct;
  GradedPoly poisson;
  bool agree() const { return direct == poisson; }
};
/// Both formulas; throws NotSkew.
DeformedBracket deformed_bracket(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u,
                                 const GradedPoly& v);

/// [Nu, Nv] - N[u, v]_N. Defined for any endomorphism.
GradedPoly torsion_dorfman(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u, const GradedPoly& v);
/// Same with the skew-symmetrized bracket.
GradedPoly torsion_courant(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u, const GradedPoly& v);

/// Verifies the relation between the two torsions, the f-linearity defect,
/// the symmetric part and the associated 3-tensor defect on consecutive
/// triples of `sections` and every f in `functions`. Requires skew N.
CheckReport check_defect_identities(const GradedPoly& theta, const Endomorphism& n,
                                    std::span<const GradedPoly> sections, std::span<const GradedPoly> functions);

/// N^2 = lambda Id, with lambda = scale^2 * epsilon when such a rational scale exists.
struct CpsInfo {
  Rational lambda;
  int epsilon = 0;
  std::optional<Rational> scale;
  /// True when |lambda| is not a rational square, so the normalization
  /// to epsilon in {-1, 0, 1} needs a quadratic extension.
  bool needs_quadratic_extension() const { return !scale.has_value(); }
};
std::optional<CpsInfo> cps_check(const Endomorphism& n);

/// -1/2 ({{N~, Theta}, N~} + lambda Theta).
GradedPoly torsion_tensor(const GradedPoly& theta, const GradedPoly& n_lift, const Rational& lambda);
/// Throws NotSkew or NotCps.
GradedPoly torsion_tensor(const GradedPoly& theta, const Endomorphism& n);

/// Compares the closed form with the elementwise torsion {{u, T~}, v} on all
/// pairs of basis sections up to max_q_degree. Throws NotSkew or NotCps.
CheckReport check_torsion_tensor(const GradedPoly& theta, const Endomorphism& n, int max_q_degree = 1);

struct TensorWitness {
  std::string label;
  GradedPoly value;
};

struct TensorReport {
  bool skew = false;
  std::optional<CpsInfo> cps;
  std::optional<bool> nijenhuis;
  std::optional<bool> weak_nijenhuis;
  /// c with {{N~, Theta}, N~} = c Theta, when it exists.
  std::optional<Rational> deforming_factor;
  bool weak_deforming = false;
  std::vector<TensorWitness> witnesses;

  bool deforming() const { return deforming_factor.has_value(); }
};

/// Throws NotSkew.
TensorReport classify(const CourantStructure& c, const Endomorphism& n);

/// Rational c with k = c theta, if any. Zero theta gives c = 0 when k = 0.
std::optional<Rational> proportionality(const GradedPoly& k, const GradedPoly& theta);

struct DeformReport {
  GradedPoly theta_prime;
  bool valid = false;
  /// {Theta', Theta'}; zero iff valid.
  GradedPoly master_defect;
  /// {Theta + Theta', Theta + Theta'}, computed when valid.
  std::optional<GradedPoly> sum_defect;
  bool compatible() const { return sum_defect && sum_defect->is_zero(); }
};

/// Theta' = {N~, Theta}. Throws NotSkew.
DeformReport deform(const CourantStructure& c, const Endomorphism& n);

/// N[u, v]_src = [Nu, Nv]_dst and rho_src(u) = rho_dst(Nu) on basis sections up to
/// max_q_degree and consecutive pairs of samples.
CheckReport is_morphism(const GradedPoly& theta_src, const GradedPoly& theta_dst, const Endomorphism& n,
                        std::span<const GradedPoly> samples, int max_q_degree = 1);

}  // namespace clab
