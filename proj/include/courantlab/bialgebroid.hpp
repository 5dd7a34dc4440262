#pragma once

// Doubles A + A* of Lie bialgebroids in the big-bracket picture. The odd
// generators split into a basis e_alpha of A and the dual basis x^alpha of A*,
// with <e_alpha, x^beta> = delta. A structure on A is an element
//   mu = -rho^i_alpha p_i x^alpha - 1/2 c^g_{ab} x^a x^b e_g
// and dually for A*; Theta = mu + gamma.

#include <optional>
#include <string>
#include <vector>

#include "courantlab/nijenhuis.hpp"

namespace clab {

using FunctionMatrix = Matrix<GradedPoly>;

FunctionMatrix zero_functions(const SignaturePtr& sig, int rows, int cols);
FunctionMatrix identity_functions(const SignaturePtr& sig, int n);
FunctionMatrix rational_functions(const SignaturePtr& sig, const RationalMatrix& m);
FunctionMatrix multiply(const FunctionMatrix& a, const FunctionMatrix& b);
FunctionMatrix transpose(const FunctionMatrix& a);
FunctionMatrix add(const FunctionMatrix& a, const FunctionMatrix& b, const Rational& scale = Rational(1));
bool is_zero(const FunctionMatrix& m);
bool is_antisymmetric(const FunctionMatrix& m);
std::string to_string(const FunctionMatrix& m);

enum class Side { A, ADual };

/// Index bookkeeping for a labelled signature with canonical pairing.
class DoubleFrame {
 public:
  /// Throws InvalidSignature unless the pairing is canonical between A and A*.
  explicit DoubleFrame(SignaturePtr sig);

  const SignaturePtr& signature() const { return sig_; }
  int rank() const { return static_cast<int>(a_.size()); }
  int a_index(int alpha) const { return a_[static_cast<std::size_t>(alpha)]; }
  int dual_index(int alpha) const { return dual_[static_cast<std::size_t>(alpha)]; }
  /// Odd index of the alpha-th basis element on the given side.
  int index(Side side, int alpha) const { return side == Side::A ? a_index(alpha) : dual_index(alpha); }

  GradedPoly e(int alpha) const { return GradedPoly::odd(sig_, a_index(alpha)); }
  GradedPoly x(int alpha) const { return GradedPoly::odd(sig_, dual_index(alpha)); }
  GradedPoly gen(Side side, int alpha) const { return side == Side::A ? e(alpha) : x(alpha); }

  /// (count of A generators, count of A* generators) of a monomial.
  std::pair<int, int> bidegree(const Monomial& m) const;

 private:
  SignaturePtr sig_;
  std::vector<int> a_;
  std::vector<int> dual_;
};

/// Anchor and structure functions of a Lie algebroid on one side.
struct AlgebroidData {
  FunctionMatrix anchor;                   // anchor(i, alpha) = rho^i_alpha
  std::vector<FunctionMatrix> structure;   // structure[g](a, b) = c^g_{ab}, antisymmetric in (a, b)
};

AlgebroidData zero_algebroid(const DoubleFrame& frame);

/// The degree 3 element whose derived bracket on the given side has the
/// prescribed anchor and structure functions.
GradedPoly lie_algebroid_element(const DoubleFrame& frame, const AlgebroidData& data, Side side);

/// Reads anchor and structure functions back from the derived bracket of an
/// element on one side.
AlgebroidData read_algebroid(const DoubleFrame& frame, const GradedPoly& element, Side side);

struct DoubleModel {
  DoubleFrame frame;
  GradedPoly mu;
  GradedPoly gamma;

  GradedPoly theta() const { return mu + gamma; }
};

struct BialgebroidConditions {
  GradedPoly mu_mu;
  GradedPoly mu_gamma;
  GradedPoly gamma_gamma;
  bool valid() const { return mu_mu.is_zero() && mu_gamma.is_zero() && gamma_gamma.is_zero(); }
};

BialgebroidConditions bialgebroid_conditions(const DoubleModel& db);

/// Validated Courant structure mu + gamma. Throws BialgebroidConditionFails
/// naming the first of {mu,mu}, {mu,gamma}, {gamma,gamma} that is nonzero.
CourantStructure assemble_double(const DoubleModel& db);

/// Dorfman brackets and anchors of mu on A and of gamma on A* agree with
/// the restriction of the double; Dorfman bracket on each side reproduces
/// the structure read from the element.
CheckReport check_double_restrictions(const DoubleModel& db);

/// N on A, bivector pi : A* -> A and 2-form omega : A -> A*, all rank x rank:
///   N(e_a) = sum_b n(b, a) e_b,  pi(x^a) = sum_b pi(b, a) e_b,  omega(e_a) = sum_b omega(b, a) x^b.
struct BlockEndomorphism {
  FunctionMatrix n;
  FunctionMatrix pi;
  FunctionMatrix omega;
};

BlockEndomorphism block_from_n(const DoubleFrame& frame, const FunctionMatrix& n);

/// [[N, pi], [omega, -tN]] as an endomorphism of A + A*.
Endomorphism assemble_block(const DoubleFrame& frame, const BlockEndomorphism& b);
/// diag(N, -tN).
Endomorphism double_endo(const DoubleFrame& frame, const FunctionMatrix& n);
/// Endomorphism of A + A* acting as m on A* and as -tm on A.
Endomorphism dual_side_endo(const DoubleFrame& frame, const FunctionMatrix& m);

GradedPoly block_lift(const DoubleFrame& frame, const BlockEndomorphism& b);
GradedPoly bivector_lift(const DoubleFrame& frame, const FunctionMatrix& pi);
GradedPoly form_lift(const DoubleFrame& frame, const FunctionMatrix& omega);

struct BlockCpsReport {
  bool pi_bivector = false;       // pi antisymmetric
  bool omega_form = false;        // omega antisymmetric
  bool n_pi_bivector = false;     // (i)
  bool omega_n_form = false;      // (ii)
  std::optional<Rational> lambda; // (iii) N^2 + pi omega = lambda Id
  bool assembled_skew = false;
  std::optional<CpsInfo> assembled_cps;

  bool cps() const { return pi_bivector && omega_form && n_pi_bivector && omega_n_form && lambda.has_value(); }
  /// The block conditions agree with a direct check on the assembled matrix.
  bool consistent() const;
};

BlockCpsReport block_cps(const DoubleFrame& frame, const BlockEndomorphism& b);

/// t in L^2 A* (x) A (side A: components[g](a, b) = t^g_{ab}) or in
/// L^2 A (x) A* (side ADual: components[g](a, b) = t_g^{ab}).
struct AlgebroidTensor {
  Side side = Side::A;
  std::vector<FunctionMatrix> components;
};

/// Throws AlgebraError when a component is not antisymmetric.
GradedPoly lift_tensor(const DoubleFrame& frame, const AlgebroidTensor& t);

/// Recovers t from {{{e_a, t~}, e_b}, x^g} (or the dual evaluation).
AlgebroidTensor read_tensor(const DoubleFrame& frame, const GradedPoly& lifted, Side side);

/// The cyclic evaluation formula against the triple bracket on all generator triples.
CheckReport check_tensor_lift(const DoubleFrame& frame, const AlgebroidTensor& t);

/// Torsion of N for the bracket of `element` on one side, as a tensor, read
/// off generator pairs. On side ADual the endomorphism is tN.
AlgebroidTensor side_torsion(const DoubleFrame& frame, const GradedPoly& element, const FunctionMatrix& n, Side side);

struct TorsionSumReport {
  /// {{N~, mu+gamma}, N~} is homogeneous of degree 3.
  bool degree3 = false;
  /// ... and has no p-terms (a section of L^3(A + A*)).
  bool tensorial = false;
  std::optional<Rational> lambda;
  /// Closed-form torsion of the double equals the sum of the lifted side torsions.
  std::optional<CheckReport> sum_identity;
  CheckReport components{"component-identities"};
  CheckReport restriction{"restriction"};
  CheckReport double_of_brackets{"double-of-deformed-brackets"};

  bool passed() const;
};

TorsionSumReport torsion_sum_check(const DoubleModel& db, const FunctionMatrix& n, int max_q_degree = 1);

struct BialgebroidDeformReport {
  GradedPoly mu_n;
  GradedPoly gamma_n;
  GradedPoly mu_n_mu_n;
  GradedPoly gamma_n_gamma_n;
  GradedPoly cross;
  AlgebroidTensor torsion_a;
  AlgebroidTensor torsion_dual;
  bool torsions_vanish = false;
  bool lie_bialgebroid() const { return mu_n_mu_n.is_zero() && gamma_n_gamma_n.is_zero() && cross.is_zero(); }
  /// When N' is absent: {N~, mu + gamma} = mu_N + gamma_N.
  std::optional<bool> equals_deformed_double;
};

/// mu_N = {N~, mu}; gamma' = {N~, gamma}, or {N'~, gamma} with N' acting on A*.
BialgebroidDeformReport deform_bialgebroid(const DoubleModel& db, const FunctionMatrix& n,
                                           const std::optional<FunctionMatrix>& n_prime = std::nullopt);

/// [pi, pi] = {{pi~, mu}, pi~}.
GradedPoly schouten(const DoubleModel& db, const FunctionMatrix& pi);
/// C(pi, N) = {pi~, {N~, mu}} + {N~, {pi~, mu}}.
GradedPoly concomitant(const DoubleModel& db, const FunctionMatrix& pi, const FunctionMatrix& n);

bool tensor_is_zero(const AlgebroidTensor& t);

struct PnReport {
  bool commutes = false;  // N pi = pi tN
  GradedPoly schouten;
  GradedPoly concomitant;
  AlgebroidTensor torsion;
  bool pn() const;
  /// {{N~+pi~, mu}, N~+pi~} = {{N~, mu}, N~} + [pi, pi] - C(pi, N).
  CheckReport decomposition{"pn-decomposition"};
  /// d_mu {{calN~, mu}, calN~} when the structure is PN.
  std::optional<GradedPoly> weak_deforming_defect;
  /// When N^2 is scalar: vanishing of the closed-form torsion of the block.
  std::optional<bool> block_torsion_vanishes;
};

PnReport pn_check(const DoubleModel& db, const FunctionMatrix& pi, const FunctionMatrix& n);

struct OmegaNReport {
  bool commutes = false;  // omega N = tN omega
  GradedPoly d_mu_omega;
  GradedPoly d_mu_n_omega;
  AlgebroidTensor torsion;
  GradedPoly omega_square;  // {{omega~, mu}, omega~}
  bool omega_n() const;
  std::optional<GradedPoly> weak_deforming_defect;
};

OmegaNReport omega_n_check(const DoubleModel& db, const FunctionMatrix& omega, const FunctionMatrix& n);

struct TrivialDeformReport {
  AlgebroidTensor torsion;
  /// {{N~, mu}, N~} - {mu, (N^2)~}.
  GradedPoly square_identity_defect;
  /// d_mu {{N~, mu}, N~}.
  GradedPoly cocycle_defect;
  /// {Theta', Theta'} for Theta' = {N~, mu}.
  GradedPoly master_defect;
  /// Theta' minus the element rebuilt from the deformed anchor and bracket.
  GradedPoly double_defect;
  /// Closed-form torsion of diag(N, -tN) when N^2 is scalar.
  std::optional<GradedPoly> block_torsion;
  bool passed() const;
};

/// Requires gamma = 0. Throws TorsionNonzero when T_mu N != 0.
TrivialDeformReport trivial_double_deform(const DoubleModel& db, const FunctionMatrix& n);

}  // namespace clab
