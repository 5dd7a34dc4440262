#include "courantlab/bialgebroid.hpp"

#include <bit>

namespace clab {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Side other(Side s) { return s == Side::A ? Side::ADual : Side::A; }

std::optional<Rational> scalar_of(const FunctionMatrix& m) {
  if (m.rows() == 0) return Rational(0);
  const Monomial one{};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& e = m(r, c);
      if (r != c && !e.is_zero()) return std::nullopt;
      if (e.size() > 1 || (e.size() == 1 && !(e.terms().begin()->first == one))) return std::nullopt;
    }
  const Rational v = m(0, 0).coefficient(one);
  for (std::size_t r = 1; r < m.rows(); ++r)
    if (m(r, r).coefficient(one) != v) return std::nullopt;
  return v;
}

// Coefficient of the alpha-th generator on `side` in a section.
GradedPoly component(const DoubleFrame& frame, const GradedPoly& u, Side side, int alpha) {
  return poisson_bracket(u, frame.gen(other(side), alpha));
}

std::vector<GradedPoly> side_basis(const DoubleFrame& frame, Side side, int max_q_degree) {
  std::vector<GradedPoly> out;
  for (const auto& m : base_monomials(frame.signature(), max_q_degree))
    for (int a = 0; a < frame.rank(); ++a) out.push_back(mul(m, frame.gen(side, a)));
  return out;
}

std::string label3(const GradedPoly& a, const GradedPoly& b, const GradedPoly& c) {
  return a.to_string() + "; " + b.to_string() + "; " + c.to_string();
}

}  // namespace

FunctionMatrix zero_functions(const SignaturePtr& sig, int rows, int cols) {
  return FunctionMatrix(idx(rows), idx(cols), GradedPoly(sig));
}

FunctionMatrix identity_functions(const SignaturePtr& sig, int n) {
  auto out = zero_functions(sig, n, n);
  for (int i = 0; i < n; ++i) out(idx(i), idx(i)) = GradedPoly::constant(sig, 1);
  return out;
}

FunctionMatrix rational_functions(const SignaturePtr& sig, const RationalMatrix& m) {
  FunctionMatrix out(m.rows(), m.cols(), GradedPoly(sig));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = GradedPoly::constant(sig, m(r, c));
  return out;
}

FunctionMatrix multiply(const FunctionMatrix& a, const FunctionMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  if (a.rows() == 0 || b.cols() == 0) return a;
  FunctionMatrix out(a.rows(), b.cols(), GradedPoly(a(0, 0).signature()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += mul(a(i, k), b(k, j));
    }
  return out;
}

FunctionMatrix transpose(const FunctionMatrix& a) {
  if (a.rows() == 0) return a;
  FunctionMatrix out(a.cols(), a.rows(), GradedPoly(a(0, 0).signature()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

FunctionMatrix add(const FunctionMatrix& a, const FunctionMatrix& b, const Rational& scale) {
  FunctionMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += scale * b(i, j);
  return out;
}

bool is_zero(const FunctionMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_antisymmetric(const FunctionMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (!(m(i, j) + m(j, i)).is_zero()) return false;
  return true;
}

std::string to_string(const FunctionMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += m(r, c).to_string();
    }
  }
  return "[" + out + "]";
}

DoubleFrame::DoubleFrame(SignaturePtr sig) : sig_(std::move(sig)) {
  if (!sig_->labelled()) throw InvalidSignature("a double needs A/A* labels on the odd generators");
  a_ = sig_->indices_with(OddLabel::A);
  const auto duals = sig_->indices_with(OddLabel::ADual);
  std::vector<bool> used(idx(sig_->odd_count()), false);
  for (int a : a_) {
    int partner = -1;
    for (int j : duals) {
      const auto& v = sig_->pairing(a, j);
      if (v == 0) continue;
      if (v != 1 || partner != -1)
        throw InvalidSignature("pairing must be canonical: <e_a, x^b> = delta_ab");
      partner = j;
    }
    if (partner == -1 || used[idx(partner)])
      throw InvalidSignature("pairing must be canonical: <e_a, x^b> = delta_ab");
    used[idx(partner)] = true;
    dual_.push_back(partner);
  }
}

std::pair<int, int> DoubleFrame::bidegree(const Monomial& m) const {
  int na = 0, nd = 0;
  for (int a : a_) na += (m.odd >> a) & 1u;
  for (int d : dual_) nd += (m.odd >> d) & 1u;
  return {na, nd};
}

AlgebroidData zero_algebroid(const DoubleFrame& frame) {
  const auto& sig = frame.signature();
  AlgebroidData data{zero_functions(sig, sig->base_dim(), frame.rank()), {}};
  for (int g = 0; g < frame.rank(); ++g) data.structure.push_back(zero_functions(sig, frame.rank(), frame.rank()));
  return data;
}

GradedPoly lie_algebroid_element(const DoubleFrame& frame, const AlgebroidData& data, Side side) {
  const auto& sig = frame.signature();
  const Side dual = other(side);
  GradedPoly out(sig);
  for (int i = 0; i < sig->base_dim(); ++i)
    for (int a = 0; a < frame.rank(); ++a) {
      const auto& rho = data.anchor(idx(i), idx(a));
      if (!rho.is_zero()) out -= mul(rho, mul(GradedPoly::p(sig, i), frame.gen(dual, a)));
    }
  for (int g = 0; g < frame.rank(); ++g)
    for (int a = 0; a < frame.rank(); ++a)
      for (int b = 0; b < frame.rank(); ++b) {
        const auto& c = data.structure[idx(g)](idx(a), idx(b));
        if (c.is_zero()) continue;
        out -= Rational(1, 2) * mul(c, mul(mul(frame.gen(dual, a), frame.gen(dual, b)), frame.gen(side, g)));
      }
  return out;
}

AlgebroidData read_algebroid(const DoubleFrame& frame, const GradedPoly& element, Side side) {
  const auto& sig = frame.signature();
  auto data = zero_algebroid(frame);
  for (int a = 0; a < frame.rank(); ++a) {
    for (int i = 0; i < sig->base_dim(); ++i)
      data.anchor(idx(i), idx(a)) = derived_anchor(element, frame.gen(side, a), GradedPoly::q(sig, i));
    for (int b = 0; b < frame.rank(); ++b) {
      const auto bracket = derived_bracket(element, frame.gen(side, a), frame.gen(side, b));
      for (int g = 0; g < frame.rank(); ++g) data.structure[idx(g)](idx(a), idx(b)) = component(frame, bracket, side, g);
    }
  }
  return data;
}

BialgebroidConditions bialgebroid_conditions(const DoubleModel& db) {
  return {poisson_bracket(db.mu, db.mu), poisson_bracket(db.mu, db.gamma), poisson_bracket(db.gamma, db.gamma)};
}

CourantStructure assemble_double(const DoubleModel& db) {
  if (!db.mu.is_homogeneous_of(3)) throw NotDegree3(db.mu.to_string());
  if (!db.gamma.is_homogeneous_of(3)) throw NotDegree3(db.gamma.to_string());
  const auto cond = bialgebroid_conditions(db);
  if (!cond.mu_mu.is_zero()) throw BialgebroidConditionFails("{mu,mu}", cond.mu_mu.to_string());
  if (!cond.mu_gamma.is_zero()) throw BialgebroidConditionFails("{mu,gamma}", cond.mu_gamma.to_string());
  if (!cond.gamma_gamma.is_zero()) throw BialgebroidConditionFails("{gamma,gamma}", cond.gamma_gamma.to_string());
  return CourantStructure(db.theta());
}

CheckReport check_double_restrictions(const DoubleModel& db) {
  const auto& frame = db.frame;
  const auto& sig = frame.signature();
  const auto theta = db.theta();
  CheckReport report("double-restrictions");
  for (Side side : {Side::A, Side::ADual}) {
    const auto& element = side == Side::A ? db.mu : db.gamma;
    const auto data = read_algebroid(frame, element, side);
    const auto rebuilt = lie_algebroid_element(frame, data, side);
    report.expect_zero(side == Side::A ? "mu rebuilt from its bracket" : "gamma rebuilt from its bracket",
                       rebuilt - element);
    for (const auto& u : side_basis(frame, side, 1))
      for (const auto& v : side_basis(frame, side, 1))
        report.expect_zero("restricted bracket", derived_bracket(theta, u, v) - derived_bracket(element, u, v),
                           u.to_string() + "; " + v.to_string());
    for (int a = 0; a < frame.rank(); ++a)
      for (int i = 0; i < sig->base_dim(); ++i) {
        const auto q = GradedPoly::q(sig, i);
        report.expect_zero("restricted anchor",
                           derived_anchor(theta, frame.gen(side, a), q) - derived_anchor(element, frame.gen(side, a), q));
      }
  }
  return report;
}

BlockEndomorphism block_from_n(const DoubleFrame& frame, const FunctionMatrix& n) {
  const auto& sig = frame.signature();
  return {n, zero_functions(sig, frame.rank(), frame.rank()), zero_functions(sig, frame.rank(), frame.rank())};
}

Endomorphism assemble_block(const DoubleFrame& frame, const BlockEndomorphism& b) {
  const int r = frame.rank();
  auto check = [r](const FunctionMatrix& m) {
    if (m.rows() != idx(r) || m.cols() != idx(r)) throw DegreeMismatch("block has the wrong shape");
  };
  check(b.n);
  check(b.pi);
  check(b.omega);
  Endomorphism out(frame.signature());
  for (int a = 0; a < r; ++a)
    for (int c = 0; c < r; ++c) {
      out.at(frame.a_index(c), frame.a_index(a)) = b.n(idx(c), idx(a));
      out.at(frame.dual_index(c), frame.dual_index(a)) = -b.n(idx(a), idx(c));
      out.at(frame.a_index(c), frame.dual_index(a)) = b.pi(idx(c), idx(a));
      out.at(frame.dual_index(c), frame.a_index(a)) = b.omega(idx(c), idx(a));
    }
  out.validate();
  return out;
}

Endomorphism double_endo(const DoubleFrame& frame, const FunctionMatrix& n) {
  return assemble_block(frame, block_from_n(frame, n));
}

Endomorphism dual_side_endo(const DoubleFrame& frame, const FunctionMatrix& m) {
  return double_endo(frame, add(zero_functions(frame.signature(), frame.rank(), frame.rank()), transpose(m),
                                Rational(-1)));
}

GradedPoly block_lift(const DoubleFrame& frame, const BlockEndomorphism& b) {
  return lift_endo(assemble_block(frame, b));
}

GradedPoly bivector_lift(const DoubleFrame& frame, const FunctionMatrix& pi) {
  auto b = block_from_n(frame, zero_functions(frame.signature(), frame.rank(), frame.rank()));
  b.pi = pi;
  return block_lift(frame, b);
}

GradedPoly form_lift(const DoubleFrame& frame, const FunctionMatrix& omega) {
  auto b = block_from_n(frame, zero_functions(frame.signature(), frame.rank(), frame.rank()));
  b.omega = omega;
  return block_lift(frame, b);
}

bool BlockCpsReport::consistent() const {
  const bool assembled = assembled_skew && assembled_cps.has_value();
  if (cps() != assembled) return false;
  return !cps() || *lambda == assembled_cps->lambda;
}

BlockCpsReport block_cps(const DoubleFrame& frame, const BlockEndomorphism& b) {
  BlockCpsReport report;
  report.pi_bivector = is_antisymmetric(b.pi);
  report.omega_form = is_antisymmetric(b.omega);
  report.n_pi_bivector = is_antisymmetric(multiply(b.n, b.pi));
  report.omega_n_form = is_antisymmetric(multiply(b.omega, b.n));
  report.lambda = scalar_of(add(multiply(b.n, b.n), multiply(b.pi, b.omega)));
  const auto assembled = assemble_block(frame, b);
  report.assembled_skew = is_skew(assembled);
  report.assembled_cps = cps_check(assembled);
  return report;
}

GradedPoly lift_tensor(const DoubleFrame& frame, const AlgebroidTensor& t) {
  const int r = frame.rank();
  if (t.components.size() != idx(r)) throw AlgebraError("tensor needs one component matrix per basis element");
  const Side dual = other(t.side);
  GradedPoly out(frame.signature());
  for (int g = 0; g < r; ++g) {
    const auto& c = t.components[idx(g)];
    if (c.rows() != idx(r) || c.cols() != idx(r)) throw AlgebraError("tensor component has the wrong shape");
    if (!is_antisymmetric(c)) throw AlgebraError("tensor is not antisymmetric in its first two slots");
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        if (!c(idx(a), idx(b)).is_zero())
          out -= mul(c(idx(a), idx(b)), mul(mul(frame.gen(dual, a), frame.gen(dual, b)), frame.gen(t.side, g)));
  }
  return out;
}

AlgebroidTensor read_tensor(const DoubleFrame& frame, const GradedPoly& lifted, Side side) {
  const int r = frame.rank();
  const Side dual = other(side);
  AlgebroidTensor t{side, {}};
  for (int g = 0; g < r; ++g) {
    auto c = zero_functions(frame.signature(), r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        c(idx(a), idx(b)) = poisson_bracket(
            poisson_bracket(poisson_bracket(frame.gen(side, a), lifted), frame.gen(side, b)), frame.gen(dual, g));
    t.components.push_back(std::move(c));
  }
  return t;
}

CheckReport check_tensor_lift(const DoubleFrame& frame, const AlgebroidTensor& t) {
  const auto lifted = lift_tensor(frame, t);
  const int r = frame.rank();
  const auto& sig = frame.signature();
  const Side dual = other(t.side);
  // <t(U, V), W> with U, V on t's side and W on the dual side.
  auto form = [&](const GradedPoly& u, const GradedPoly& v, const GradedPoly& w) {
    GradedPoly out(sig);
    for (int a = 0; a < r; ++a) {
      const auto ua = component(frame, u, t.side, a);
      if (ua.is_zero()) continue;
      for (int b = 0; b < r; ++b) {
        const auto vb = component(frame, v, t.side, b);
        if (vb.is_zero()) continue;
        for (int g = 0; g < r; ++g)
          out += mul(mul(mul(ua, vb), t.components[idx(g)](idx(a), idx(b))), component(frame, w, dual, g));
      }
    }
    return out;
  };
  std::vector<GradedPoly> gens;
  for (int a = 0; a < sig->odd_count(); ++a) gens.push_back(GradedPoly::odd(sig, a));
  CheckReport report("tensor-lift");
  for (const auto& u : gens)
    for (const auto& v : gens)
      for (const auto& w : gens) {
        const auto lhs = poisson_bracket(poisson_bracket(poisson_bracket(u, lifted), v), w);
        report.expect_zero("cyclic evaluation", lhs - (form(u, v, w) + form(v, w, u) + form(w, u, v)),
                           label3(u, v, w));
      }
  return report;
}

AlgebroidTensor side_torsion(const DoubleFrame& frame, const GradedPoly& element, const FunctionMatrix& n, Side side) {
  const auto endo = double_endo(frame, n);
  const int r = frame.rank();
  AlgebroidTensor t{side, {}};
  for (int g = 0; g < r; ++g) t.components.push_back(zero_functions(frame.signature(), r, r));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const auto value = torsion_dorfman(element, endo, frame.gen(side, a), frame.gen(side, b));
      for (int g = 0; g < r; ++g) t.components[idx(g)](idx(a), idx(b)) = component(frame, value, side, g);
    }
  return t;
}

bool tensor_is_zero(const AlgebroidTensor& t) {
  for (const auto& c : t.components)
    if (!is_zero(c)) return false;
  return true;
}

bool TorsionSumReport::passed() const {
  return degree3 && (!sum_identity || sum_identity->passed()) && components.passed() && restriction.passed() &&
         double_of_brackets.passed();
}

TorsionSumReport torsion_sum_check(const DoubleModel& db, const FunctionMatrix& n, int max_q_degree) {
  const auto& frame = db.frame;
  const auto theta = db.theta();
  const auto endo = double_endo(frame, n);
  const auto endo2 = apply_square(endo);
  const auto lift = lift_endo(endo);
  TorsionSumReport report;

  const auto k = poisson_bracket(poisson_bracket(lift, theta), lift);
  report.degree3 = k.is_homogeneous_of(3);
  report.tensorial = report.degree3 && !k.has_p();
  report.lambda = scalar_of(multiply(n, n));
  if (report.lambda) {
    CheckReport sum("torsion-sum");
    const auto closed = torsion_tensor(theta, lift, *report.lambda);
    const auto parts = lift_tensor(frame, side_torsion(frame, db.mu, n, Side::A)) +
                       lift_tensor(frame, side_torsion(frame, db.gamma, n, Side::ADual));
    sum.expect_zero("closed form = T_mu N + T_gamma tN", closed - parts);
    report.sum_identity = sum;
  }

  const auto xs = side_basis(frame, Side::A, max_q_degree);
  const auto ks = side_basis(frame, Side::ADual, max_q_degree);
  auto t_full = [&](const GradedPoly& u, const GradedPoly& v) { return torsion_dorfman(theta, endo, u, v); };
  auto t_mu = [&](const GradedPoly& u, const GradedPoly& v) { return torsion_dorfman(db.mu, endo, u, v); };
  auto t_gamma = [&](const GradedPoly& u, const GradedPoly& v) { return torsion_dorfman(db.gamma, endo, u, v); };
  auto d_gamma_vec = [&](const GradedPoly& x, const GradedPoly& eta, const GradedPoly& zeta) {
    return derived_anchor(db.gamma, eta, pairing(x, zeta)) - derived_anchor(db.gamma, zeta, pairing(x, eta)) -
           pairing(x, derived_bracket(db.gamma, eta, zeta));
  };
  auto d_mu_form = [&](const GradedPoly& xi, const GradedPoly& y, const GradedPoly& z) {
    return derived_anchor(db.mu, y, pairing(xi, z)) - derived_anchor(db.mu, z, pairing(xi, y)) -
           pairing(xi, derived_bracket(db.mu, y, z));
  };

  for (const auto& x : xs)
    for (const auto& y : xs) {
      const auto txy = t_full(x, y);
      const auto tmu = t_mu(x, y);
      report.restriction.expect_zero("T restricted to A", txy - tmu, x.to_string() + "; " + y.to_string());
      for (const auto& z : xs) report.components.expect_zero("(01) A-part", pairing(txy, z) - pairing(tmu, z), label3(x, y, z));
      for (const auto& zeta : ks)
        report.components.expect_zero("(01) A*-part", pairing(txy, zeta) - pairing(tmu, zeta), label3(x, y, zeta));
    }
  for (const auto& xi : ks)
    for (const auto& eta : ks) {
      const auto txe = t_full(xi, eta);
      const auto tg = t_gamma(xi, eta);
      report.restriction.expect_zero("T restricted to A*", txe - tg, xi.to_string() + "; " + eta.to_string());
      for (const auto& z : xs) report.components.expect_zero("(02) A-part", pairing(txe, z) - pairing(tg, z), label3(xi, eta, z));
      for (const auto& zeta : ks)
        report.components.expect_zero("(02) A*-part", pairing(txe, zeta) - pairing(tg, zeta), label3(xi, eta, zeta));
    }
  for (const auto& x : xs)
    for (const auto& eta : ks) {
      const auto t = t_full(x, eta);
      for (const auto& z : xs) {
        const auto rhs = pairing(t_mu(z, x) + derived_bracket(db.mu, apply(endo2, z), x) -
                                     apply(endo2, derived_bracket(db.mu, z, x)),
                                 eta);
        report.components.expect_zero("(1)", pairing(t, z) - rhs, label3(x, eta, z));
      }
      for (const auto& zeta : ks) {
        const auto rhs = pairing(t_gamma(eta, zeta), x) + d_gamma_vec(apply(endo2, x), eta, zeta) -
                         d_gamma_vec(x, eta, apply(endo2, zeta));
        report.components.expect_zero("(2)", pairing(t, zeta) - rhs, label3(x, eta, zeta));
      }
    }
  for (const auto& xi : ks)
    for (const auto& y : xs) {
      const auto t = t_full(xi, y);
      for (const auto& zeta : ks) {
        const auto rhs = pairing(t_gamma(zeta, xi) + derived_bracket(db.gamma, apply(endo2, zeta), xi) -
                                     apply(endo2, derived_bracket(db.gamma, zeta, xi)),
                                 y);
        report.components.expect_zero("(3)", pairing(t, zeta) - rhs, label3(xi, y, zeta));
      }
      for (const auto& z : xs) {
        const auto rhs = pairing(t_mu(y, z), xi) + d_mu_form(apply(endo2, xi), y, z) - d_mu_form(xi, y, apply(endo2, z));
        report.components.expect_zero("(4)", pairing(t, z) - rhs, label3(xi, y, z));
      }
    }

  const auto deformed = poisson_bracket(lift, db.mu) + poisson_bracket(lift, db.gamma);
  std::vector<GradedPoly> all = xs;
  all.insert(all.end(), ks.begin(), ks.end());
  for (const auto& u : all)
    for (const auto& v : all)
      report.double_of_brackets.expect_zero("double of deformed brackets",
                                            deformed_bracket_direct(theta, endo, u, v) -
                                                derived_bracket(deformed, u, v),
                                            u.to_string() + "; " + v.to_string());
  for (const auto& u : xs)
    for (const auto& v : xs)
      report.double_of_brackets.expect_zero("A part is the deformed mu bracket",
                                            deformed_bracket_direct(theta, endo, u, v) -
                                                deformed_bracket_direct(db.mu, endo, u, v),
                                            u.to_string() + "; " + v.to_string());
  for (const auto& u : ks)
    for (const auto& v : ks)
      report.double_of_brackets.expect_zero("A* part is the deformed gamma bracket",
                                            deformed_bracket_direct(theta, endo, u, v) -
                                                deformed_bracket_direct(db.gamma, endo, u, v),
                                            u.to_string() + "; " + v.to_string());
  return report;
}

BialgebroidDeformReport deform_bialgebroid(const DoubleModel& db, const FunctionMatrix& n,
                                           const std::optional<FunctionMatrix>& n_prime) {
  const auto& frame = db.frame;
  const auto lift = lift_endo(double_endo(frame, n));
  BialgebroidDeformReport report{poisson_bracket(lift, db.mu),
                                 GradedPoly(frame.signature()),
                                 GradedPoly(frame.signature()),
                                 GradedPoly(frame.signature()),
                                 GradedPoly(frame.signature()),
                                 side_torsion(frame, db.mu, n, Side::A),
                                 {},
                                 false,
                                 std::nullopt};
  if (n_prime) {
    report.gamma_n = poisson_bracket(lift_endo(dual_side_endo(frame, *n_prime)), db.gamma);
    // side_torsion acts by -t(m) on A*; the torsion is even in the endomorphism.
    report.torsion_dual = side_torsion(frame, db.gamma, transpose(*n_prime), Side::ADual);
  } else {
    report.gamma_n = poisson_bracket(lift, db.gamma);
    report.torsion_dual = side_torsion(frame, db.gamma, n, Side::ADual);
  }
  report.mu_n_mu_n = poisson_bracket(report.mu_n, report.mu_n);
  report.gamma_n_gamma_n = poisson_bracket(report.gamma_n, report.gamma_n);
  report.cross = poisson_bracket(report.mu_n, report.gamma_n);
  report.torsions_vanish = tensor_is_zero(report.torsion_a) && tensor_is_zero(report.torsion_dual);
  if (!n_prime) report.equals_deformed_double = poisson_bracket(lift, db.theta()) == report.mu_n + report.gamma_n;
  return report;
}

GradedPoly schouten(const DoubleModel& db, const FunctionMatrix& pi) {
  const auto p = bivector_lift(db.frame, pi);
  return poisson_bracket(poisson_bracket(p, db.mu), p);
}

GradedPoly concomitant(const DoubleModel& db, const FunctionMatrix& pi, const FunctionMatrix& n) {
  const auto p = bivector_lift(db.frame, pi);
  const auto nl = lift_endo(double_endo(db.frame, n));
  return poisson_bracket(p, poisson_bracket(nl, db.mu)) + poisson_bracket(nl, poisson_bracket(p, db.mu));
}

bool PnReport::pn() const {
  return commutes && schouten.is_zero() && concomitant.is_zero() && tensor_is_zero(torsion);
}

PnReport pn_check(const DoubleModel& db, const FunctionMatrix& pi, const FunctionMatrix& n) {
  const auto& frame = db.frame;
  PnReport report{.commutes = multiply(n, pi) == multiply(pi, transpose(n)),
                  .schouten = schouten(db, pi),
                  .concomitant = concomitant(db, pi, n),
                  .torsion = side_torsion(frame, db.mu, n, Side::A),
                  .weak_deforming_defect = std::nullopt,
                  .block_torsion_vanishes = std::nullopt};
  const auto nl = lift_endo(double_endo(frame, n));
  const auto pl = bivector_lift(frame, pi);
  BlockEndomorphism block = block_from_n(frame, n);
  block.pi = pi;
  const auto total = block_lift(frame, block);
  CheckReport& dec = report.decomposition;
  dec.expect_zero("block lift = N~ + pi~", total - nl - pl);
  const auto k = poisson_bracket(poisson_bracket(total, db.mu), total);
  const auto knn = poisson_bracket(poisson_bracket(nl, db.mu), nl);
  dec.expect_zero("cross terms = -C(pi, N)",
                  poisson_bracket(poisson_bracket(nl, db.mu), pl) + poisson_bracket(poisson_bracket(pl, db.mu), nl) +
                      report.concomitant);
  dec.expect_zero("{{calN, mu}, calN} = {{N, mu}, N} + [pi, pi] - C", k - (knn + report.schouten - report.concomitant));
  if (report.pn()) report.weak_deforming_defect = poisson_bracket(db.mu, k);
  const auto lambda = scalar_of(multiply(n, n));
  if (lambda && report.commutes) report.block_torsion_vanishes = torsion_tensor(db.mu, total, *lambda).is_zero();
  return report;
}

bool OmegaNReport::omega_n() const {
  return commutes && d_mu_omega.is_zero() && d_mu_n_omega.is_zero() && tensor_is_zero(torsion);
}

OmegaNReport omega_n_check(const DoubleModel& db, const FunctionMatrix& omega, const FunctionMatrix& n) {
  const auto& frame = db.frame;
  const auto nl = lift_endo(double_endo(frame, n));
  const auto wl = form_lift(frame, omega);
  OmegaNReport report{multiply(omega, n) == multiply(transpose(n), omega),
                      poisson_bracket(db.mu, wl),
                      poisson_bracket(poisson_bracket(nl, db.mu), wl),
                      side_torsion(frame, db.mu, n, Side::A),
                      poisson_bracket(poisson_bracket(wl, db.mu), wl),
                      std::nullopt};
  if (report.omega_n()) {
    BlockEndomorphism block = block_from_n(frame, n);
    block.omega = omega;
    const auto total = block_lift(frame, block);
    report.weak_deforming_defect = poisson_bracket(db.mu, poisson_bracket(poisson_bracket(total, db.mu), total));
  }
  return report;
}

bool TrivialDeformReport::passed() const {
  return square_identity_defect.is_zero() && cocycle_defect.is_zero() && master_defect.is_zero() &&
         double_defect.is_zero() && (!block_torsion || block_torsion->is_zero());
}

TrivialDeformReport trivial_double_deform(const DoubleModel& db, const FunctionMatrix& n) {
  if (!db.gamma.is_zero()) throw AlgebraError("deformation of a trivial double needs gamma = 0", db.gamma.to_string());
  const auto& frame = db.frame;
  const auto& sig = frame.signature();
  auto torsion = side_torsion(frame, db.mu, n, Side::A);
  if (!tensor_is_zero(torsion)) throw TorsionNonzero(lift_tensor(frame, torsion).to_string());

  const auto endo = double_endo(frame, n);
  const auto lift = lift_endo(endo);
  const auto square_lift = lift_endo(double_endo(frame, multiply(n, n)));
  const auto k = poisson_bracket(poisson_bracket(lift, db.mu), lift);
  const auto theta_prime = poisson_bracket(lift, db.mu);

  auto data = zero_algebroid(frame);
  for (int a = 0; a < frame.rank(); ++a) {
    const auto ne = apply(endo, frame.e(a));
    for (int i = 0; i < sig->base_dim(); ++i)
      data.anchor(idx(i), idx(a)) = derived_anchor(db.mu, ne, GradedPoly::q(sig, i));
    for (int b = 0; b < frame.rank(); ++b) {
      const auto bracket = deformed_bracket_direct(db.mu, endo, frame.e(a), frame.e(b));
      for (int g = 0; g < frame.rank(); ++g)
        data.structure[idx(g)](idx(a), idx(b)) = component(frame, bracket, Side::A, g);
    }
  }

  TrivialDeformReport report{std::move(torsion),
                             k - poisson_bracket(db.mu, square_lift),
                             poisson_bracket(db.mu, k),
                             poisson_bracket(theta_prime, theta_prime),
                             theta_prime - lie_algebroid_element(frame, data, Side::A),
                             std::nullopt};
  if (const auto lambda = scalar_of(multiply(n, n))) report.block_torsion = torsion_tensor(db.mu, lift, *lambda);
  return report;
}

}  // namespace clab
