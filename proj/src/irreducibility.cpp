#include "courantlab/irreducibility.hpp"

#include <functional>
#include <map>

namespace clab {

namespace {

// Unknown k is the entry (row, col) of the matrix with coefficient monomial m.
struct Unknown {
  int row;
  int col;
  std::size_t monomial;
};

std::vector<Unknown> ansatz(int size, std::size_t monomials) {
  std::vector<Unknown> out;
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c)
      for (std::size_t m = 0; m < monomials; ++m) out.push_back({r, c, m});
  return out;
}

using RowKey = std::pair<std::size_t, Monomial>;

struct RowKeyOrder {
  bool operator()(const RowKey& a, const RowKey& b) const {
    if (a.first != b.first) return a.first < b.first;
    return MonomialOrder{}(a.second, b.second);
  }
};

// Kernel of the linear map x -> sum_k x_k constraints(E_k), where each
// constraint list is a fixed-length vector of polynomials.
SolutionSpace solve(std::size_t unknowns, const std::function<std::vector<GradedPoly>(std::size_t)>& constraints) {
  std::vector<std::vector<GradedPoly>> images(unknowns);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < static_cast<long>(unknowns); ++k)
    images[static_cast<std::size_t>(k)] = constraints(static_cast<std::size_t>(k));

  std::map<RowKey, std::vector<Rational>, RowKeyOrder> rows;
  for (std::size_t k = 0; k < unknowns; ++k)
    for (std::size_t j = 0; j < images[k].size(); ++j)
      for (const auto& [m, c] : images[k][j].terms()) {
        auto& row = rows.try_emplace({j, m}, unknowns, Rational(0)).first->second;
        row[k] = c;
      }
  RowReducer reducer(unknowns);
  for (auto& [key, row] : rows) reducer.add_row(std::move(row));
  return {unknowns, reducer.kernel()};
}

int test_degree(const SignaturePtr& sig) { return sig->base_dim() > 0 ? 1 : 0; }

Endomorphism courant_unknown(const SignaturePtr& sig, const std::vector<GradedPoly>& monomials, const Unknown& u) {
  Endomorphism e(sig);
  e.at(u.row, u.col) = monomials[u.monomial];
  return e;
}

// Constant diagonal entries all equal, everything else zero.
bool is_identity_multiple(const std::vector<Rational>& x, const std::vector<Unknown>& unknowns) {
  std::optional<Rational> diag;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto& u = unknowns[k];
    const bool constant_diag = u.row == u.col && u.monomial == 0;
    if (!constant_diag) {
      if (x[k] != 0) return false;
      continue;
    }
    if (diag && *diag != x[k]) return false;
    diag = x[k];
  }
  return true;
}

std::vector<Rational> identity_coordinates(const std::vector<Unknown>& unknowns) {
  std::vector<Rational> x(unknowns.size(), Rational(0));
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    if (unknowns[k].row == unknowns[k].col && unknowns[k].monomial == 0) x[k] = 1;
  return x;
}

bool in_span(const SolutionSpace& space, const std::vector<Rational>& x) {
  RowReducer reducer(space.unknowns);
  for (const auto& v : space.coordinates) reducer.add_row(v);
  return !reducer.add_row(x);
}


}  // namespace

bool same_space(const SolutionSpace& a, const SolutionSpace& b) {
  return a.unknowns == b.unknowns && canonical_span(a.coordinates, a.unknowns) == canonical_span(b.coordinates, b.unknowns);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::irreducible: return "Irreducible";
    case Verdict::irreducible_up_to_degree: return "IrreducibleUpToDegree";
    case Verdict::reducible: return "ReducibleWitness";
  }
  return "";
}

CourantSolutions solve_property(const GradedPoly& theta, Property property, bool symmetric, int max_q_degree) {
  const auto& sig = theta.signature();
  const auto monomials = base_monomials(sig, max_q_degree);
  const auto unknowns = ansatz(sig->odd_count(), monomials.size());
  const auto tests = basis_sections(sig, test_degree(sig));
  auto br = [&](const GradedPoly& u, const GradedPoly& v) { return derived_bracket(theta, u, v); };
  auto d = [&](const GradedPoly& f) { return poisson_bracket(theta, f); };

  auto constraints = [&](std::size_t k) {
    const auto phi = courant_unknown(sig, monomials, unknowns[k]);
    std::vector<GradedPoly> out;
    for (const auto& u : tests)
      for (const auto& v : tests) {
        const auto uv = br(u, v);
        out.push_back(br(u, apply(phi, v)) - apply(phi, uv));
        switch (property) {
          case Property::p1:
            out.push_back(br(apply(phi, u), v) - apply(phi, uv));
            break;
          case Property::p2:
            out.push_back(apply(phi, d(pairing(u, v))) - d(pairing(apply(phi, u), v)));
            break;
          case Property::p1_prime:
            out.push_back(br(apply(phi, u), v) + br(apply(phi, v), u) - apply(phi, uv + br(v, u)));
            break;
        }
      }
    if (symmetric) {
      const auto asym = phi - transpose(phi);
      for (int b = 0; b < sig->odd_count(); ++b)
        for (int a = 0; a < sig->odd_count(); ++a) out.push_back(asym.at(b, a));
    }
    return out;
  };

  CourantSolutions result{solve(unknowns.size(), constraints), {}};
  for (const auto& x : result.space.coordinates) {
    Endomorphism acc(sig);
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] != 0) acc += x[k] * courant_unknown(sig, monomials, unknowns[k]);
    result.basis.push_back(std::move(acc));
  }
  return result;
}

CourantIrreducibility is_irreducible_courant(const GradedPoly& theta, int max_q_degree) {
  const auto& sig = theta.signature();
  const auto monomials = base_monomials(sig, max_q_degree);
  const auto unknowns = ansatz(sig->odd_count(), monomials.size());

  CourantIrreducibility report;
  report.max_q_degree = max_q_degree;
  report.symmetric_p1 = solve_p1(theta, true, max_q_degree);
  report.p1_equals_p2 = same_space(solve_property(theta, Property::p1, false, max_q_degree).space,
                                   solve_property(theta, Property::p2, false, max_q_degree).space);
  report.p1_equals_p1_prime =
      same_space(report.symmetric_p1.space, solve_property(theta, Property::p1_prime, true, max_q_degree).space);
  report.contains_identity = in_span(report.symmetric_p1.space, identity_coordinates(unknowns));

  const auto& space = report.symmetric_p1.space;
  for (std::size_t i = 0; i < space.dimension(); ++i)
    if (!is_identity_multiple(space.coordinates[i], unknowns)) {
      report.witness = report.symmetric_p1.basis[i];
      break;
    }
  if (report.witness)
    report.verdict = Verdict::reducible;
  else
    report.verdict = sig->base_dim() == 0 ? Verdict::irreducible : Verdict::irreducible_up_to_degree;
  return report;
}

AlgebroidSolutions solve_lie_algebroid(const DoubleFrame& frame, const GradedPoly& mu, int max_q_degree) {
  const auto& sig = frame.signature();
  const auto monomials = base_monomials(sig, max_q_degree);
  const auto unknowns = ansatz(frame.rank(), monomials.size());
  std::vector<GradedPoly> tests;
  for (const auto& m : base_monomials(sig, test_degree(sig)))
    for (int a = 0; a < frame.rank(); ++a) tests.push_back(mul(m, frame.e(a)));

  auto unknown_matrix = [&](std::size_t k) {
    auto m = zero_functions(sig, frame.rank(), frame.rank());
    const auto& u = unknowns[k];
    m(static_cast<std::size_t>(u.row), static_cast<std::size_t>(u.col)) = monomials[u.monomial];
    return m;
  };
  auto constraints = [&](std::size_t k) {
    const auto psi = double_endo(frame, unknown_matrix(k));
    std::vector<GradedPoly> out;
    for (const auto& x : tests)
      for (const auto& y : tests)
        out.push_back(apply(psi, derived_bracket(mu, x, y)) - derived_bracket(mu, x, apply(psi, y)));
    return out;
  };

  AlgebroidSolutions result{solve(unknowns.size(), constraints), {}};
  for (const auto& x : result.space.coordinates) {
    auto acc = zero_functions(sig, frame.rank(), frame.rank());
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] != 0) acc = add(acc, unknown_matrix(k), x[k]);
    result.basis.push_back(std::move(acc));
  }
  return result;
}

LieIrreducibility is_irreducible_lie_algebroid(const DoubleFrame& frame, const GradedPoly& mu, int max_q_degree) {
  const auto& sig = frame.signature();
  const auto unknowns = ansatz(frame.rank(), base_monomials(sig, max_q_degree).size());
  LieIrreducibility report;
  report.max_q_degree = max_q_degree;
  report.solutions = solve_lie_algebroid(frame, mu, max_q_degree);
  report.contains_identity = in_span(report.solutions.space, identity_coordinates(unknowns));
  const auto& space = report.solutions.space;
  for (std::size_t i = 0; i < space.dimension(); ++i)
    if (!is_identity_multiple(space.coordinates[i], unknowns)) {
      report.witness = report.solutions.basis[i];
      break;
    }
  if (report.witness)
    report.verdict = Verdict::reducible;
  else
    report.verdict = sig->base_dim() == 0 ? Verdict::irreducible : Verdict::irreducible_up_to_degree;
  return report;
}

}  // namespace clab
