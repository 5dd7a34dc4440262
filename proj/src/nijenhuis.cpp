#include "courantlab/nijenhuis.hpp"

namespace clab {

namespace {

GradedPoly br(const GradedPoly& theta, const GradedPoly& u, const GradedPoly& v) {
  return derived_bracket(theta, u, v);
}

GradedPoly partial(const GradedPoly& theta, const GradedPoly& f) { return poisson_bracket(theta, f); }

std::string pair_label(const GradedPoly& u, const GradedPoly& v) {
  return "u = " + u.to_string() + "; v = " + v.to_string();
}

}  // namespace

GradedPoly deformed_bracket_direct(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u,
                                   const GradedPoly& v) {
  return br(theta, apply(n, u), v) + br(theta, u, apply(n, v)) - apply(n, br(theta, u, v));
}

GradedPoly deformed_bracket_poisson(const GradedPoly& theta, const GradedPoly& n_lift, const GradedPoly& u,
                                    const GradedPoly& v) {
  return br(poisson_bracket(n_lift, theta), u, v);
}

DeformedBracket deformed_bracket(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u,
                                 const GradedPoly& v) {
  const auto lift = lift_endo(n);
  return {deformed_bracket_direct(theta, n, u, v), deformed_bracket_poisson(theta, lift, u, v)};
}

GradedPoly torsion_dorfman(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u, const GradedPoly& v) {
  return br(theta, apply(n, u), apply(n, v)) - apply(n, deformed_bracket_direct(theta, n, u, v));
}

GradedPoly torsion_courant(const GradedPoly& theta, const Endomorphism& n, const GradedPoly& u, const GradedPoly& v) {
  return Rational(1, 2) * (torsion_dorfman(theta, n, u, v) - torsion_dorfman(theta, n, v, u));
}

CheckReport check_defect_identities(const GradedPoly& theta, const Endomorphism& n,
                                    std::span<const GradedPoly> sections, std::span<const GradedPoly> functions) {
  if (!is_skew(n)) throw NotSkew();
  const auto n2 = apply_square(n);
  CheckReport report("defect-identities");
  const std::size_t s = sections.size();
  for (std::size_t i = 0; i < s; ++i) {
    const auto& u = sections[i];
    const auto& v = sections[(i + 1) % s];
    const auto& w = sections[(i + 2) % s];
    const auto label = pair_label(u, v) + "; w = " + w.to_string();
    const auto t_uv = torsion_dorfman(theta, n, u, v);
    const auto t_vu = torsion_dorfman(theta, n, v, u);
    const auto uv = pairing(u, v);
    const auto u_n2v = pairing(u, apply(n2, v));

    report.expect_zero("courant-minus-dorfman",
                       torsion_courant(theta, n, u, v) - t_uv -
                           Rational(1, 2) * (partial(theta, u_n2v) - apply(n2, partial(theta, uv))),
                       label);
    report.expect_zero("symmetric-part", t_uv + t_vu - apply(n2, partial(theta, uv)) + partial(theta, u_n2v), label);
    report.expect_zero("three-tensor",
                       pairing(t_uv, w) + pairing(torsion_dorfman(theta, n, u, w), v) -
                           pairing(apply(n2, br(theta, u, w)) - br(theta, u, apply(n2, w)), v),
                       label);
    for (const auto& f : functions) {
      const auto df = partial(theta, f);
      const auto flabel = label + "; f = " + f.to_string();
      report.expect_zero("f-linearity-left",
                         torsion_dorfman(theta, n, mul(f, u), v) - mul(f, t_uv) - mul(uv, apply(n2, df)) +
                             mul(u_n2v, df),
                         flabel);
      report.expect_zero("f-linearity-right", torsion_dorfman(theta, n, u, mul(f, v)) - mul(f, t_uv), flabel);
    }
  }
  return report;
}

std::optional<CpsInfo> cps_check(const Endomorphism& n) {
  auto lambda = scalar_value(apply_square(n));
  if (!lambda) return std::nullopt;
  CpsInfo info;
  info.lambda = *lambda;
  info.epsilon = *lambda > 0 ? 1 : (*lambda < 0 ? -1 : 0);
  info.scale = rational_sqrt(*lambda < 0 ? Rational(-*lambda) : *lambda);
  return info;
}

GradedPoly torsion_tensor(const GradedPoly& theta, const GradedPoly& n_lift, const Rational& lambda) {
  const auto k = poisson_bracket(poisson_bracket(n_lift, theta), n_lift);
  return Rational(-1, 2) * (k + lambda * theta);
}

GradedPoly torsion_tensor(const GradedPoly& theta, const Endomorphism& n) {
  const auto lift = lift_endo(n);
  const auto cps = cps_check(n);
  if (!cps) throw NotCps();
  return torsion_tensor(theta, lift, cps->lambda);
}

CheckReport check_torsion_tensor(const GradedPoly& theta, const Endomorphism& n, int max_q_degree) {
  const auto tensor = torsion_tensor(theta, n);
  const auto basis = basis_sections(theta.signature(), max_q_degree);
  CheckReport report("torsion-closed-form");
  for (const auto& u : basis)
    for (const auto& v : basis)
      report.expect_zero("closed form vs elementwise",
                         poisson_bracket(poisson_bracket(u, tensor), v) - torsion_dorfman(theta, n, u, v),
                         pair_label(u, v));
  return report;
}

std::optional<Rational> proportionality(const GradedPoly& k, const GradedPoly& theta) {
  if (theta.is_zero()) {
    if (k.is_zero()) return Rational(0);
    return std::nullopt;
  }
  const auto& [m, coeff] = *theta.terms().begin();
  const Rational c = k.coefficient(m) / coeff;
  if (k == c * theta) return c;
  return std::nullopt;
}

TensorReport classify(const CourantStructure& c, const Endomorphism& n) {
  TensorReport report;
  const auto lift = lift_endo(n);
  report.skew = true;
  const auto& theta = c.theta();
  const auto k = poisson_bracket(poisson_bracket(lift, theta), lift);
  const auto dk = poisson_bracket(theta, k);
  report.weak_deforming = dk.is_zero();
  if (!report.weak_deforming) report.witnesses.push_back({"d_theta({{N,theta},N})", dk});
  report.deforming_factor = proportionality(k, theta);
  if (!report.deforming_factor) report.witnesses.push_back({"{{N,theta},N}", k});

  report.cps = cps_check(n);
  if (report.cps) {
    const auto tensor = Rational(-1, 2) * (k + report.cps->lambda * theta);
    report.nijenhuis = tensor.is_zero();
    const auto dt = poisson_bracket(theta, tensor);
    report.weak_nijenhuis = dt.is_zero();
    if (!tensor.is_zero()) report.witnesses.push_back({"torsion", tensor});
    if (!dt.is_zero()) report.witnesses.push_back({"d_theta(torsion)", dt});
  }
  return report;
}

DeformReport deform(const CourantStructure& c, const Endomorphism& n) {
  DeformReport report{poisson_bracket(lift_endo(n), c.theta()), false, GradedPoly(c.signature()), std::nullopt};
  report.master_defect = poisson_bracket(report.theta_prime, report.theta_prime);
  report.valid = report.master_defect.is_zero();
  if (report.valid) {
    const auto sum = c.theta() + report.theta_prime;
    report.sum_defect = poisson_bracket(sum, sum);
  }
  return report;
}

CheckReport is_morphism(const GradedPoly& theta_src, const GradedPoly& theta_dst, const Endomorphism& n,
                        std::span<const GradedPoly> samples, int max_q_degree) {
  const auto& sig = theta_src.signature();
  CheckReport report("morphism");
  auto check = [&](const GradedPoly& u, const GradedPoly& v) {
    report.expect_zero("bracket", apply(n, br(theta_src, u, v)) - br(theta_dst, apply(n, u), apply(n, v)),
                       pair_label(u, v));
  };
  const auto basis = basis_sections(sig, max_q_degree);
  for (const auto& u : basis)
    for (const auto& v : basis) check(u, v);
  for (std::size_t i = 0; i < samples.size(); ++i) check(samples[i], samples[(i + 1) % samples.size()]);
  for (const auto& f : base_monomials(sig, max_q_degree + 1))
    for (const auto& u : basis)
      report.expect_zero("anchor", derived_anchor(theta_src, u, f) - derived_anchor(theta_dst, apply(n, u), f),
                         "u = " + u.to_string() + "; f = " + f.to_string());
  return report;
}

}  // namespace clab
