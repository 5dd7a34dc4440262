#pragma once

// Seeded invariant sweeps over a model. Every random instance draws from its
// own sampler seeded by (seed, suite, index), so the parallel and serial
// runners produce identical reports.

#include <cstdint>
#include <string>
#include <vector>

#include "courantlab/irreducibility.hpp"
#include "courantlab/model_io.hpp"
#include "courantlab/sampling.hpp"

namespace clab {

struct SuiteOptions {
  std::uint64_t seed = 7;
  bool parallel = true;
};

struct SuiteResult {
  std::string name;
  bool applicable = true;
  std::string note;
  std::vector<CheckReport> reports;

  bool passed() const;
};

/// axioms, poisson, torsion-identities, theorem-A3, theorem-CNS, torsion-sum, deformations.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const Model& model, const std::string& name, const SuiteOptions& options = {});
/// `name` may be "all".
std::vector<SuiteResult> run_suites(const Model& model, const std::string& name, const SuiteOptions& options = {});

/// Independent seed for instance `index` of `stream`.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& stream, std::uint64_t index);

/// Graded symmetry, Leibniz rule, Jacobi identity and serial/parallel kernel
/// agreement on `triples` random homogeneous triples of degree <= max_degree.
CheckReport poisson_identity_sweep(const SignaturePtr& sig, std::uint64_t seed, std::size_t triples, int max_degree = 4,
                                   bool parallel = true);

/// A skew endomorphism with N^2 = lambda Id, built from random rational data.
struct CpsInstance {
  BlockEndomorphism block;
  Rational lambda;
  std::string kind;
};

/// Instances of every shape the rank allows: conjugated involutions (lambda = 1),
/// square-zero maps (0), complex structures (-1), bivector/form pairs and
/// scalar shifts, with random rescalings.
std::vector<CpsInstance> cps_instances(const DoubleFrame& frame, std::uint64_t seed, std::size_t count);

/// Random invertible constant matrix with entries from the sampler.
RationalMatrix random_invertible(Sampler& sampler, int n);

/// Constant antisymmetric m with n m = m tn (bivectors) or m n = tn m (forms).
std::vector<FunctionMatrix> commuting_bivectors(const DoubleFrame& frame, const FunctionMatrix& n);
std::vector<FunctionMatrix> commuting_forms(const DoubleFrame& frame, const FunctionMatrix& n);

/// A-endomorphisms with polynomial entries of degree <= max_q_degree whose
/// torsion for mu vanishes, found by testing `candidates` random matrices.
std::vector<FunctionMatrix> search_nijenhuis(const DoubleModel& db, std::uint64_t seed, std::size_t candidates,
                                             int max_q_degree);

}  // namespace clab
