#pragma once

// Outcome of an identity sweep: how many instances were checked and the first
// few counterexamples, each with the nonzero difference as witness.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "courantlab/graded_algebra.hpp"

namespace clab {

struct CheckFailure {
  std::string identity;
  std::string inputs;
  std::string witness;
};

class CheckReport {
 public:
  static constexpr std::size_t kMaxStoredFailures = 8;

  CheckReport() = default;
  explicit CheckReport(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::size_t checks() const { return checks_; }
  std::size_t failure_count() const { return failure_count_; }
  const std::vector<CheckFailure>& failures() const { return failures_; }
  bool passed() const { return failure_count_ == 0; }

  /// Records one instance of `identity`; it holds iff `difference` is zero.
  bool expect_zero(const std::string& identity, const GradedPoly& difference, const std::string& inputs = {});
  bool expect(const std::string& identity, bool ok, const std::string& inputs = {}, const std::string& witness = {});

  void merge(const CheckReport& other);

 private:
  std::string name_;
  std::size_t checks_ = 0;
  std::size_t failure_count_ = 0;
  std::vector<CheckFailure> failures_;
};

/// Runs body(i, report) for i in [0, n) and merges the per-index reports in
/// index order, so the result does not depend on scheduling.
template <typename Body>
CheckReport serial_sweep(const std::string& name, std::size_t n, Body&& body) {
  CheckReport out(name);
  for (std::size_t i = 0; i < n; ++i) {
    CheckReport local(name);
    body(i, local);
    out.merge(local);
  }
  return out;
}

template <typename Body>
CheckReport parallel_sweep(const std::string& name, std::size_t n, Body&& body) {
  std::vector<CheckReport> parts(n, CheckReport(name));
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i), parts[static_cast<std::size_t>(i)]);
  CheckReport out(name);
  for (const auto& part : parts) out.merge(part);
  return out;
}

}  // namespace clab
