#include "courantlab/report.hpp"

namespace clab {

bool CheckReport::expect_zero(const std::string& identity, const GradedPoly& difference, const std::string& inputs) {
  if (difference.is_zero()) {
    ++checks_;
    return true;
  }
  return expect(identity, false, inputs, difference.to_string());
}

bool CheckReport::expect(const std::string& identity, bool ok, const std::string& inputs, const std::string& witness) {
  ++checks_;
  if (ok) return true;
  ++failure_count_;
  if (failures_.size() < kMaxStoredFailures) failures_.push_back({identity, inputs, witness});
  return false;
}

void CheckReport::merge(const CheckReport& other) {
  checks_ += other.checks_;
  failure_count_ += other.failure_count_;
  for (const auto& f : other.failures_) {
    if (failures_.size() >= kMaxStoredFailures) break;
    failures_.push_back(f);
  }
}

}  // namespace clab
