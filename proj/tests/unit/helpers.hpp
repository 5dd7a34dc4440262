#pragma once

#include <string>
#include <vector>

#include "courantlab/graded_algebra.hpp"

namespace clab::test {

inline std::vector<OddGenerator> names(int count, const std::string& stem = "t") {
  std::vector<OddGenerator> out;
  for (int a = 0; a < count; ++a) out.push_back({stem + std::to_string(a + 1), OddLabel::none});
  return out;
}

/// g = Id on `odd` generators with `base` (q,p) pairs.
inline SignaturePtr euclidean(int odd, int base = 0) {
  return make_signature(base, names(odd), identity_matrix(static_cast<std::size_t>(odd)));
}

}  // namespace clab::test
