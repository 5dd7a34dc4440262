#include "courantlab/models.hpp"

#include <stdexcept>

#include "builtin_models.inc"

namespace clab {

std::vector<std::string> builtin_model_names() {
  std::vector<std::string> out;
  for (const auto& entry : kBuiltinModels) out.emplace_back(entry.name);
  return out;
}

std::string_view builtin_model_text(std::string_view name) {
  for (const auto& entry : kBuiltinModels)
    if (entry.name == name) return entry.text;
  throw std::out_of_range("no builtin model '" + std::string(name) + "'");
}

Model builtin_model(std::string_view name) { return parse_model_text(builtin_model_text(name)); }

}  // namespace clab
