#pragma once

// The model files shipped in models/, compiled into the library.

#include <string>
#include <string_view>
#include <vector>

#include "courantlab/model_io.hpp"

namespace clab {

std::vector<std::string> builtin_model_names();
/// Throws std::out_of_range for unknown names.
std::string_view builtin_model_text(std::string_view name);
Model builtin_model(std::string_view name);

}  // namespace clab
