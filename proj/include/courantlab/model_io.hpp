#pragma once

// Text model files and polynomial expressions.
//
//   name = so3
//   [signature]
//   base_dim = 0
//   odd = t1, t2, t3            (or th:A, ta:A* for a double)
//   [pairing]
//   1, 0, 0
//   ...
//   [theta]                     (or [mu] and [gamma] on a double)
//   t1 t2 t3
//   [endomorphisms.N]           rows of the matrix: N(tau^a) = sum_b row_b[a] tau^b
//   0, 1, 0
//   ...
//   [tensors.pi]
//   kind = bivector             (or form)
//   0, 1
//   -1, 0
//
// Each line of a term section is an expression; the lines are summed.
// Endomorphisms of A x A size on a double are read as diag(N, -tN).

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "courantlab/bialgebroid.hpp"

namespace clab {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Rational literals, generator names, q1.., p1.., juxtaposition or '*',
/// '^' with a nonnegative integer exponent, parentheses, unary '+'/'-'.
/// Errors carry 1-based line/column, offset by `line` and `column0`.
GradedPoly parse_expr(std::string_view text, const SignaturePtr& sig, int line = 1, int column0 = 0);

struct ModelEndomorphism {
  Endomorphism full;
  /// The A-block when the file gave a rank x rank matrix.
  std::optional<FunctionMatrix> block;
};

enum class TensorKind { bivector, form };

struct ModelTensor {
  TensorKind kind = TensorKind::bivector;
  FunctionMatrix matrix;
};

struct Model {
  std::string name;
  SignaturePtr sig;
  GradedPoly theta;
  std::optional<GradedPoly> mu;
  std::optional<GradedPoly> gamma;
  std::map<std::string, ModelEndomorphism> endomorphisms;
  std::map<std::string, ModelTensor> tensors;

  bool is_double() const { return mu.has_value(); }
  /// Throws AlgebraError when the model has no [mu] section.
  DoubleModel double_model() const;
  /// Named endomorphism; "0" and "Id" are always available.
  /// Throws std::out_of_range for unknown names.
  ModelEndomorphism endomorphism(const std::string& name) const;
  const ModelTensor& tensor(const std::string& name) const;
};

Model parse_model_text(std::string_view text);
Model parse_model(const std::filesystem::path& path);
std::string serialize_model(const Model& model);

/// Same signature, structure, endomorphisms and tensors.
bool same_model(const Model& a, const Model& b);

}  // namespace clab
