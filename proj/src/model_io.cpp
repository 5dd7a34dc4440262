#include "courantlab/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace clab {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class ExprParser {
 public:
  ExprParser(std::string_view text, const SignaturePtr& sig, int line, int column0)
      : text_(text), sig_(sig), line_(line), column0_(column0) {}

  GradedPoly parse() {
    skip_space();
    if (at_end()) fail("expected an expression");
    auto out = expr();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, column0_ + static_cast<int>(pos_) + 1, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Consumes '+', '-' or the unicode minus; returns +1/-1, or 0 if none.
  int sign() {
    skip_space();
    if (at_end()) return 0;
    if (text_[pos_] == '+') {
      ++pos_;
      return 1;
    }
    if (text_[pos_] == '-') {
      ++pos_;
      return -1;
    }
    if (text_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) {
      pos_ += kUnicodeMinus.size();
      return -1;
    }
    return 0;
  }

  GradedPoly expr() {
    GradedPoly out(sig_);
    const int s = sign();
    out = term();
    if (s < 0) out = -out;
    for (;;) {
      const auto save = pos_;
      const int t = sign();
      if (t == 0) {
        pos_ = save;
        break;
      }
      skip_space();
      if (at_end()) fail("expected a term after '" + std::string(t > 0 ? "+" : "-") + "'");
      const auto rhs = term();
      out = t > 0 ? out + rhs : out - rhs;
    }
    return out;
  }

  bool factor_starts() {
    skip_space();
    if (at_end()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '*' || digit(c) || ident_start(c) || c == '.';
  }

  GradedPoly term() {
    auto out = factor();
    while (factor_starts()) {
      if (text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (at_end()) fail("expected a factor after '*'");
      }
      out = mul(out, factor());
    }
    return out;
  }

  GradedPoly factor() {
    auto base = primary();
    skip_space();
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      const auto start = pos_;
      while (!at_end() && digit(text_[pos_])) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      if (pos_ - start > 4) fail("exponent too large");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      auto out = GradedPoly::constant(sig_, 1);
      for (int i = 0; i < e; ++i) out = mul(out, base);
      return out;
    }
    return base;
  }

  GradedPoly primary() {
    skip_space();
    if (at_end()) fail("expected a factor");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      skip_space();
      auto inner = expr();
      skip_space();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (const int s = sign(); s != 0) {
      auto inner = primary();
      return s < 0 ? -inner : inner;
    }
    if (digit(c) || c == '.') return number();
    if (ident_start(c)) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  GradedPoly number() {
    const auto start = pos_;
    while (!at_end() && digit(text_[pos_])) ++pos_;
    if (!at_end() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      if (text_[pos_] == '.' || (pos_ + 1 < text_.size() && (digit(text_[pos_ + 1]) || text_[pos_ + 1] == '-')))
        fail("floating-point literals are not accepted; write a fraction");
    }
    if (!at_end() && text_[pos_] == '/') {
      ++pos_;
      const auto den = pos_;
      while (!at_end() && digit(text_[pos_])) ++pos_;
      if (den == pos_) fail("expected a denominator");
      if (!at_end() && text_[pos_] == '.') fail("floating-point literals are not accepted; write a fraction");
    }
    const auto literal = text_.substr(start, pos_ - start);
    const auto value = parse_rational(literal);
    if (!value) {
      pos_ = start;
      fail("invalid rational literal '" + std::string(literal) + "'");
    }
    return GradedPoly::constant(sig_, *value);
  }

  GradedPoly identifier() {
    const auto start = pos_;
    while (!at_end() && ident_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (auto a = sig_->find_odd(name)) return GradedPoly::odd(sig_, *a);
    if (name.size() > 1 && (name[0] == 'q' || name[0] == 'p')) {
      bool numeric = true;
      for (std::size_t i = 1; i < name.size(); ++i) numeric = numeric && digit(name[i]);
      if (numeric && name[1] != '0' && name.size() < 4) {
        const int i = std::stoi(name.substr(1)) - 1;
        if (i < sig_->base_dim()) return name[0] == 'q' ? GradedPoly::q(sig_, i) : GradedPoly::p(sig_, i);
      }
    }
    pos_ = start;
    fail("unknown generator '" + name + "'");
  }

  std::string_view text_;
  const SignaturePtr& sig_;
  int line_;
  int column0_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Line {
  int number;
  std::string text;  // comment stripped, not trimmed
};

struct Section {
  std::string name;
  int line;
  std::vector<Line> lines;
};

// Splits on commas, returning each cell with its 0-based starting column.
std::vector<std::pair<std::string, int>> cells(const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    std::size_t b = start;
    while (b < end && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    out.emplace_back(trim(std::string_view(text).substr(start, end - start)), static_cast<int>(b));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> key_value(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) return std::nullopt;
  auto key = trim(std::string_view(text).substr(0, eq));
  if (key.empty() || !ident_start(key[0])) return std::nullopt;
  for (char c : key)
    if (!ident_char(c)) return std::nullopt;
  return std::make_pair(key, trim(std::string_view(text).substr(eq + 1)));
}

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) { split(text); }

  Model parse() {
    Model model{"", nullptr, GradedPoly(nullptr), std::nullopt, std::nullopt, {}, {}};
    for (const auto& line : preamble_) {
      const auto kv = key_value(line.text);
      if (!kv || kv->first != "name") throw ParseError(line.number, 1, "expected 'name = ...' or a [section]");
      model.name = kv->second;
    }
    model.sig = signature();
    model.theta = GradedPoly(model.sig);

    const auto* theta = find("theta");
    const auto* mu = find("mu");
    const auto* gamma = find("gamma");
    if (theta && (mu || gamma))
      throw ParseError((mu ? mu : gamma)->line, 1, "give either [theta] or [mu]/[gamma], not both");
    if (gamma && !mu) throw ParseError(gamma->line, 1, "[gamma] needs a [mu] section");
    if (theta) model.theta = terms(*theta, model.sig);
    if (mu) {
      if (!model.sig->labelled()) throw ParseError(mu->line, 1, "[mu] needs A/A* labels on the odd generators");
      model.mu = terms(*mu, model.sig);
      model.gamma = gamma ? terms(*gamma, model.sig) : GradedPoly(model.sig);
      model.theta = *model.mu + *model.gamma;
    }

    std::optional<DoubleFrame> frame;
    if (model.sig->labelled()) frame.emplace(model.sig);
    for (const auto& s : sections_) {
      if (s.name.rfind("endomorphisms.", 0) == 0) {
        model.endomorphisms.emplace(sub_name(s), endomorphism(s, model.sig, frame));
      } else if (s.name.rfind("tensors.", 0) == 0) {
        if (!frame) throw ParseError(s.line, 1, "tensors need a signature with A/A* labels");
        model.tensors.emplace(sub_name(s), tensor(s, *frame));
      } else if (s.name != "signature" && s.name != "pairing" && s.name != "theta" && s.name != "mu" &&
                 s.name != "gamma") {
        throw ParseError(s.line, 1, "unknown section [" + s.name + "]");
      }
    }
    return model;
  }

 private:
  void split(std::string_view text) {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string raw(text.substr(start, end - start));
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      start = end + 1;
      const auto t = trim(raw);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') throw ParseError(number, static_cast<int>(t.size()), "expected ']'");
        const auto name = trim(std::string_view(t).substr(1, t.size() - 2));
        if (name.empty()) throw ParseError(number, 2, "empty section name");
        for (const auto& s : sections_)
          if (s.name == name) throw ParseError(number, 1, "duplicate section [" + name + "]");
        sections_.push_back({name, number, {}});
        continue;
      }
      if (sections_.empty())
        preamble_.push_back({number, raw});
      else
        sections_.back().lines.push_back({number, raw});
    }
  }

  const Section* find(const std::string& name) const {
    for (const auto& s : sections_)
      if (s.name == name) return &s;
    return nullptr;
  }

  static std::string sub_name(const Section& s) {
    auto name = s.name.substr(s.name.find('.') + 1);
    if (name.empty()) throw ParseError(s.line, 1, "section [" + s.name + "] needs a name");
    return name;
  }

  SignaturePtr signature() const {
    const auto* s = find("signature");
    if (!s) throw ParseError(1, 1, "missing [signature] section");
    std::optional<int> base_dim;
    std::vector<OddGenerator> odd;
    bool have_odd = false;
    for (const auto& line : s->lines) {
      const auto kv = key_value(line.text);
      if (!kv) throw ParseError(line.number, 1, "expected 'key = value'");
      if (kv->first == "base_dim") {
        if (kv->second.empty() || kv->second.size() > 2 || !std::all_of(kv->second.begin(), kv->second.end(), digit))
          throw ParseError(line.number, static_cast<int>(line.text.find('=')) + 2, "base_dim must be an integer");
        base_dim = std::stoi(kv->second);
      } else if (kv->first == "odd") {
        have_odd = true;
        const auto offset = static_cast<int>(line.text.find('=')) + 1;
        if (trim(kv->second).empty()) continue;
        for (const auto& [cell, col] : cells(line.text.substr(static_cast<std::size_t>(offset)))) {
          OddGenerator gen;
          const auto colon = cell.find(':');
          gen.name = trim(std::string_view(cell).substr(0, colon));
          if (colon != std::string::npos) {
            const auto label = trim(std::string_view(cell).substr(colon + 1));
            if (label == "A")
              gen.label = OddLabel::A;
            else if (label == "A*")
              gen.label = OddLabel::ADual;
            else
              throw ParseError(line.number, offset + col + 1, "label must be A or A*");
          }
          if (gen.name.empty()) throw ParseError(line.number, offset + col + 1, "empty generator name");
          for (const auto& other : odd)
            if (other.name == gen.name)
              throw ParseError(line.number, offset + col + 1, "duplicate generator '" + gen.name + "'");
          odd.push_back(gen);
        }
      } else {
        throw ParseError(line.number, 1, "unknown key '" + kv->first + "'");
      }
    }
    if (!base_dim) throw ParseError(s->line, 1, "[signature] needs base_dim");
    if (!have_odd) throw ParseError(s->line, 1, "[signature] needs odd");

    const auto n = odd.size();
    RationalMatrix g(n, n, Rational(0));
    const auto* p = find("pairing");
    if (!p) {
      if (n > 0) throw ParseError(s->line, 1, "missing [pairing] section");
    } else {
      if (p->lines.size() != n)
        throw ParseError(p->line, 1, "pairing needs " + std::to_string(n) + " rows");
      for (std::size_t r = 0; r < n; ++r) {
        const auto& line = p->lines[r];
        const auto row = cells(line.text);
        if (row.size() != n)
          throw ParseError(line.number, 1, "pairing row needs " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) {
          const auto v = parse_rational(row[c].first);
          if (!v) throw ParseError(line.number, row[c].second + 1, "expected a rational literal");
          g(r, c) = *v;
        }
      }
    }
    try {
      return make_signature(*base_dim, std::move(odd), std::move(g));
    } catch (const InvalidSignature& e) {
      throw ParseError(s->line, 1, e.what());
    }
  }

  static GradedPoly terms(const Section& s, const SignaturePtr& sig) {
    GradedPoly out(sig);
    for (const auto& line : s.lines) out += parse_expr(line.text, sig, line.number, 0);
    return out;
  }

  static FunctionMatrix matrix(const Section& s, const SignaturePtr& sig, std::size_t skip) {
    const auto rows = s.lines.size() - skip;
    FunctionMatrix m(rows, rows, GradedPoly(sig));
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& line = s.lines[r + skip];
      const auto row = cells(line.text);
      if (row.size() != rows)
        throw ParseError(line.number, 1, "expected " + std::to_string(rows) + " entries in this row");
      for (std::size_t c = 0; c < rows; ++c) {
        auto v = parse_expr(row[c].first, sig, line.number, row[c].second);
        if (!v.is_homogeneous_of(0)) throw ParseError(line.number, row[c].second + 1, "entries must be functions of q");
        m(r, c) = std::move(v);
      }
    }
    return m;
  }

  static ModelEndomorphism endomorphism(const Section& s, const SignaturePtr& sig,
                                        const std::optional<DoubleFrame>& frame) {
    const auto m = matrix(s, sig, 0);
    const auto n = m.rows();
    if (n == idx(sig->odd_count())) {
      Endomorphism e(sig);
      for (int b = 0; b < sig->odd_count(); ++b)
        for (int a = 0; a < sig->odd_count(); ++a) e.at(b, a) = m(idx(b), idx(a));
      std::optional<FunctionMatrix> block;
      return {e, block};
    }
    if (frame && n == idx(frame->rank())) return {double_endo(*frame, m), m};
    throw ParseError(s.line, 1,
                     "endomorphism must be " + std::to_string(sig->odd_count()) + "x" +
                         std::to_string(sig->odd_count()) +
                         (frame ? " or " + std::to_string(frame->rank()) + "x" + std::to_string(frame->rank()) : ""));
  }

  static ModelTensor tensor(const Section& s, const DoubleFrame& frame) {
    ModelTensor t;
    const auto kv = s.lines.empty() ? std::nullopt : key_value(s.lines.front().text);
    if (!kv || kv->first != "kind") throw ParseError(s.line, 1, "tensor section starts with 'kind = bivector|form'");
    if (kv->second == "bivector")
      t.kind = TensorKind::bivector;
    else if (kv->second == "form")
      t.kind = TensorKind::form;
    else
      throw ParseError(s.lines.front().number, 1, "kind must be bivector or form");
    t.matrix = matrix(s, frame.signature(), 1);
    if (t.matrix.rows() != idx(frame.rank()))
      throw ParseError(s.line, 1, "tensor must be " + std::to_string(frame.rank()) + "x" + std::to_string(frame.rank()));
    if (!is_antisymmetric(t.matrix)) throw ParseError(s.line, 1, "tensor matrix must be antisymmetric");
    return t;
  }

  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  std::vector<Line> preamble_;
  std::vector<Section> sections_;
};

void write_matrix(std::ostringstream& out, const FunctionMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << m(r, c).to_string();
    out << "\n";
  }
}

}  // namespace

GradedPoly parse_expr(std::string_view text, const SignaturePtr& sig, int line, int column0) {
  return ExprParser(text, sig, line, column0).parse();
}

DoubleModel Model::double_model() const {
  if (!mu) throw AlgebraError("model '" + name + "' is not a double: it has no [mu] section");
  return {DoubleFrame(sig), *mu, gamma ? *gamma : GradedPoly(sig)};
}

ModelEndomorphism Model::endomorphism(const std::string& n) const {
  if (auto it = endomorphisms.find(n); it != endomorphisms.end()) return it->second;
  if (n == "0") return {Endomorphism(sig), std::nullopt};
  if (n == "Id") return {Endomorphism::identity(sig), std::nullopt};
  throw std::out_of_range("model '" + name + "' has no endomorphism '" + n + "'");
}

const ModelTensor& Model::tensor(const std::string& n) const {
  if (auto it = tensors.find(n); it != tensors.end()) return it->second;
  throw std::out_of_range("model '" + name + "' has no tensor '" + n + "'");
}

Model parse_model_text(std::string_view text) { return ModelParser(text).parse(); }

Model parse_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_text(buffer.str());
}

std::string serialize_model(const Model& model) {
  std::ostringstream out;
  const auto& sig = *model.sig;
  if (!model.name.empty()) out << "name = " << model.name << "\n";
  out << "[signature]\nbase_dim = " << sig.base_dim() << "\nodd = ";
  for (int a = 0; a < sig.odd_count(); ++a) {
    const auto& gen = sig.odd()[static_cast<std::size_t>(a)];
    out << (a ? ", " : "") << gen.name;
    if (gen.label != OddLabel::none) out << ":" << label_name(gen.label);
  }
  out << "\n";
  if (sig.odd_count() > 0) {
    out << "[pairing]\n";
    for (int r = 0; r < sig.odd_count(); ++r) {
      for (int c = 0; c < sig.odd_count(); ++c) out << (c ? ", " : "") << to_string(sig.pairing(r, c));
      out << "\n";
    }
  }
  if (model.mu) {
    out << "[mu]\n" << model.mu->to_string() << "\n";
    if (model.gamma && !model.gamma->is_zero()) out << "[gamma]\n" << model.gamma->to_string() << "\n";
  } else {
    out << "[theta]\n" << model.theta.to_string() << "\n";
  }
  for (const auto& [name, e] : model.endomorphisms) {
    out << "[endomorphisms." << name << "]\n";
    if (e.block) {
      write_matrix(out, *e.block);
    } else {
      FunctionMatrix m(static_cast<std::size_t>(e.full.size()), static_cast<std::size_t>(e.full.size()),
                       GradedPoly(model.sig));
      for (int b = 0; b < e.full.size(); ++b)
        for (int a = 0; a < e.full.size(); ++a) m(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = e.full.at(b, a);
      write_matrix(out, m);
    }
  }
  for (const auto& [name, t] : model.tensors) {
    out << "[tensors." << name << "]\nkind = " << (t.kind == TensorKind::bivector ? "bivector" : "form") << "\n";
    write_matrix(out, t.matrix);
  }
  return out.str();
}

bool same_model(const Model& a, const Model& b) {
  if (a.name != b.name || !(*a.sig == *b.sig)) return false;
  if (a.theta.to_string() != b.theta.to_string()) return false;
  if (a.mu.has_value() != b.mu.has_value()) return false;
  if (a.mu && (a.mu->to_string() != b.mu->to_string() || a.gamma->to_string() != b.gamma->to_string())) return false;
  if (a.endomorphisms.size() != b.endomorphisms.size() || a.tensors.size() != b.tensors.size()) return false;
  for (const auto& [name, e] : a.endomorphisms) {
    const auto it = b.endomorphisms.find(name);
    if (it == b.endomorphisms.end() || e.full.to_string() != it->second.full.to_string()) return false;
    if (e.block.has_value() != it->second.block.has_value()) return false;
  }
  for (const auto& [name, t] : a.tensors) {
    const auto it = b.tensors.find(name);
    if (it == b.tensors.end() || t.kind != it->second.kind || to_string(t.matrix) != to_string(it->second.matrix))
      return false;
  }
  return true;
}

}  // namespace clab
