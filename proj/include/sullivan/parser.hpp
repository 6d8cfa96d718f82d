#ifndef SULLIVAN_PARSER_HPP
#define SULLIVAN_PARSER_HPP

// Line-oriented model description language:
//
//   # comment
//   generator x 2
//   generator y 3
//   d y = x^2
//
// Polynomials are +/- separated terms `[coeff *] name[^exp] [* name[^exp] ...]`
// with integer or rational (`1/2`) coefficients. Products are read in the
// order written, so `b*a` equals `-a*b` for odd a, b. Generators without a
// `d` line have zero differential.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

enum class DiagnosticCategory { Syntax, UnknownGenerator, DegreeMismatch, Minimality, OrderViolation, DSquared };

inline const char* to_string(DiagnosticCategory c) {
  switch (c) {
    case DiagnosticCategory::Syntax: return "syntax";
    case DiagnosticCategory::UnknownGenerator: return "unknown-generator";
    case DiagnosticCategory::DegreeMismatch: return "degree-mismatch";
    case DiagnosticCategory::Minimality: return "minimality";
    case DiagnosticCategory::OrderViolation: return "order-violation";
    case DiagnosticCategory::DSquared: return "d-squared";
  }
  return "?";
}

struct Diagnostic {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  DiagnosticCategory category = DiagnosticCategory::Syntax;
  std::string message;

  std::string format(const std::string& origin = "") const {
    std::ostringstream os;
    if (!origin.empty()) os << origin << ":";
    os << line << ":" << column << ": " << to_string(category) << ": " << message;
    return os.str();
  }
};

struct ParseResult {
  std::optional<SullivanModel> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value() && diagnostics.empty(); }
};

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, int line, int offset = 0) : s_(text), line_(line), offset_(offset) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  int column() {
    skip_ws();
    return offset_ + static_cast<int>(pos_) + 1;
  }
  int line() const { return line_; }

  std::optional<std::string> identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      return std::string(s_.substr(start, pos_ - start));
    }
    return std::nullopt;
  }

  std::optional<std::string> digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) return std::nullopt;
    return std::string(s_.substr(start, pos_ - start));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int offset_;
};

struct ParseError {
  Diagnostic diag;
};

inline int small_int(LineCursor& cur, const std::string& what) {
  int col = cur.column();
  auto ds = cur.digits();
  if (!ds) throw ParseError{{cur.line(), col, DiagnosticCategory::Syntax, "expected " + what}};
  int v = 0;
  auto [ptr, ec] = std::from_chars(ds->data(), ds->data() + ds->size(), v);
  if (ec != std::errc() || v > 1000000)
    throw ParseError{{cur.line(), col, DiagnosticCategory::Syntax, what + " '" + *ds + "' is out of range"}};
  return v;
}

inline Polynomial parse_term(LineCursor& cur, const GradedAlgebra& alg) {
  Rational coeff = 1;
  Polynomial acc;
  if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    Integer num(*cur.digits());
    Integer den = 1;
    if (cur.eat('/')) {
      int col = cur.column();
      auto ds = cur.digits();
      if (!ds) throw ParseError{{cur.line(), col, DiagnosticCategory::Syntax, "expected denominator after '/'"}};
      den = Integer(*ds);
      if (den == 0) throw ParseError{{cur.line(), col, DiagnosticCategory::Syntax, "zero denominator"}};
    }
    coeff = Rational(num, den);
    coeff.canonicalize();
    if (!cur.eat('*')) return Polynomial::constant(coeff);
  }
  acc = Polynomial::constant(coeff);
  do {
    int col = cur.column();
    auto name = cur.identifier();
    if (!name) throw ParseError{{cur.line(), col, DiagnosticCategory::Syntax, "expected a generator name"}};
    auto id = alg.find(*name);
    if (!id)
      throw ParseError{{cur.line(), col, DiagnosticCategory::UnknownGenerator, "unknown generator '" + *name + "'"}};
    int exp = 1;
    if (cur.eat('^')) exp = small_int(cur, "exponent");
    for (int i = 0; i < exp; ++i) acc = multiply(alg, acc, Polynomial(Monomial::generator(*id)));
  } while (cur.eat('*'));
  return acc;
}

inline Polynomial parse_polynomial_cursor(LineCursor& cur, const GradedAlgebra& alg) {
  Polynomial out;
  bool negative = false;
  if (cur.eat('-'))
    negative = true;
  else
    cur.eat('+');
  while (true) {
    if (cur.at_end()) throw ParseError{{cur.line(), cur.column(), DiagnosticCategory::Syntax, "expected a term"}};
    Polynomial t = parse_term(cur, alg);
    out += negative ? -t : t;
    if (cur.at_end()) break;
    if (cur.eat('+'))
      negative = false;
    else if (cur.eat('-'))
      negative = true;
    else
      throw ParseError{{cur.line(), cur.column(), DiagnosticCategory::Syntax,
                        std::string("unexpected character '") + cur.peek() + "'"}};
  }
  return out;
}

}  // namespace detail

/// Parse a polynomial over a known generator set (e.g. a class given on the command line).
inline std::variant<Polynomial, Diagnostic> parse_polynomial(const GradedAlgebra& alg, std::string_view text) {
  detail::LineCursor cur(text, 1);
  try {
    return detail::parse_polynomial_cursor(cur, alg);
  } catch (const detail::ParseError& e) {
    return e.diag;
  }
}

inline ParseResult parse_model(std::string_view source) {
  ParseResult res;
  std::vector<Generator> gens;
  std::vector<int> gen_line;
  struct DLine {
    int line, column;
    std::string name;
    std::string_view text;
    int text_offset;
  };
  std::vector<DLine> dlines;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t nl = source.find('\n', pos);
    std::string_view line = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    detail::LineCursor cur(line, lineno);
    if (cur.at_end()) continue;
    try {
      int col = cur.column();
      auto kw = cur.identifier();
      if (kw == "generator") {
        int ncol = cur.column();
        auto name = cur.identifier();
        if (!name) throw detail::ParseError{{lineno, ncol, DiagnosticCategory::Syntax, "expected a generator name"}};
        for (const auto& g : gens)
          if (g.name == *name)
            throw detail::ParseError{{lineno, ncol, DiagnosticCategory::Syntax, "generator '" + *name + "' declared twice"}};
        int dcol = cur.column();
        int deg = detail::small_int(cur, "degree");
        if (!cur.at_end())
          throw detail::ParseError{{lineno, cur.column(), DiagnosticCategory::Syntax, "trailing text after degree"}};
        if (deg < 2)
          throw detail::ParseError{{lineno, dcol, DiagnosticCategory::DegreeMismatch,
                                    "generator degree must be at least 2 (simply connected models)"}};
        if (!dlines.empty())
          throw detail::ParseError{{lineno, col, DiagnosticCategory::Syntax, "generator declared after differential lines"}};
        if (!gens.empty() && gens.back().degree > deg)
          res.diagnostics.push_back({lineno, dcol, DiagnosticCategory::OrderViolation,
                                     "generators must be declared in nondecreasing degree"});
        gens.push_back({static_cast<GeneratorId>(gens.size()), *name, deg});
        gen_line.push_back(lineno);
      } else if (kw == "d") {
        int ncol = cur.column();
        auto name = cur.identifier();
        if (!name) throw detail::ParseError{{lineno, ncol, DiagnosticCategory::Syntax, "expected a generator name after 'd'"}};
        if (!cur.eat('=')) throw detail::ParseError{{lineno, cur.column(), DiagnosticCategory::Syntax, "expected '='"}};
        int pcol = cur.column();
        auto off = static_cast<std::size_t>(pcol - 1);
        dlines.push_back({lineno, ncol, *name, line.substr(off), pcol - 1});
      } else {
        throw detail::ParseError{{lineno, col, DiagnosticCategory::Syntax, "expected 'generator' or 'd'"}};
      }
    } catch (const detail::ParseError& e) {
      res.diagnostics.push_back(e.diag);
    }
  }

  GradedAlgebra alg(gens);
  Derivation d = Derivation::zero(alg, 1);
  std::vector<int> d_line(gens.size(), 0), d_col(gens.size(), 0);
  for (const auto& dl : dlines) {
    try {
      auto id = alg.find(dl.name);
      if (!id)
        throw detail::ParseError{
            {dl.line, dl.column, DiagnosticCategory::UnknownGenerator, "unknown generator '" + dl.name + "'"}};
      auto i = static_cast<std::size_t>(*id);
      if (d_line[i] != 0)
        throw detail::ParseError{{dl.line, dl.column, DiagnosticCategory::Syntax, "differential of '" + dl.name +
                                                                                       "' given twice"}};
      detail::LineCursor cur(dl.text, dl.line, dl.text_offset);
      d.values[i] = detail::parse_polynomial_cursor(cur, alg);
      d_line[i] = dl.line;
      d_col[i] = dl.text_offset + 1;
    } catch (const detail::ParseError& e) {
      res.diagnostics.push_back(e.diag);
    }
  }
  if (!res.diagnostics.empty()) return res;

  SullivanModel model(alg, d);
  auto report = validate(model);
  for (const auto& is : report.issues) {
    auto i = static_cast<std::size_t>(is.generator);
    int line = d_line[i] != 0 ? d_line[i] : gen_line[i];
    int col = d_line[i] != 0 ? d_col[i] : 1;
    DiagnosticCategory cat = DiagnosticCategory::Syntax;
    switch (is.invariant) {
      case Invariant::GeneratorDegree:
      case Invariant::DegreeHomogeneous: cat = DiagnosticCategory::DegreeMismatch; break;
      case Invariant::Minimality: cat = DiagnosticCategory::Minimality; break;
      case Invariant::DegreeOrder:
      case Invariant::Nilpotence: cat = DiagnosticCategory::OrderViolation; break;
      case Invariant::DSquared: cat = DiagnosticCategory::DSquared; break;
    }
    // Declaration-order problems were already reported while reading.
    if (is.invariant == Invariant::DegreeOrder) continue;
    res.diagnostics.push_back({line, col, cat, is.message});
  }
  if (res.diagnostics.empty()) res.model = std::move(model);
  return res;
}

/// Canonical source text; parse_model(format_model(m)) reproduces m exactly.
inline std::string format_model(const SullivanModel& model) {
  std::string s;
  for (const auto& g : model.algebra.generators()) s += "generator " + g.name + " " + std::to_string(g.degree) + "\n";
  for (const auto& g : model.algebra.generators())
    if (!model.d(g.id).is_zero()) s += "d " + g.name + " = " + format_polynomial(model.algebra, model.d(g.id)) + "\n";
  return s;
}

}  // namespace sullivan

#endif  // SULLIVAN_PARSER_HPP
