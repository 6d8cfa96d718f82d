#ifndef SULLIVAN_ALGEBRA_HPP
#define SULLIVAN_ALGEBRA_HPP

// Free graded-commutative algebras Λ(V) = Exterior(V^odd) ⊗ Symmetric(V^even)
// over ℚ: monomials, polynomials, Koszul-signed products and derivations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using GeneratorId = int;

struct Generator {
  GeneratorId id = 0;
  std::string name;
  int degree = 0;

  bool odd() const { return degree % 2 != 0; }
  bool operator==(const Generator&) const = default;
};

/// Ordered generator set of a free graded-commutative algebra.
/// The position of a generator is its id; products are normalized to
/// ascending id order.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  explicit GradedAlgebra(std::vector<Generator> generators) : gens_(std::move(generators)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].id != static_cast<GeneratorId>(i))
        throw std::invalid_argument("generator ids must be consecutive from 0");
      if (gens_[i].degree < 1)
        throw std::invalid_argument("generator '" + gens_[i].name + "' has degree < 1");
    }
  }

  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(GeneratorId id) const { return gens_.at(static_cast<std::size_t>(id)); }
  int degree(GeneratorId id) const { return generator(id).degree; }
  bool odd(GeneratorId id) const { return generator(id).odd(); }

  std::optional<GeneratorId> find(const std::string& name) const {
    for (const auto& g : gens_)
      if (g.name == name) return g.id;
    return std::nullopt;
  }

  int max_degree() const {
    int m = 0;
    for (const auto& g : gens_) m = std::max(m, g.degree);
    return m;
  }

  bool operator==(const GradedAlgebra&) const = default;

 private:
  std::vector<Generator> gens_;
};

/// A monomial g_0^{e_0} ... g_{n-1}^{e_{n-1}} in canonical (ascending id) order.
/// Stored as a dense exponent vector with trailing zeros trimmed, so the unit
/// is the empty vector and the default ordering is lexicographic on exponents.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("negative exponent");
    trim();
  }

  static Monomial generator(GeneratorId id, int exponent = 1) {
    std::vector<int> e(static_cast<std::size_t>(id) + 1, 0);
    e.back() = exponent;
    return Monomial(std::move(e));
  }

  int exponent(GeneratorId id) const {
    auto i = static_cast<std::size_t>(id);
    return i < exps_.size() ? exps_[i] : 0;
  }
  const std::vector<int>& exponents() const { return exps_; }
  bool is_unit() const { return exps_.empty(); }

  int word_length() const {
    int s = 0;
    for (int e : exps_) s += e;
    return s;
  }

  int degree(const GradedAlgebra& alg) const {
    int s = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) s += exps_[i] * alg.degree(static_cast<GeneratorId>(i));
    return s;
  }

  /// Odd generators may appear at most once.
  bool admissible(const GradedAlgebra& alg) const {
    if (exps_.size() > alg.size()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (alg.odd(static_cast<GeneratorId>(i)) && exps_[i] > 1) return false;
    return true;
  }

  /// Sparse (generator, exponent) view.
  std::vector<std::pair<GeneratorId, int>> factors() const {
    std::vector<std::pair<GeneratorId, int>> out;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0) out.emplace_back(static_cast<GeneratorId>(i), exps_[i]);
    return out;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  std::vector<int> exps_;
};

struct SignedMonomial {
  int sign = 1;
  Monomial monomial;
};

/// a·b normalized to canonical order. Returns nullopt when an odd generator
/// occurs in both factors. The sign is (-1)^t with t the number of odd-odd
/// transpositions needed to sort the concatenated word.
inline std::optional<SignedMonomial> multiply_monomials(const GradedAlgebra& alg, const Monomial& a,
                                                        const Monomial& b) {
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  std::vector<int> out(std::max(ea.size(), eb.size()), 0);
  int transpositions = 0;
  int odd_in_b_below = 0;  // odd generators of b with id < current i
  for (std::size_t i = 0; i < out.size(); ++i) {
    int x = i < ea.size() ? ea[i] : 0;
    int y = i < eb.size() ? eb[i] : 0;
    bool odd = alg.odd(static_cast<GeneratorId>(i));
    if (odd) {
      if (x > 0 && y > 0) return std::nullopt;
      if (x > 0) transpositions += odd_in_b_below;
      if (y > 0) ++odd_in_b_below;
    }
    out[i] = x + y;
  }
  return SignedMonomial{transpositions % 2 == 0 ? 1 : -1, Monomial(std::move(out))};
}

/// Sparse ℚ-linear combination of monomials; never stores zero coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(const Monomial& m, Rational c = 1) { add_term(m, std::move(c)); }

  static Polynomial constant(Rational c) { return Polynomial(Monomial(), std::move(c)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * Rational(-1); }

  bool operator==(const Polynomial&) const = default;

  /// Component of word length exactly `length`.
  Polynomial length_component(int length) const {
    Polynomial out;
    for (const auto& [m, c] : terms_)
      if (m.word_length() == length) out.terms_.emplace(m, c);
    return out;
  }

  std::optional<int> min_word_length() const {
    std::optional<int> r;
    for (const auto& [m, c] : terms_) r = r ? std::min(*r, m.word_length()) : m.word_length();
    return r;
  }
  std::optional<int> max_word_length() const {
    std::optional<int> r;
    for (const auto& [m, c] : terms_) r = r ? std::max(*r, m.word_length()) : m.word_length();
    return r;
  }

  /// Common degree of all terms, or nullopt when zero or inhomogeneous.
  std::optional<int> homogeneous_degree(const GradedAlgebra& alg) const {
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
      int d = m.degree(alg);
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  /// Highest generator id occurring in any term, or nullopt for constants/zero.
  std::optional<GeneratorId> highest_generator() const {
    std::optional<GeneratorId> r;
    for (const auto& [m, c] : terms_)
      if (!m.is_unit()) {
        auto top = static_cast<GeneratorId>(m.exponents().size()) - 1;
        r = r ? std::max(*r, top) : top;
      }
    return r;
  }

 private:
  TermMap terms_;
};

inline Polynomial multiply(const GradedAlgebra& alg, const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) {
      auto prod = multiply_monomials(alg, a, b);
      if (!prod) continue;
      Rational c = ca * cb;
      if (prod->sign < 0) c = -c;
      out.add_term(prod->monomial, c);
    }
  return out;
}

/// All admissible monomials of degree exactly n, ascending lexicographic order
/// on exponent vectors. If `word_length` is given, only monomials of that length.
inline std::vector<Monomial> degree_basis(const GradedAlgebra& alg, int n,
                                          std::optional<int> word_length = std::nullopt) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<int> exps(alg.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining, int length) -> void {
    if (i == alg.size()) {
      if (remaining == 0 && (!word_length || *word_length == length)) out.emplace_back(exps);
      return;
    }
    int deg = alg.degree(static_cast<GeneratorId>(i));
    int cap = alg.odd(static_cast<GeneratorId>(i)) ? 1 : remaining / deg;
    cap = std::min(cap, remaining / deg);
    for (int e = 0; e <= cap; ++e) {
      if (word_length && length + e > *word_length) break;
      exps[i] = e;
      self(self, i + 1, remaining - e * deg, length + e);
    }
    exps[i] = 0;
  };
  rec(rec, 0, n, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// A derivation θ of the given degree, determined by its values on generators.
/// Extension to products: θ(ab) = θ(a)b + (-1)^{deg·|a|} aθ(b).
struct Derivation {
  int degree = 1;
  std::vector<Polynomial> values;  // indexed by generator id

  static Derivation zero(const GradedAlgebra& alg, int degree) {
    return Derivation{degree, std::vector<Polynomial>(alg.size())};
  }

  const Polynomial& on(GeneratorId id) const { return values.at(static_cast<std::size_t>(id)); }

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Polynomial& p) { return p.is_zero(); });
  }

  bool operator==(const Derivation&) const = default;
};

inline Polynomial apply_derivation(const GradedAlgebra& alg, const Derivation& theta, const Monomial& m) {
  Polynomial out;
  const auto& exps = m.exponents();
  int prefix_degree = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    int e = exps[i];
    if (e == 0) continue;
    auto id = static_cast<GeneratorId>(i);
    const Polynomial& value = theta.on(id);
    if (!value.is_zero()) {
      std::vector<int> left(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<int> right(exps.size(), 0);
      for (std::size_t j = i + 1; j < exps.size(); ++j) right[j] = exps[j];
      // θ(g^e) = e·g^{e-1}·θ(g) for even g; odd g has e = 1.
      Polynomial middle = multiply(alg, Polynomial(Monomial::generator(id, e - 1), Rational(e)), value);
      Polynomial term = multiply(alg, multiply(alg, Polynomial(Monomial(left)), middle), Polynomial(Monomial(right)));
      if ((theta.degree * prefix_degree) % 2 != 0) term *= Rational(-1);
      out += term;
    }
    prefix_degree += e * alg.degree(id);
  }
  return out;
}

inline Polynomial apply_derivation(const GradedAlgebra& alg, const Derivation& theta, const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) out += apply_derivation(alg, theta, m) * c;
  return out;
}

/// Human-readable form, e.g. "x^2*y - 1/2*a*b". Terms in canonical order.
inline std::string format_monomial(const GradedAlgebra& alg, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (auto [id, e] : m.factors()) {
    if (!s.empty()) s += "*";
    s += alg.generator(id).name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string format_polynomial(const GradedAlgebra& alg, const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += format_monomial(alg, m);
    }
  }
  return s;
}

}  // namespace sullivan

#endif  // SULLIVAN_ALGEBRA_HPP
