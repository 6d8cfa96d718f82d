#ifndef SULLIVAN_LINALG_HPP
#define SULLIVAN_LINALG_HPP

// Exact sparse linear algebra over ℚ. Subspaces are kept in reduced row
// echelon form, which makes them canonical: two spans are equal iff their
// bases are equal. Elimination runs fraction-free over ℤ (with content
// removal) and only the final back-substitution uses rationals.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan::linalg {

/// Sorted (index, value) pairs without zeros.
template <class T>
class BasicSparseVector {
 public:
  using Entry = std::pair<std::size_t, T>;

  BasicSparseVector() = default;

  /// Entries may be unsorted and contain zeros or repeated indices.
  explicit BasicSparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [i, v] : entries) {
      if (!entries_.empty() && entries_.back().first == i) {
        entries_.back().second += v;
        if (entries_.back().second == 0) entries_.pop_back();
      } else if (v != 0) {
        entries_.emplace_back(i, std::move(v));
      }
    }
  }

  static BasicSparseVector unit(std::size_t i) {
    BasicSparseVector v;
    v.entries_.emplace_back(i, T(1));
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  std::size_t lead() const { return entries_.front().first; }
  const T& lead_value() const { return entries_.front().second; }

  T get(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : T(0);
  }

  /// this = a·this + b·w
  void combine(const T& a, const T& b, const BasicSparseVector& w) {
    std::vector<Entry> out;
    out.reserve(entries_.size() + w.entries_.size());
    auto i = entries_.begin();
    auto j = w.entries_.begin();
    while (i != entries_.end() || j != w.entries_.end()) {
      if (j == w.entries_.end() || (i != entries_.end() && i->first < j->first)) {
        T v = a * i->second;
        if (v != 0) out.emplace_back(i->first, std::move(v));
        ++i;
      } else if (i == entries_.end() || j->first < i->first) {
        T v = b * j->second;
        if (v != 0) out.emplace_back(j->first, std::move(v));
        ++j;
      } else {
        T v = a * i->second + b * j->second;
        if (v != 0) out.emplace_back(i->first, std::move(v));
        ++i;
        ++j;
      }
    }
    entries_ = std::move(out);
  }

  void add_scaled(const BasicSparseVector& w, const T& c) { combine(T(1), c, w); }

  void scale(const T& c) {
    if (c == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second *= c;
  }

  /// Keep only entries whose index satisfies pred, reindexed by map (may drop).
  template <class Map>
  BasicSparseVector remap(Map&& map) const {
    std::vector<Entry> out;
    for (const auto& [i, v] : entries_)
      if (auto j = map(i)) out.emplace_back(*j, v);
    return BasicSparseVector(std::move(out));
  }

  bool operator==(const BasicSparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
};

using SparseVector = BasicSparseVector<Rational>;
using IntVector = BasicSparseVector<Integer>;

namespace detail {

inline IntVector to_primitive_integer(const SparseVector& v) {
  Integer l = 1;
  for (const auto& [i, c] : v.entries()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<IntVector::Entry> out;
  out.reserve(v.nnz());
  for (const auto& [i, c] : v.entries()) out.emplace_back(i, Integer(c.get_num() * (l / c.get_den())));
  IntVector r(std::move(out));
  return r;
}

inline void remove_content(IntVector& v) {
  if (v.is_zero()) return;
  Integer g = 0;
  for (const auto& [i, c] : v.entries()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (v.lead_value() < 0) g = -g;
  if (g != 1) {
    std::vector<IntVector::Entry> out;
    for (const auto& [i, c] : v.entries()) out.emplace_back(i, Integer(c / g));
    v = IntVector(std::move(out));
  }
}

/// Incremental fraction-free echelon form keyed by pivot column.
class IntegerEchelon {
 public:
  /// Reduce v against the current pivots while its lead is below `limit`.
  void reduce(IntVector& v, std::size_t limit) const {
    while (!v.is_zero() && v.lead() < limit) {
      auto it = rows_.find(v.lead());
      if (it == rows_.end()) return;
      const IntVector& r = it->second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), r.lead_value().get_mpz_t(), v.lead_value().get_mpz_t());
      Integer a = r.lead_value() / g;
      Integer b = -(v.lead_value() / g);
      v.combine(a, b, r);
      remove_content(v);
    }
  }

  /// Returns true if v was independent (and inserted).
  bool insert(IntVector v, std::size_t limit = static_cast<std::size_t>(-1)) {
    reduce(v, limit);
    if (v.is_zero() || v.lead() >= limit) {
      last_ = std::move(v);
      return false;
    }
    std::size_t p = v.lead();
    rows_.emplace(p, std::move(v));
    return true;
  }

  /// Residual of the last rejected insertion.
  const IntVector& last_residual() const { return last_; }

  const std::map<std::size_t, IntVector>& rows() const { return rows_; }

 private:
  std::map<std::size_t, IntVector> rows_;
  IntVector last_;
};

}  // namespace detail

/// A linear subspace of ℚ^ambient in canonical reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  static Subspace coordinate(std::size_t ambient, std::span<const std::size_t> indices) {
    Subspace s(ambient);
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (std::size_t i : idx) {
      if (i >= ambient) throw std::out_of_range("coordinate index outside ambient space");
      s.rows_.push_back(SparseVector::unit(i));
      s.pivots_.push_back(i);
    }
    return s;
  }

  static Subspace full(std::size_t ambient) {
    std::vector<std::size_t> idx(ambient);
    for (std::size_t i = 0; i < ambient; ++i) idx[i] = i;
    return coordinate(ambient, idx);
  }

  static Subspace span(std::size_t ambient, std::span<const SparseVector> vectors) {
    detail::IntegerEchelon ech;
    for (const auto& v : vectors) {
      if (!v.is_zero() && v.entries().back().first >= ambient)
        throw std::out_of_range("vector index outside ambient space");
      ech.insert(detail::to_primitive_integer(v));
    }
    return from_echelon(ambient, ech);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical remainder of v modulo this subspace (zero at every pivot column).
  SparseVector reduce(SparseVector v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Rational c = v.get(pivots_[k]);
      if (c != 0) v.add_scaled(rows_[k], -c);
    }
    return v;
  }

  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const SparseVector& v) { return contains(v); });
  }

  /// Coefficients of v in the RREF basis; nullopt when v is not in the span.
  std::optional<std::vector<Rational>> coordinates(const SparseVector& v) const {
    std::vector<Rational> c(rows_.size());
    SparseVector r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      c[k] = v.get(pivots_[k]);
      if (c[k] != 0) r.add_scaled(rows_[k], -c[k]);
    }
    if (!r.is_zero()) return std::nullopt;
    return c;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw std::invalid_argument("subspace sum over different ambient spaces");
    std::vector<SparseVector> all = a.rows_;
    all.insert(all.end(), b.rows_.begin(), b.rows_.end());
    return span(a.ambient_, all);
  }

  bool operator==(const Subspace&) const = default;

 private:
  static Subspace from_echelon(std::size_t ambient, const detail::IntegerEchelon& ech) {
    Subspace s(ambient);
    for (const auto& [p, row] : ech.rows()) {
      std::vector<SparseVector::Entry> entries;
      entries.reserve(row.nnz());
      for (const auto& [i, c] : row.entries()) entries.emplace_back(i, Rational(c, row.lead_value()));
      for (auto& e : entries) e.second.canonicalize();
      s.rows_.emplace_back(std::move(entries));
      s.pivots_.push_back(p);
    }
    // Back-substitution: clear each pivot column from every row above it.
    for (std::size_t k = s.rows_.size(); k-- > 0;) {
      for (std::size_t j = 0; j < k; ++j) {
        Rational c = s.rows_[j].get(s.pivots_[k]);
        if (c != 0) s.rows_[j].add_scaled(s.rows_[k], -c);
      }
    }
    return s;
  }

  std::size_t ambient_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Linear map stored as sparse columns.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseVector> columns;

  std::size_t cols() const { return columns.size(); }

  SparseVector apply(const SparseVector& x) const {
    SparseVector out;
    for (const auto& [j, c] : x.entries()) out.add_scaled(columns.at(j), c);
    return out;
  }

  Subspace image(const Subspace& domain) const {
    std::vector<SparseVector> imgs;
    imgs.reserve(domain.dim());
    for (const auto& v : domain.basis()) imgs.push_back(apply(v));
    return Subspace::span(rows, imgs);
  }

  Subspace image() const { return Subspace::span(rows, columns); }

  std::size_t rank() const { return image().dim(); }
};

/// Coefficient vectors c spanning {c : Σ c_i images_i = 0}. Each image must
/// live in ℚ^target_dim.
inline std::vector<SparseVector> relations(std::span<const SparseVector> images, std::size_t target_dim) {
  detail::IntegerEchelon ech;
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::vector<SparseVector::Entry> aug(images[i].entries().begin(), images[i].entries().end());
    aug.emplace_back(target_dim + i, Rational(1));
    SparseVector v(std::move(aug));
    if (!ech.insert(detail::to_primitive_integer(v), target_dim)) {
      const IntVector& r = ech.last_residual();
      std::vector<SparseVector::Entry> tag;
      for (const auto& [k, c] : r.entries()) tag.emplace_back(k - target_dim, Rational(c));
      out.emplace_back(std::move(tag));
    }
  }
  return out;
}

/// {x ∈ domain : map(x) = 0}, where `map` returns coordinates in ℚ^target_dim.
template <class Map>
Subspace kernel_on(const Subspace& domain, std::size_t target_dim, Map&& map) {
  std::vector<SparseVector> imgs;
  imgs.reserve(domain.dim());
  for (const auto& v : domain.basis()) imgs.push_back(map(v));
  std::vector<SparseVector> kernel;
  for (const auto& c : relations(imgs, target_dim)) {
    SparseVector x;
    for (const auto& [i, a] : c.entries()) x.add_scaled(domain.basis()[i], a);
    kernel.push_back(std::move(x));
  }
  return Subspace::span(domain.ambient_dim(), kernel);
}

/// numerator / denominator with canonical representatives: the RREF of the
/// numerator basis reduced modulo the denominator.
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(Subspace numerator, Subspace denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (!numerator_.contains(denominator_)) throw std::logic_error("subquotient denominator not contained in numerator");
    std::vector<SparseVector> rem;
    rem.reserve(numerator_.dim());
    for (const auto& v : numerator_.basis()) rem.push_back(denominator_.reduce(v));
    complement_ = Subspace::span(numerator_.ambient_dim(), rem);
    if (complement_.dim() + denominator_.dim() != numerator_.dim())
      throw std::logic_error("subquotient dimension bookkeeping failed");
  }

  std::size_t dim() const { return complement_.dim(); }
  const Subspace& numerator() const { return numerator_; }
  const Subspace& denominator() const { return denominator_; }
  const std::vector<SparseVector>& representatives() const { return complement_.basis(); }

  /// Coordinates of the class of v; nullopt when v is not in the numerator.
  std::optional<std::vector<Rational>> coordinates(const SparseVector& v) const {
    return complement_.coordinates(denominator_.reduce(v));
  }

  /// True for v in the numerator whose class vanishes.
  bool is_zero_class(const SparseVector& v) const { return denominator_.contains(v); }

 private:
  Subspace numerator_;
  Subspace denominator_;
  Subspace complement_;
};

/// Rank of a dense rational matrix given as rows.
inline std::size_t rank(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  std::vector<SparseVector> vs;
  for (const auto& r : rows) {
    std::vector<SparseVector::Entry> e;
    for (std::size_t j = 0; j < r.size(); ++j) e.emplace_back(j, r[j]);
    vs.emplace_back(std::move(e));
  }
  return Subspace::span(cols, vs).dim();
}

}  // namespace sullivan::linalg

#endif  // SULLIVAN_LINALG_HPP
