#ifndef SULLIVAN_COCHAIN_HPP
#define SULLIVAN_COCHAIN_HPP

// Bounded-degree cochain computations on (ΛV, d): differential matrices,
// cohomology, the word-length bigrading, ellipticity and Poincaré duality.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

using linalg::SparseMatrix;
using linalg::SparseVector;
using linalg::Subquotient;
using linalg::Subspace;

/// Monomial basis of one degree with its reverse index.
struct DegreePiece {
  int degree = 0;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;
  std::vector<int> lengths;

  std::size_t dim() const { return basis.size(); }

  std::vector<std::size_t> indices_with_length(auto&& pred) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (pred(lengths[i])) out.push_back(i);
    return out;
  }

  int max_length() const {
    int m = -1;
    for (int l : lengths) m = std::max(m, l);
    return m;
  }
};

/// Thrown when a degree piece would exceed the configured basis-size budget.
struct BudgetExceeded : std::runtime_error {
  int degree;
  BudgetExceeded(int n, std::size_t size)
      : std::runtime_error("degree " + std::to_string(n) + " basis has " + std::to_string(size) +
                           " monomials, exceeding the budget"),
        degree(n) {}
};

/// (ΛV, d) with lazily built, cached degree pieces and differential matrices.
/// The caches are guarded by a mutex and hand out references to nodes that are
/// never moved, so one complex may be shared by concurrent readers.
class CochainComplex {
 public:
  static constexpr std::size_t kDefaultBudget = 50000;

  explicit CochainComplex(SullivanModel model, std::size_t budget = kDefaultBudget)
      : model_(std::move(model)), budget_(budget) {
    if (model_.differential.degree != 1) throw std::invalid_argument("cochain differential must have degree +1");
  }

  CochainComplex(const CochainComplex&) = delete;
  CochainComplex& operator=(const CochainComplex&) = delete;

  const SullivanModel& model() const { return model_; }
  const GradedAlgebra& algebra() const { return model_.algebra; }

  const DegreePiece& piece(int n) const {
    std::lock_guard lock(mu_);
    return piece_locked(n);
  }

  /// Columns indexed by piece(n).basis, rows by piece(n+1).basis.
  const SparseMatrix& differential_matrix(int n) const {
    std::lock_guard lock(mu_);
    auto it = matrices_.find(n);
    if (it != matrices_.end()) return *it->second;
    const DegreePiece& src = piece_locked(n);
    const DegreePiece& dst = piece_locked(n + 1);
    auto mat = std::make_unique<SparseMatrix>();
    mat->rows = dst.dim();
    mat->columns.reserve(src.dim());
    for (const auto& m : src.basis) mat->columns.push_back(to_vector_locked(dst, apply_derivation(model_.algebra, model_.differential, m)));
    return *matrices_.emplace(n, std::move(mat)).first->second;
  }

  SparseVector to_vector(const Polynomial& p, int n) const {
    std::lock_guard lock(mu_);
    return to_vector_locked(piece_locked(n), p);
  }

  Polynomial to_polynomial(const SparseVector& v, int n) const {
    const DegreePiece& pc = piece(n);
    Polynomial out;
    for (const auto& [i, c] : v.entries()) out.add_term(pc.basis.at(i), c);
    return out;
  }

  SparseVector apply_d(const SparseVector& v, int n) const { return differential_matrix(n).apply(v); }

  /// F^p ∩ (ΛV)^n: monomials of word length >= p.
  Subspace filtration(int n, int p) const {
    const auto& pc = piece(n);
    auto idx = pc.indices_with_length([p](int l) { return l >= p; });
    return Subspace::coordinate(pc.dim(), idx);
  }

 private:
  const DegreePiece& piece_locked(int n) const {
    auto it = pieces_.find(n);
    if (it != pieces_.end()) return *it->second;
    auto pc = std::make_unique<DegreePiece>();
    pc->degree = n;
    pc->basis = degree_basis(model_.algebra, n);
    if (pc->basis.size() > budget_) throw BudgetExceeded(n, pc->basis.size());
    for (std::size_t i = 0; i < pc->basis.size(); ++i) {
      pc->index.emplace(pc->basis[i], i);
      pc->lengths.push_back(pc->basis[i].word_length());
    }
    return *pieces_.emplace(n, std::move(pc)).first->second;
  }

  static SparseVector to_vector_locked(const DegreePiece& pc, const Polynomial& p) {
    std::vector<SparseVector::Entry> e;
    e.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
      auto it = pc.index.find(m);
      if (it == pc.index.end())
        throw std::invalid_argument("polynomial has a term outside degree " + std::to_string(pc.degree));
      e.emplace_back(it->second, c);
    }
    return SparseVector(std::move(e));
  }

  SullivanModel model_;
  std::size_t budget_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<DegreePiece>> pieces_;
  mutable std::map<int, std::unique_ptr<SparseMatrix>> matrices_;
};

/// H^n as the subquotient ker d_n / im d_{n-1}.
struct CohomologyEntry {
  int degree = 0;
  Subquotient space;
  std::vector<Polynomial> representatives;

  std::size_t dim() const { return space.dim(); }
};

inline Subspace cocycles(const CochainComplex& cx, int n) {
  const auto& mat = cx.differential_matrix(n);
  return linalg::kernel_on(Subspace::full(mat.cols()), mat.rows, [&](const SparseVector& v) { return mat.apply(v); });
}

inline Subspace coboundaries(const CochainComplex& cx, int n) {
  if (n <= 0) return Subspace::zero(cx.piece(n).dim());
  return cx.differential_matrix(n - 1).image();
}

inline CohomologyEntry cohomology(const CochainComplex& cx, int n) {
  CohomologyEntry e;
  e.degree = n;
  e.space = Subquotient(cocycles(cx, n), coboundaries(cx, n));
  for (const auto& v : e.space.representatives()) e.representatives.push_back(cx.to_polynomial(v, n));
  return e;
}

struct CohomologyTable {
  int bound = 0;
  std::vector<std::size_t> dims;                            // index = degree
  std::vector<std::vector<Polynomial>> representatives;     // index = degree
  std::optional<std::vector<std::map<int, std::size_t>>> bigraded;  // degree -> (length -> dim)

  std::size_t total() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }
};

/// dim H^n_p for every word length p, when d is length-homogeneous.
/// d maps length p to length p + L - 1 where L is the common length.
inline std::map<int, std::size_t> bigraded_cohomology(const CochainComplex& cx, int n) {
  auto lp = length_profile(cx.model().differential);
  if (!lp.homogeneous) throw std::invalid_argument("bigraded cohomology needs a word-length homogeneous differential");
  const auto& here = cx.piece(n);
  std::map<int, std::size_t> out;
  if (here.dim() == 0) return out;
  int shift = lp.length ? *lp.length - 1 : 0;
  const auto& mat = cx.differential_matrix(n);
  const DegreePiece* below = n > 0 ? &cx.piece(n - 1) : nullptr;
  for (int p = 0; p <= here.max_length(); ++p) {
    auto idx = here.indices_with_length([p](int l) { return l == p; });
    if (idx.empty()) continue;
    Subspace domain = Subspace::coordinate(here.dim(), idx);
    Subspace z = linalg::kernel_on(domain, mat.rows, [&](const SparseVector& v) { return mat.apply(v); });
    std::size_t b = 0;
    if (below && lp.length) {
      auto src = below->indices_with_length([&](int l) { return l + shift == p; });
      if (!src.empty()) b = cx.differential_matrix(n - 1).image(Subspace::coordinate(below->dim(), src)).dim();
    }
    std::size_t dim = z.dim() - b;
    if (dim > 0) out[p] = dim;
  }
  return out;
}

inline CohomologyTable cohomology_table(const CochainComplex& cx, int bound, bool with_bigrading = false) {
  CohomologyTable t;
  t.bound = bound;
  for (int n = 0; n <= bound; ++n) {
    auto e = cohomology(cx, n);
    t.dims.push_back(e.dim());
    t.representatives.push_back(std::move(e.representatives));
  }
  if (with_bigrading && length_profile(cx.model().differential).homogeneous) {
    t.bigraded.emplace();
    for (int n = 0; n <= bound; ++n) t.bigraded->push_back(bigraded_cohomology(cx, n));
  }
  return t;
}

enum class EllipticStatus { Elliptic, NotElliptic, Undetermined };

inline const char* to_string(EllipticStatus s) {
  switch (s) {
    case EllipticStatus::Elliptic: return "Elliptic";
    case EllipticStatus::NotElliptic: return "NotElliptic";
    case EllipticStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

struct EllipticityVerdict {
  EllipticStatus status = EllipticStatus::Undetermined;
  int n_formula = 0;
  std::optional<int> n;             // when Elliptic
  std::optional<int> witness_degree;
  std::optional<Polynomial> witness_class;
  int window = 0;
  std::string reason;
  std::vector<std::size_t> dims;    // dim H^i for i <= window when computed

  bool elliptic() const { return status == EllipticStatus::Elliptic; }
};

/// Matrix of the cup-product pairing H^i × H^{N-i} → H^N ≅ ℚ in the
/// representative bases; nullopt if H^N is not one-dimensional.
inline std::optional<std::vector<std::vector<Rational>>> pairing_matrix(const CochainComplex& cx, int n_top,
                                                                        const CohomologyEntry& left,
                                                                        const CohomologyEntry& right,
                                                                        const CohomologyEntry& top) {
  if (top.dim() != 1) return std::nullopt;
  std::vector<std::vector<Rational>> m(left.representatives.size(), std::vector<Rational>(right.representatives.size()));
  for (std::size_t a = 0; a < left.representatives.size(); ++a)
    for (std::size_t b = 0; b < right.representatives.size(); ++b) {
      Polynomial prod = multiply(cx.algebra(), left.representatives[a], right.representatives[b]);
      auto c = top.space.coordinates(cx.to_vector(prod, n_top));
      if (!c) throw std::logic_error("product of cocycles is not a cocycle");
      m[a][b] = (*c)[0];
    }
  return m;
}

/// True iff every pairing H^i × H^{N-i} → ℚ is square and nondegenerate.
inline bool poincare_duality_holds(const CochainComplex& cx, int n_top, const std::vector<CohomologyEntry>& h,
                                   int* failing_degree = nullptr) {
  for (int i = 0; i <= n_top; ++i) {
    const auto& l = h[static_cast<std::size_t>(i)];
    const auto& r = h[static_cast<std::size_t>(n_top - i)];
    auto m = pairing_matrix(cx, n_top, l, r, h[static_cast<std::size_t>(n_top)]);
    if (!m || l.dim() != r.dim() || linalg::rank(*m, r.dim()) != l.dim()) {
      if (failing_degree) *failing_degree = i;
      return false;
    }
  }
  return true;
}

struct EllipticityOptions {
  int window_factor = 2;
  std::size_t budget = CochainComplex::kDefaultBudget;
};

/// Window-certified ellipticity. Elliptic requires H to vanish on (N_f, W],
/// dim H^{N_f} = 1 and a nondegenerate Poincaré pairing on [0, N_f].
inline EllipticityVerdict ellipticity_verdict(const CochainComplex& cx, EllipticityOptions opts = {}) {
  EllipticityVerdict v;
  auto inv = invariants(cx.model());
  v.n_formula = inv.n_formula;
  if (inv.n_formula < 0) {
    // H^0 = ℚ already lies above a negative formal dimension.
    v.status = EllipticStatus::NotElliptic;
    v.reason = "formal dimension formula is negative";
    v.witness_degree = 0;
    v.witness_class = Polynomial::constant(1);
    return v;
  }
  int nf = inv.n_formula;
  v.window = std::max(opts.window_factor * nf, nf + cx.algebra().max_degree());
  std::vector<CohomologyEntry> h;
  try {
    for (int i = 0; i <= v.window; ++i) {
      h.push_back(cohomology(cx, i));
      v.dims.push_back(h.back().dim());
      if (i > nf && h.back().dim() > 0) {
        v.status = EllipticStatus::NotElliptic;
        v.witness_degree = i;
        v.witness_class = h.back().representatives.front();
        v.reason = "nonzero cohomology above the formal dimension";
        return v;
      }
    }
  } catch (const BudgetExceeded& ex) {
    v.status = EllipticStatus::Undetermined;
    v.reason = ex.what();
    return v;
  }
  if (h[static_cast<std::size_t>(nf)].dim() != 1) {
    v.status = EllipticStatus::NotElliptic;
    v.witness_degree = nf;
    v.reason = "top cohomology H^N is not one-dimensional";
    return v;
  }
  int bad = -1;
  if (!poincare_duality_holds(cx, nf, h, &bad)) {
    v.status = EllipticStatus::NotElliptic;
    v.witness_degree = bad;
    v.reason = "Poincare pairing is degenerate";
    return v;
  }
  v.status = EllipticStatus::Elliptic;
  v.n = nf;
  v.reason = "cohomology vanishes on (N, window] and satisfies Poincare duality";
  return v;
}

struct DualityViolation : std::runtime_error {
  Polynomial witness;
  explicit DualityViolation(Polynomial w)
      : std::runtime_error("class has no Poincare dual"), witness(std::move(w)) {}
};

/// A class b in H^{N-i} with [a]·[b] = [ω], where ω is the canonical
/// representative of the fundamental class.
inline Polynomial pairing_dual(const CochainComplex& cx, int n_top, const Polynomial& a) {
  auto deg = a.homogeneous_degree(cx.algebra());
  if (!deg || *deg > n_top) throw std::invalid_argument("pairing_dual needs a nonzero homogeneous class of degree <= N");
  auto top = cohomology(cx, n_top);
  auto other = cohomology(cx, n_top - *deg);
  if (top.dim() != 1) throw DualityViolation(a);
  for (const auto& b : other.representatives) {
    Polynomial prod = multiply(cx.algebra(), a, b);
    auto c = top.space.coordinates(cx.to_vector(prod, n_top));
    if (!c) throw std::invalid_argument("pairing_dual argument is not a cocycle");
    if ((*c)[0] != 0) return b * (Rational(1) / (*c)[0]);
  }
  throw DualityViolation(a);
}

struct FundamentalClass {
  int degree = 0;
  Polynomial representative;
  std::optional<int> word_length;  // when every term has the same length
};

inline FundamentalClass fundamental_class(const CochainComplex& cx, int n_top) {
  auto top = cohomology(cx, n_top);
  if (top.dim() != 1) throw std::logic_error("H^N is not one-dimensional");
  FundamentalClass f;
  f.degree = n_top;
  f.representative = top.representatives.front();
  auto lo = f.representative.min_word_length();
  auto hi = f.representative.max_word_length();
  if (lo && hi && *lo == *hi) f.word_length = *lo;
  return f;
}

}  // namespace sullivan

#endif  // SULLIVAN_COCHAIN_HPP
