#ifndef SULLIVAN_SPECTRAL_HPP
#define SULLIVAN_SPECTRAL_HPP

// Spectral sequence of the word-length filtration F^p = Λ^{>=p}V.
//
//   Z_r^{p,q} = { x ∈ F^p ∩ (ΛV)^{p+q} : dx ∈ F^{p+r} }
//   E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})
//   δ_r : E_r^{p,q} → E_r^{p+r,q-r+1},  δ_r[x] = [dx]
//
// With d = Σ_{i>=k} d_i, d_i raising word length by i-1, one gets
// E_1 = ... = E_{k-1} = ΛV and E_k = H(ΛV, d_k).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sullivan/cochain.hpp"

namespace sullivan {

struct PageEntry {
  int r = 0, p = 0, q = 0;
  Subquotient space;
  std::vector<Polynomial> representatives;

  int degree() const { return p + q; }
  std::size_t dim() const { return space.dim(); }
};

/// Matrix of δ_r in the canonical representative bases (rows: target).
struct PageDifferential {
  int r = 0, p = 0, q = 0;
  std::vector<std::vector<Rational>> matrix;  // target_dim × source_dim
  std::size_t source_dim = 0, target_dim = 0;
  std::size_t rank = 0;
};

struct WellDefinednessViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotACocycle : std::invalid_argument {
  NotACocycle() : std::invalid_argument("element is not a cocycle") {}
};
struct ZeroClass : std::invalid_argument {
  ZeroClass() : std::invalid_argument("cohomology class is zero") {}
};

/// Both characterizations of e₀: via the quotients ΛV/Λ^{>=n+1}V and via the
/// deepest filtration level holding a cohomologous cocycle.
struct E0Value {
  int quotient_route = 0;
  int representative_route = 0;

  bool agree() const { return quotient_route == representative_route; }
  int value() const { return quotient_route; }
};

struct IsoCheck {
  int r = 0, p = 0, q = 0;
  std::size_t kernel_dim = 0, kernel_subquotient_dim = 0;
  std::size_t image_dim = 0, image_subquotient_dim = 0;

  bool ok() const { return kernel_dim == kernel_subquotient_dim && image_dim == image_subquotient_dim; }
};

struct E0Spectrum {
  int max_degree = 0;
  std::set<int> einfty_support;   // columns p with some E_∞^{p,q} ≠ 0
  std::set<int> e0_values;        // e₀ over a filtration-adapted cohomology basis
  std::vector<int> gaps;          // p in [0, max] missing from the support
  bool routes_agree = true;       // both e₀ routes agree on every class examined
  bool basis_values_in_support = true;  // e₀ of the plain cohomology basis ⊆ support

  bool consistent() const { return routes_agree && basis_values_in_support && einfty_support == e0_values; }
};

/// r_stab(n): all pages r >= r_stab(n) agree at total degree n, because word
/// lengths in degrees n-1, n, n+1 are at most (n+1)/2.
inline int stabilization_page(int n) { return (n + 2) / 2 + 1; }

class SpectralSequence {
 public:
  explicit SpectralSequence(const CochainComplex& cx) : cx_(cx) {}

  const CochainComplex& complex() const { return cx_; }

  /// Z_r^{p,q}. Accepts r >= 0 and any p (F^p = ΛV for p <= 0).
  Subspace z_space(int r, int p, int q) const {
    int n = p + q;
    if (n < 0) return Subspace::zero(0);
    const auto& next = cx_.piece(n + 1);
    // The condition only sees lengths present in degree n+1.
    int limit = std::max(std::min(p + r, next.max_length() + 1), 0);
    p = std::max(p, 0);
    auto key = std::make_tuple(limit, p, n);
    {
      std::lock_guard lock(mu_);
      if (auto it = z_cache_.find(key); it != z_cache_.end()) return *it->second;
    }
    const auto& mat = cx_.differential_matrix(n);
    std::vector<std::optional<std::size_t>> low(next.dim());
    std::size_t t = 0;
    for (std::size_t i = 0; i < next.dim(); ++i)
      if (next.lengths[i] < limit) low[i] = t++;
    Subspace z = linalg::kernel_on(cx_.filtration(n, p), t, [&](const SparseVector& v) {
      return mat.apply(v).remap([&](std::size_t i) { return low[i]; });
    });
    std::lock_guard lock(mu_);
    return *z_cache_.emplace(key, std::make_unique<Subspace>(std::move(z))).first->second;
  }

  /// d(Z_{r-1}^{p-r+1,q+r-2}), the boundaries in the denominator of E_r^{p,q}.
  Subspace b_space(int r, int p, int q) const {
    int n = p + q;
    if (n < 0) return Subspace::zero(0);
    if (n == 0) return Subspace::zero(cx_.piece(0).dim());
    Subspace src = z_space(r - 1, p - r + 1, q + r - 2);
    Subspace img = cx_.differential_matrix(n - 1).image(src);
    if (!cx_.filtration(n, std::max(p, 0)).contains(img))
      throw std::logic_error("boundary space escapes the filtration level");
    return img;
  }

  PageEntry page_entry(int r, int p, int q) const {
    if (r < 1) throw std::invalid_argument("page index must be >= 1");
    PageEntry e;
    e.r = r;
    e.p = p;
    e.q = q;
    int n = p + q;
    if (n < 0 || p < 0) {
      e.space = Subquotient(Subspace::zero(n < 0 ? 0 : cx_.piece(n).dim()), Subspace::zero(n < 0 ? 0 : cx_.piece(n).dim()));
      return e;
    }
    e.space = Subquotient(z_space(r, p, q), z_space(r - 1, p + 1, q - 1) + b_space(r, p, q));
    for (const auto& v : e.space.representatives()) e.representatives.push_back(cx_.to_polynomial(v, n));
    return e;
  }

  PageDifferential page_differential(int r, int p, int q) const {
    PageEntry src = page_entry(r, p, q);
    PageEntry dst = page_entry(r, p + r, q - r + 1);
    PageDifferential pd;
    pd.r = r;
    pd.p = p;
    pd.q = q;
    pd.source_dim = src.dim();
    pd.target_dim = dst.dim();
    pd.matrix.assign(dst.dim(), std::vector<Rational>(src.dim()));
    int n = p + q;
    if (n < 0 || p < 0) return pd;
    for (const auto& u : src.space.denominator().basis()) {
      SparseVector du = cx_.apply_d(u, n);
      if (!dst.space.numerator().contains(du) || !dst.space.is_zero_class(du))
        throw WellDefinednessViolation("d does not map the denominator of E_r^{p,q} into the denominator of its target");
    }
    const auto& reps = src.space.representatives();
    for (std::size_t j = 0; j < reps.size(); ++j) {
      auto c = dst.space.coordinates(cx_.apply_d(reps[j], n));
      if (!c) throw WellDefinednessViolation("d of a page representative leaves the target numerator");
      for (std::size_t i = 0; i < c->size(); ++i) pd.matrix[i][j] = (*c)[i];
    }
    pd.rank = linalg::rank(pd.matrix, src.dim());
    return pd;
  }

  PageEntry e_infinity(int p, int q) const { return page_entry(stabilization_page(p + q), p, q); }

  /// dim E_∞^{p,n-p} for every p with a nonzero entry.
  std::map<int, std::size_t> e_infinity_column_dims(int n) const {
    std::map<int, std::size_t> out;
    if (n < 0) return out;
    int top = cx_.piece(n).max_length();
    for (int p = 0; p <= top; ++p) {
      auto d = e_infinity(p, n - p).dim();
      if (d > 0) out[p] = d;
    }
    return out;
  }

  /// max p with E_∞^{p,q} ≠ 0 over total degrees <= bound (0 if only the unit survives).
  int toomer(int bound) const {
    int best = 0;
    for (int n = 0; n <= bound; ++n)
      for (const auto& [p, d] : e_infinity_column_dims(n)) best = std::max(best, p);
    return best;
  }

  E0Value e0_of_class(const Polynomial& x) const {
    const auto& alg = cx_.algebra();
    int m = 0;
    if (!x.is_zero()) {
      auto deg = x.homogeneous_degree(alg);
      if (!deg) throw std::invalid_argument("class must be degree-homogeneous");
      m = *deg;
    }
    if (x.is_zero()) throw ZeroClass();
    SparseVector v = cx_.to_vector(x, m);
    if (!cx_.apply_d(v, m).is_zero()) throw NotACocycle();
    Subspace b = coboundaries(cx_, m);
    if (b.contains(v)) throw ZeroClass();
    return E0Value{e0_quotient_route(v, m), e0_representative_route(v, m, b)};
  }

  E0Spectrum e0_spectrum(int max_degree) const {
    E0Spectrum s;
    s.max_degree = max_degree;
    for (int n = 0; n <= max_degree; ++n) {
      for (const auto& [p, d] : e_infinity_column_dims(n)) {
        s.einfty_support.insert(p);
        for (const auto& rep : e_infinity(p, n - p).representatives) {
          auto e0 = e0_of_class(rep);
          s.routes_agree = s.routes_agree && e0.agree();
          s.e0_values.insert(e0.value());
        }
      }
      for (const auto& rep : cohomology(cx_, n).representatives) {
        auto e0 = e0_of_class(rep);
        s.routes_agree = s.routes_agree && e0.agree();
        s.basis_values_in_support = s.basis_values_in_support && s.einfty_support.contains(e0.value());
      }
    }
    if (!s.einfty_support.empty())
      for (int p = 0; p <= *s.einfty_support.rbegin(); ++p)
        if (!s.einfty_support.contains(p)) s.gaps.push_back(p);
    return s;
  }

  /// Dimension identities: ker δ_r and im δ_r at (p,q) against their
  /// descriptions as subquotients of (ΛV)^{p+q}.
  IsoCheck subquotient_iso_check(int r, int p, int q) const {
    IsoCheck c;
    c.r = r;
    c.p = p;
    c.q = q;
    auto out = page_differential(r, p, q);
    auto in = page_differential(r, p - r, q + r - 1);
    c.kernel_dim = out.source_dim - out.rank;
    c.image_dim = in.rank;
    int n = p + q;
    if (n < 0 || p < 0) return c;
    Subspace zlow = z_space(r - 1, p + 1, q - 1);
    Subspace denom = zlow + b_space(r, p, q);
    Subspace ker_num = z_space(r + 1, p, q) + zlow;
    c.kernel_subquotient_dim = Subquotient(ker_num, denom).dim();
    Subspace incoming = n > 0 ? cx_.differential_matrix(n - 1).image(z_space(r, p - r, q + r - 1))
                              : Subspace::zero(cx_.piece(n).dim());
    c.image_subquotient_dim = Subquotient(incoming + zlow, denom).dim();
    return c;
  }

 private:
  int e0_quotient_route(const SparseVector& v, int m) const {
    const auto& here = cx_.piece(m);
    for (int n = 0;; ++n) {
      // (ΛV/Λ^{>=n+1}V)^m: keep monomials of length <= n.
      std::vector<std::optional<std::size_t>> keep(here.dim());
      std::size_t t = 0;
      for (std::size_t i = 0; i < here.dim(); ++i)
        if (here.lengths[i] <= n) keep[i] = t++;
      auto truncate = [&](const SparseVector& w) { return w.remap([&](std::size_t i) { return keep[i]; }); };
      SparseVector xv = truncate(v);
      if (xv.is_zero()) continue;
      std::vector<SparseVector> bnd;
      if (m > 0) {
        const auto& below = cx_.piece(m - 1);
        const auto& mat = cx_.differential_matrix(m - 1);
        for (std::size_t j = 0; j < below.dim(); ++j)
          if (below.lengths[j] <= n) bnd.push_back(truncate(mat.columns[j]));
      }
      if (!Subspace::span(t, bnd).contains(xv)) return n;
    }
  }

  int e0_representative_route(const SparseVector& v, int m, const Subspace& b) const {
    int best = 0;
    for (int p = 0; p <= cx_.piece(m).max_length(); ++p)
      if ((cx_.filtration(m, p) + b).contains(v)) best = p;
    return best;
  }

  const CochainComplex& cx_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<Subspace>> z_cache_;
};

}  // namespace sullivan

#endif  // SULLIVAN_SPECTRAL_HPP
