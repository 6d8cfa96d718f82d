#ifndef SULLIVAN_THEOREMS_HPP
#define SULLIVAN_THEOREMS_HPP

// Executable statements about elliptic minimal models: the Hilali inequality,
// absence of gaps in E_∞, absence of e₀-gaps and the degree sequences of the
// word-length bigrading of H(ΛV, d_k). Every verdict carries its hypothesis
// evidence so that Undetermined is never confused with Holds.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/cochain.hpp"
#include "sullivan/model.hpp"
#include "sullivan/spectral.hpp"

namespace sullivan {

enum class Conclusion { Holds, Fails, HypothesisNotMet, Undetermined };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Holds: return "Holds";
    case Conclusion::Fails: return "Fails";
    case Conclusion::HypothesisNotMet: return "HypothesisNotMet";
    case Conclusion::Undetermined: return "Undetermined";
  }
  return "?";
}

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  std::string evidence;
};

struct TheoremVerdict {
  std::string statement;
  std::vector<Hypothesis> hypotheses;
  Conclusion conclusion = Conclusion::Undetermined;
  std::string witness;
  std::optional<int> window;
  std::vector<std::pair<std::string, long long>> values;  // numeric evidence, in report order
  std::vector<std::string> failures;                      // violated sub-checks

  void value(std::string key, long long v) { values.emplace_back(std::move(key), v); }

  std::optional<long long> get(const std::string& key) const {
    for (const auto& [k, v] : values)
      if (k == key) return v;
    return std::nullopt;
  }

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  void conclude() { conclusion = failures.empty() ? Conclusion::Holds : Conclusion::Fails; }
};

struct CheckOptions {
  EllipticityOptions ellipticity;
};

namespace detail {

inline std::string describe(const GradedAlgebra& alg, const EllipticityVerdict& v) {
  std::string s = std::string(to_string(v.status)) + " (window " + std::to_string(v.window) + "): " + v.reason;
  if (v.witness_degree) s += "; degree " + std::to_string(*v.witness_degree);
  if (v.witness_class) s += " class " + format_polynomial(alg, *v.witness_class);
  return s;
}

/// Shared hypothesis "(ΛV, d_k) is elliptic". Returns the verdict on the leading model.
inline EllipticityVerdict leading_elliptic(const SullivanModel& model, TheoremVerdict& tv, const CheckOptions& opts) {
  CochainComplex lead(leading_model(model), opts.ellipticity.budget);
  auto v = ellipticity_verdict(lead, opts.ellipticity);
  tv.window = v.window;
  tv.hypotheses.push_back({"leading part (LV, d_k) is elliptic", v.elliptic(), describe(model.algebra, v)});
  if (!v.elliptic()) {
    tv.conclusion = v.status == EllipticStatus::Undetermined ? Conclusion::Undetermined : Conclusion::HypothesisNotMet;
    tv.witness = describe(model.algebra, v);
  }
  return v;
}

inline std::string join(const std::set<int>& s) {
  std::string out;
  for (int v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
  return "{" + out + "}";
}

}  // namespace detail

/// dim H(ΛV, d) >= dim V for elliptic models.
inline TheoremVerdict hilali_check(const SullivanModel& model, const CheckOptions& opts = {}) {
  TheoremVerdict tv;
  tv.statement = "hilali: dim H(LV,d) >= dim V";
  CochainComplex cx(model, opts.ellipticity.budget);
  auto ev = ellipticity_verdict(cx, opts.ellipticity);
  tv.window = ev.window;
  tv.hypotheses.push_back({"(LV, d) is elliptic", ev.elliptic(), detail::describe(model.algebra, ev)});
  if (!ev.elliptic()) {
    tv.conclusion = ev.status == EllipticStatus::Undetermined ? Conclusion::Undetermined : Conclusion::HypothesisNotMet;
    tv.witness = detail::describe(model.algebra, ev);
    return tv;
  }
  std::size_t dim_h = 0;
  for (int i = 0; i <= *ev.n; ++i) dim_h += ev.dims[static_cast<std::size_t>(i)];
  auto dim_v = static_cast<long long>(model.algebra.size());
  tv.value("dimH", static_cast<long long>(dim_h));
  tv.value("dimV", dim_v);
  tv.check(static_cast<long long>(dim_h) >= dim_v, "dim H < dim V");
  tv.conclude();
  if (tv.conclusion == Conclusion::Fails)
    tv.witness = "potential counterexample: dim H = " + std::to_string(dim_h) + " < dim V = " + std::to_string(dim_v);
  return tv;
}

/// No gaps in E_∞: when (ΛV, d_k) is elliptic, every column 0..e of E_∞ is nonzero.
inline TheoremVerdict nogap_check(const SullivanModel& model, const CheckOptions& opts = {}) {
  TheoremVerdict tv;
  tv.statement = "nogaps: E_infinity columns 0..e are all nonzero";
  auto lead = detail::leading_elliptic(model, tv, opts);
  if (!lead.elliptic()) return tv;
  auto inv = invariants(model);
  int e = *inv.e_formula;
  int n_top = *lead.n;
  CochainComplex cx(model, opts.ellipticity.budget);
  SpectralSequence ss(cx);
  std::set<int> support;
  for (int n = 0; n <= n_top; ++n)
    for (const auto& [p, d] : ss.e_infinity_column_dims(n)) support.insert(p);
  tv.value("e", e);
  tv.value("N", n_top);
  tv.value("toomer", support.empty() ? 0 : *support.rbegin());
  for (int p = 0; p <= e; ++p) tv.check(support.contains(p), "E_infinity column " + std::to_string(p) + " is zero");
  tv.conclude();
  if (tv.conclusion == Conclusion::Fails) tv.witness = "E_infinity support " + detail::join(support);
  return tv;
}

/// Special cases of the Hilali inequality: V = V^odd, or k >= 3 with (ΛV, d_k)
/// elliptic. Verifies dim H >= e and e >= dim V separately.
inline TheoremVerdict hilali_special_cases(const SullivanModel& model, const CheckOptions& opts = {}) {
  TheoremVerdict tv;
  tv.statement = "hilali-special: dim H >= e = dimV^odd + (k-2) dimV^even >= dim V";
  auto inv = invariants(model);
  bool odd_case = inv.dim_v_even == 0;
  tv.hypotheses.push_back({"case 1: V = V^odd", odd_case, "dimV^even = " + std::to_string(inv.dim_v_even)});
  bool k3 = inv.k && *inv.k >= 3;
  tv.hypotheses.push_back(
      {"case 2: k >= 3", k3, inv.k ? "k = " + std::to_string(*inv.k) : std::string("d = 0, k undefined")});
  if (!odd_case && !k3) {
    tv.conclusion = Conclusion::HypothesisNotMet;
    tv.witness = "V has even generators and k < 3";
    return tv;
  }
  TheoremVerdict lead_tv;
  auto lead = detail::leading_elliptic(model, lead_tv, opts);
  tv.hypotheses.push_back(lead_tv.hypotheses.front());
  tv.window = lead_tv.window;
  if (!lead.elliptic()) {
    tv.conclusion = lead_tv.conclusion;
    tv.witness = lead_tv.witness;
    if (odd_case) tv.failures.push_back("leading part of an odd model must be elliptic");
    return tv;
  }
  CochainComplex cx(model, opts.ellipticity.budget);
  auto full = ellipticity_verdict(cx, opts.ellipticity);
  tv.hypotheses.push_back({"(LV, d) is elliptic", full.elliptic(), detail::describe(model.algebra, full)});
  if (!full.elliptic()) {
    // Ellipticity of (ΛV, d_k) forces ellipticity of (ΛV, d).
    tv.conclusion = full.status == EllipticStatus::Undetermined ? Conclusion::Undetermined : Conclusion::Fails;
    tv.witness = detail::describe(model.algebra, full);
    return tv;
  }
  std::size_t dim_h = 0;
  for (int i = 0; i <= *full.n; ++i) dim_h += full.dims[static_cast<std::size_t>(i)];
  int e = *inv.e_formula;
  tv.value("dimH", static_cast<long long>(dim_h));
  tv.value("e", e);
  tv.value("dimV", inv.dim_v());
  tv.value("case", odd_case ? 1 : 2);
  tv.check(static_cast<long long>(dim_h) >= e, "dim H < e");
  tv.check(e >= inv.dim_v(), "e < dim V");
  tv.check(static_cast<long long>(dim_h) >= inv.dim_v(), "dim H < dim V");
  tv.conclude();
  return tv;
}

/// No e₀-gaps: the e₀ spectrum is {0, ..., e}, computed both from E_∞ column
/// support and from e₀ of individual classes.
inline TheoremVerdict e0gap_check(const SullivanModel& model, const CheckOptions& opts = {}) {
  TheoremVerdict tv;
  tv.statement = "e0gaps: H(LV,d) has no e0-gaps";
  auto lead = detail::leading_elliptic(model, tv, opts);
  if (!lead.elliptic()) return tv;
  int e = *invariants(model).e_formula;
  CochainComplex cx(model, opts.ellipticity.budget);
  SpectralSequence ss(cx);
  auto spectrum = ss.e0_spectrum(*lead.n);
  std::set<int> expected;
  for (int p = 0; p <= e; ++p) expected.insert(p);
  tv.value("e", e);
  tv.value("max_e0", spectrum.einfty_support.empty() ? 0 : *spectrum.einfty_support.rbegin());
  tv.value("gaps", static_cast<long long>(spectrum.gaps.size()));
  tv.check(spectrum.gaps.empty(), "e0 spectrum has gaps");
  tv.check(spectrum.einfty_support == expected, "E_infinity support " + detail::join(spectrum.einfty_support) + " != {0..e}");
  tv.check(spectrum.e0_values == spectrum.einfty_support, "e0 over classes " + detail::join(spectrum.e0_values) +
                                                      " differs from E_infinity support");
  tv.check(spectrum.routes_agree, "quotient and representative e0 routes disagree");
  tv.check(spectrum.basis_values_in_support, "a cohomology basis class has e0 outside the E_infinity support");
  tv.conclude();
  if (tv.conclusion == Conclusion::Fails) tv.witness = "spectrum " + detail::join(spectrum.einfty_support);
  return tv;
}

/// Lowest and highest degree of H_p(ΛV, d_k) for p = 0..e.
struct DegreeSequences {
  std::vector<int> lowest;   // n_p
  std::vector<int> highest;  // N_p
  std::vector<bool> present; // H_p ≠ 0
};

inline DegreeSequences degree_sequences(const CochainComplex& homogeneous, int n_top, int e) {
  DegreeSequences s;
  s.lowest.assign(static_cast<std::size_t>(e) + 1, -1);
  s.highest.assign(static_cast<std::size_t>(e) + 1, -1);
  s.present.assign(static_cast<std::size_t>(e) + 1, false);
  for (int n = 0; n <= n_top; ++n)
    for (const auto& [p, d] : bigraded_cohomology(homogeneous, n)) {
      if (p > e) continue;
      auto i = static_cast<std::size_t>(p);
      if (!s.present[i]) s.lowest[i] = n;
      s.present[i] = true;
      s.highest[i] = n;
    }
  return s;
}

/// Degree chains n_{p+1} >= n_p + n_1, N_{p+1} >= N_p + n_1, N_e = N_{e-1} + n_1
/// and n_p + N_{e-p} = N_e on the bigraded cohomology of (ΛV, d_k).
inline TheoremVerdict lupton_sequence_check(const SullivanModel& model, const CheckOptions& opts = {}) {
  TheoremVerdict tv;
  tv.statement = "lupton: degree chains of H_p(LV, d_k)";
  auto lead = detail::leading_elliptic(model, tv, opts);
  if (!lead.elliptic()) return tv;
  int e = *invariants(model).e_formula;
  int n_top = *lead.n;
  CochainComplex cx(leading_model(model), opts.ellipticity.budget);
  auto s = degree_sequences(cx, n_top, e);
  const auto& n = s.lowest;
  const auto& big = s.highest;
  auto at = [](const std::vector<int>& v, int p) { return v[static_cast<std::size_t>(p)]; };
  for (int p = 0; p <= e; ++p) {
    tv.value("n_" + std::to_string(p), at(n, p));
    tv.value("N_" + std::to_string(p), at(big, p));
  }
  for (int p = 1; p <= e; ++p) tv.check(s.present[static_cast<std::size_t>(p)], "H_" + std::to_string(p) + " is zero");
  if (!tv.failures.empty()) {
    tv.conclude();
    tv.witness = tv.failures.front();
    return tv;
  }
  tv.check(at(n, 0) == 0 && at(big, 0) == 0, "H_0 is not concentrated in degree 0");
  tv.check(at(n, e) == n_top && at(big, e) == n_top, "n_e = N_e = N fails");
  if (e >= 1) {
    int n1 = at(n, 1);
    tv.check(n1 > 0, "n_1 > 0 fails");
    for (int p = 1; p < e; ++p)
      tv.check(at(n, p + 1) >= at(n, p) + n1, "n_" + std::to_string(p + 1) + " >= n_" + std::to_string(p) + " + n_1 fails");
    tv.check(at(big, e) == at(big, e - 1) + n1, "N_e = N_{e-1} + n_1 fails");
    for (int p = 0; p + 1 < e; ++p)
      tv.check(at(big, p + 1) >= at(big, p) + n1, "N_" + std::to_string(p + 1) + " >= N_" + std::to_string(p) + " + n_1 fails");
    for (int p = 1; p < e; ++p)
      tv.check(at(n, p) + at(big, e - p) == at(big, e), "n_" + std::to_string(p) + " + N_" + std::to_string(e - p) + " = N_e fails");
  }
  tv.conclude();
  if (tv.conclusion == Conclusion::Fails) tv.witness = tv.failures.front();
  return tv;
}

/// Structural traits and applicable checks, computed from the model. The
/// names match the tags of the built-in corpus.
inline std::set<std::string> model_traits(const SullivanModel& model, const CheckOptions& opts = {}) {
  std::set<std::string> t;
  const auto& alg = model.algebra;
  auto inv = invariants(model);
  CochainComplex cx(model, opts.ellipticity.budget);
  bool elliptic = ellipticity_verdict(cx, opts.ellipticity).elliptic();
  CochainComplex lead(leading_model(model), opts.ellipticity.budget);
  auto lv = ellipticity_verdict(lead, opts.ellipticity);
  if (elliptic) t.insert({"elliptic", "hilali"});
  if (length_profile(model.differential).homogeneous) t.insert("homogeneous");
  if (inv.dim_v_even == 0) t.insert("odd");
  bool pure = true;
  for (const auto& g : alg.generators()) {
    const auto& dg = model.d(g.id);
    if (!g.odd() && !dg.is_zero()) pure = false;
    for (const auto& [m, c] : dg.terms())
      for (auto [id, e] : m.factors())
        if (alg.odd(id)) pure = false;
  }
  if (pure) t.insert("pure");
  if (lv.elliptic()) {
    t.insert({"lead-elliptic", "nogaps", "e0gaps", "lupton"});
    if (inv.dim_v_even == 0 || (inv.k && *inv.k >= 3)) t.insert("hilali-special");
  } else if (lv.status == EllipticStatus::NotElliptic) {
    t.insert("lead-not-elliptic");
  }
  // ker(d_2 : V^odd → ΛV) ≠ 0.
  Derivation d2 = homogeneous_part(model, 2);
  std::vector<SparseVector> images;
  std::map<Monomial, std::size_t> index;
  int odd_count = 0;
  for (const auto& g : alg.generators()) {
    if (!g.odd()) continue;
    ++odd_count;
    std::vector<SparseVector::Entry> e;
    for (const auto& [m, c] : d2.on(g.id).terms()) e.emplace_back(index.emplace(m, index.size()).first->second, c);
    std::sort(e.begin(), e.end());
    images.emplace_back(std::move(e));
  }
  if (odd_count > 0 && Subspace::span(index.size(), images).dim() < static_cast<std::size_t>(odd_count))
    t.insert("kerd2-odd");
  return t;
}

}  // namespace sullivan

#endif  // SULLIVAN_THEOREMS_HPP
