#ifndef SULLIVAN_REPORT_HPP
#define SULLIVAN_REPORT_HPP

// Report assembly and emission. A report is an ordered JSON document whose
// fragments are produced by the functions below; the table format is a
// rendering of the same document, so both formats carry identical numbers.
// Keys are documented in docs/report-format.md.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sullivan/cochain.hpp"
#include "sullivan/model.hpp"
#include "sullivan/parser.hpp"
#include "sullivan/spectral.hpp"
#include "sullivan/theorems.hpp"

namespace sullivan {

using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "1.0.0";

enum class ExitCode : int { Ok = 0, Fails = 1, Undetermined = 2 };

inline ExitCode combine(ExitCode a, ExitCode b) {
  if (a == ExitCode::Fails || b == ExitCode::Fails) return ExitCode::Fails;
  if (a == ExitCode::Undetermined || b == ExitCode::Undetermined) return ExitCode::Undetermined;
  return ExitCode::Ok;
}

inline ExitCode exit_code(Conclusion c) {
  switch (c) {
    case Conclusion::Fails: return ExitCode::Fails;
    case Conclusion::Undetermined: return ExitCode::Undetermined;
    default: return ExitCode::Ok;
  }
}

inline ExitCode exit_code(EllipticStatus s) {
  return s == EllipticStatus::Undetermined ? ExitCode::Undetermined : ExitCode::Ok;
}

/// Default degree bound: N_formula + 2 when N_formula >= 0, else 12.
inline int default_bound(const SullivanModel& model) {
  int n = invariants(model).n_formula;
  return n >= 0 ? n + 2 : 12;
}

struct ReportOptions {
  std::optional<int> max_degree;  // cohomology and bigraded tables
  std::optional<int> max_total;   // pages and E_∞
  CheckOptions checks;
};

namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json strings(const GradedAlgebra& alg, const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(format_polynomial(alg, p));
  return out;
}

}  // namespace detail

inline Json model_json(const SullivanModel& model, const std::string& id) {
  Json gens = Json::array();
  Json diff = Json::object();
  for (const auto& g : model.algebra.generators()) {
    gens.push_back({{"name", g.name}, {"degree", g.degree}});
    if (!model.d(g.id).is_zero()) diff[g.name] = format_polynomial(model.algebra, model.d(g.id));
  }
  return {{"id", id}, {"generators", gens}, {"differential", diff}};
}

inline Json invariants_json(const SullivanModel& model) {
  auto inv = invariants(model);
  auto lp = length_profile(model.differential);
  return {{"k", detail::optional_json(inv.k)},
          {"k_note", inv.k ? "smallest word length in d" : "d = 0, no leading length"},
          {"homogeneous", lp.homogeneous},
          {"dimV", inv.dim_v()},
          {"dimV_even", inv.dim_v_even},
          {"dimV_odd", inv.dim_v_odd},
          {"N_formula", inv.n_formula},
          {"e_formula", detail::optional_json(inv.e_formula)},
          {"chi_pi", inv.chi_pi}};
}

inline Json validation_json(const SullivanModel& model) {
  auto rep = validate(model);
  Json issues = Json::array();
  for (const auto& i : rep.issues)
    issues.push_back({{"invariant", to_string(i.invariant)},
                      {"generator", model.algebra.generator(i.generator).name},
                      {"witness", i.witness},
                      {"message", i.message}});
  return {{"valid", rep.ok()}, {"issues", issues}};
}

inline Json diagnostics_json(const std::vector<Diagnostic>& diags) {
  Json out = Json::array();
  for (const auto& d : diags)
    out.push_back({{"line", d.line}, {"column", d.column}, {"category", to_string(d.category)}, {"message", d.message}});
  return out;
}

inline Json cohomology_json(const CochainComplex& cx, int bound) {
  Json dims = Json::array();
  Json classes = Json::array();
  std::size_t total = 0;
  for (int n = 0; n <= bound; ++n) {
    auto h = cohomology(cx, n);
    dims.push_back(h.dim());
    total += h.dim();
    classes.push_back(detail::strings(cx.algebra(), h.representatives));
  }
  return {{"max_degree", bound}, {"dims", dims}, {"total", total}, {"classes", classes}};
}

/// Bigraded cohomology of the leading model (ΛV, d_k); rows (degree, length, dim).
inline Json bigraded_json(const SullivanModel& model, int bound, std::size_t budget) {
  CochainComplex lead(leading_model(model), budget);
  Json rows = Json::array();
  for (int n = 0; n <= bound; ++n)
    for (const auto& [p, d] : bigraded_cohomology(lead, n))
      if (d > 0) rows.push_back({{"degree", n}, {"length", p}, {"dim", d}});
  return {{"of", "leading model"}, {"max_degree", bound}, {"entries", rows}};
}

inline Json matrix_json(const std::vector<std::vector<Rational>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    out.push_back(r);
  }
  return out;
}

/// Nonzero entries of E_r over total degrees <= bound, with δ_r in the
/// canonical representative bases wherever source and target are nonzero.
inline Json page_json(const SpectralSequence& ss, int r, int bound) {
  Json entries = Json::array();
  Json deltas = Json::array();
  for (int n = 0; n <= bound; ++n) {
    int top = ss.complex().piece(n).max_length();
    for (int p = 0; p <= top; ++p) {
      auto e = ss.page_entry(r, p, n - p);
      if (e.dim() == 0) continue;
      entries.push_back({{"p", p}, {"q", n - p}, {"dim", e.dim()}});
      if (n + 1 > bound) continue;
      auto pd = ss.page_differential(r, p, n - p);
      if (pd.target_dim == 0) continue;
      deltas.push_back({{"p", p},
                        {"q", n - p},
                        {"target_p", p + r},
                        {"target_q", n - p - r + 1},
                        {"rank", pd.rank},
                        {"matrix", matrix_json(pd.matrix)}});
    }
  }
  return {{"r", r}, {"max_total", bound}, {"entries", entries}, {"differentials", deltas}};
}

/// E_∞ entries, column support and the per-degree convergence check against H.
inline Json einfty_json(const SpectralSequence& ss, int bound) {
  Json entries = Json::array();
  std::set<int> support;
  bool converges = true;
  for (int n = 0; n <= bound; ++n) {
    std::size_t sum = 0;
    for (const auto& [p, d] : ss.e_infinity_column_dims(n)) {
      entries.push_back({{"p", p}, {"q", n - p}, {"dim", d}});
      support.insert(p);
      sum += d;
    }
    converges = converges && sum == cohomology(ss.complex(), n).dim();
  }
  return {{"max_total", bound},
          {"stabilization_page", stabilization_page(bound)},
          {"entries", entries},
          {"columns", support},
          {"converges_to_H", converges}};
}

inline Json ellipticity_json(const GradedAlgebra& alg, const EllipticityVerdict& v) {
  Json w = nullptr;
  if (v.witness_class) w = format_polynomial(alg, *v.witness_class);
  return {{"status", to_string(v.status)},
          {"N_formula", v.n_formula},
          {"N", detail::optional_json(v.n)},
          {"window", v.window},
          {"witness_degree", detail::optional_json(v.witness_degree)},
          {"witness_class", w},
          {"reason", v.reason},
          {"dims", v.dims}};
}

/// Degree bound for invariants that are final only on elliptic models.
struct InvariantBound {
  int degree;
  bool exact;
};

inline InvariantBound invariant_bound(const EllipticityVerdict& v, int fallback) {
  if (v.elliptic()) return {*v.n, true};
  return {fallback, false};
}

inline Json toomer_json(const SpectralSequence& ss, const InvariantBound& b) {
  auto inv = invariants(ss.complex().model());
  int t = ss.toomer(b.degree);
  return {{"computed", t},
          {"formula", detail::optional_json(inv.e_formula)},
          {"agree", inv.e_formula ? Json(*inv.e_formula == t) : Json(nullptr)},
          {"max_total", b.degree},
          {"lower_bound", !b.exact}};
}

inline Json e0_class_json(const SpectralSequence& ss, const Polynomial& x) {
  auto v = ss.e0_of_class(x);
  return {{"class", format_polynomial(ss.complex().algebra(), x)},
          {"degree", x.homogeneous_degree(ss.complex().algebra()).value_or(0)},
          {"quotient_route", v.quotient_route},
          {"representative_route", v.representative_route},
          {"agree", v.agree()}};
}

inline Json e0_spectrum_json(const SpectralSequence& ss, const InvariantBound& b) {
  auto s = ss.e0_spectrum(b.degree);
  return {{"max_total", b.degree},
          {"lower_bound", !b.exact},
          {"einfty_support", s.einfty_support},
          {"e0_values", s.e0_values},
          {"gaps", s.gaps},
          {"routes_agree", s.routes_agree},
          {"consistent", s.consistent()}};
}

inline Json theorem_json(const TheoremVerdict& tv, const SullivanModel& model) {
  Json hyps = Json::array();
  for (const auto& h : tv.hypotheses) hyps.push_back({{"name", h.name}, {"satisfied", h.satisfied}, {"evidence", h.evidence}});
  Json values = Json::object();
  for (const auto& [k, v] : tv.values) values[k] = v;
  Json out = {{"statement", tv.statement},
              {"conclusion", to_string(tv.conclusion)},
              {"hypotheses", hyps},
              {"witness", tv.witness},
              {"window", detail::optional_json(tv.window)},
              {"values", values},
              {"failures", tv.failures}};
  // A failed check is surfaced with everything needed to reproduce it.
  if (tv.conclusion == Conclusion::Fails) out["model_source"] = format_model(model);
  return out;
}

struct NamedCheck {
  const char* name;
  TheoremVerdict (*run)(const SullivanModel&, const CheckOptions&);
};

inline constexpr NamedCheck kChecks[] = {{"hilali", hilali_check},
                                         {"hilali-special", hilali_special_cases},
                                         {"nogaps", nogap_check},
                                         {"e0gaps", e0gap_check},
                                         {"lupton", lupton_sequence_check}};

inline const NamedCheck& named_check(std::string_view name) {
  for (const auto& c : kChecks)
    if (c.name == name) return c;
  throw std::out_of_range("unknown check '" + std::string(name) + "'");
}

struct Report {
  Json doc;
  ExitCode code = ExitCode::Ok;
};

/// The full report: every table and verdict, plus the bounds that produced them.
inline Report full_report(const SullivanModel& model, const std::string& id, const ReportOptions& opts = {}) {
  const std::size_t budget = opts.checks.ellipticity.budget;
  const int deg = opts.max_degree.value_or(default_bound(model));
  const int tot = opts.max_total.value_or(deg);
  CochainComplex cx(model, budget);
  SpectralSequence ss(cx);
  auto ell = ellipticity_verdict(cx, opts.checks.ellipticity);
  auto b = invariant_bound(ell, tot);
  auto inv = invariants(model);

  Report rep;
  Json& d = rep.doc;
  d["engine"] = {{"name", "sullivan"},
                 {"version", kEngineVersion},
                 {"bounds",
                  {{"cohomology_max_degree", deg},
                   {"pages_max_total", tot},
                   {"stabilization_page", stabilization_page(tot)},
                   {"ellipticity_window", ell.window},
                   {"window_factor", opts.checks.ellipticity.window_factor},
                   {"basis_budget", budget}}}};
  d["model"] = model_json(model, id);
  d["invariants"] = invariants_json(model);
  d["ellipticity"] = ellipticity_json(model.algebra, ell);
  d["cohomology"] = cohomology_json(cx, deg);
  d["bigraded"] = bigraded_json(model, deg, budget);
  Json pages = Json::array();
  for (int r = 1; r <= stabilization_page(tot); ++r) {
    Json pg = page_json(ss, r, tot);
    pages.push_back({{"r", r}, {"entries", pg["entries"]}});
  }
  d["pages"] = pages;
  d["einfty"] = einfty_json(ss, tot);
  d["toomer"] = toomer_json(ss, b);
  d["e0_spectrum"] = e0_spectrum_json(ss, b);
  Json checks = Json::object();
  rep.code = exit_code(ell.status);
  for (const auto& c : kChecks) {
    auto tv = c.run(model, opts.checks);
    checks[c.name] = theorem_json(tv, model);
    rep.code = combine(rep.code, exit_code(tv.conclusion));
  }
  d["checks"] = checks;
  std::size_t dim_h = 0;
  for (const auto& x : d["cohomology"]["dims"]) dim_h += x.get<std::size_t>();
  d["summary"] = {{"k", detail::optional_json(inv.k)},
                  {"elliptic", to_string(ell.status)},
                  {"N", detail::optional_json(ell.n)},
                  {"e", d["toomer"]["computed"]},
                  {"e_lower_bound", !b.exact},
                  {"dimH", dim_h},
                  {"dimH_max_degree", deg},
                  {"dimV", inv.dim_v()}};
  return rep;
}

// ---------------------------------------------------------------------------
// Table rendering

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline std::string inline_text(const Json& j) {
  if (is_scalar(j)) return scalar_text(j);
  std::string s = j.is_array() ? "[" : "{";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) s += ", ";
    first = false;
    if (j.is_object()) s += it.key() + ": ";
    s += inline_text(*it);
  }
  return s + (j.is_array() ? "]" : "}");
}

/// Array of objects sharing their keys with scalar values: rendered as columns.
inline bool tabular(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_object()) return false;
  std::vector<std::string> keys;
  for (auto it = j.front().begin(); it != j.front().end(); ++it) keys.push_back(it.key());
  for (const auto& row : j) {
    if (!row.is_object() || row.size() != keys.size()) return false;
    for (const auto& k : keys)
      if (!row.contains(k) || !is_scalar(row[k])) return false;
  }
  return true;
}

inline void render_columns(std::ostringstream& os, const Json& rows, const std::string& indent) {
  std::vector<std::string> keys;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], scalar_text(row[keys[c]]).size());
  }
  auto line = [&](auto cell) {
    std::string s = indent;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      std::string t = cell(c);
      s += t + std::string(width[c] - t.size() + (c + 1 < keys.size() ? 2 : 0), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << "\n";
  };
  line([&](std::size_t c) { return keys[c]; });
  for (const auto& row : rows) line([&](std::size_t c) { return scalar_text(row[keys[c]]); });
}

inline void render(std::ostringstream& os, const Json& j, const std::string& indent) {
  std::size_t w = 0;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (is_scalar(*it) || !tabular(*it)) w = std::max(w, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = *it;
    if (v.is_object() && !v.empty()) {
      os << indent << it.key() << ":\n";
      render(os, v, indent + "  ");
    } else if (tabular(v)) {
      os << indent << it.key() << ":\n";
      render_columns(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); })) {
      os << indent << it.key() << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << indent << "  -\n";
        if (v[i].is_object())
          render(os, v[i], indent + "    ");
        else
          os << indent << "    " << inline_text(v[i]) << "\n";
      }
    } else {
      std::string line = indent + it.key() + std::string(w - it.key().size() + 2, ' ') + inline_text(v);
      while (line.back() == ' ') line.pop_back();
      os << line << "\n";
    }
  }
}

}  // namespace detail

enum class Format { Table, Json };

inline std::string emit_report(const Json& doc, Format f) {
  if (f == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream os;
  if (doc.is_object())
    detail::render(os, doc, "");
  else
    os << detail::inline_text(doc) << "\n";
  return os.str();
}

}  // namespace sullivan

#endif  // SULLIVAN_REPORT_HPP
