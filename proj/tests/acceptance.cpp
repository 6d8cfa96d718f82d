// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/closure.hpp"
#include "sullivan/corpus.hpp"
#include "sullivan/theorems.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"

using namespace sullivan;

namespace {

constexpr double kCorpusSeconds = 60.0;
constexpr double kRandomSeconds = 300.0;
constexpr int kRandomModels = 200;
constexpr int kRandomMaxTotal = 12;
constexpr int kClosureMaxDegree = 10;
constexpr unsigned kRandomSeed = 20261014;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int true_n(const SullivanModel& m) {
  CochainComplex cx(m);
  auto v = ellipticity_verdict(cx);
  return v.n.value_or(invariants(m).n_formula);
}

struct Expected {
  std::size_t dim_h;
  int n, e;
  Conclusion hilali;
};

// Re-derived with the brute-force oracle before being pinned.
const std::vector<std::pair<std::string, Expected>> kCorpusTable = {
    {"s2", {2, 2, 1, Conclusion::Holds}},       {"s3", {2, 3, 1, Conclusion::Holds}},
    {"s3xs5", {4, 8, 2, Conclusion::Holds}},    {"cp2", {3, 4, 2, Conclusion::Holds}},
    {"cp3", {4, 6, 3, Conclusion::Holds}},      {"e6-pure", {9, 8, 4, Conclusion::Holds}},
    {"free-odd", {8, 15, 3, Conclusion::Holds}},
};

Outcome corpus_exactness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [id, want] : kCorpusTable) {
    auto m = corpus_entry(id).model();
    CochainComplex cx(m);
    SpectralSequence ss(cx);
    auto v = ellipticity_verdict(cx);
    o.expect(v.elliptic(), id + ": not certified elliptic");
    if (!v.elliptic()) continue;
    std::size_t dim_h = 0;
    for (int n = 0; n <= *v.n; ++n) dim_h += cohomology(cx, n).dim();
    int e = ss.toomer(*v.n);
    auto hilali = hilali_check(m).conclusion;

    // Independent recomputation: oracle dimensions up to N + 2 and N as the top nonzero degree.
    auto om = oracle::Model::from(m);
    std::size_t oracle_h = 0;
    int oracle_n = 0;
    for (int n = 0; n <= *v.n + 2; ++n)
      if (auto d = oracle::cohomology_dim(om, n)) {
        oracle_h += d;
        oracle_n = n;
      }
    int oracle_e = 0;
    for (int n = 0; n <= *v.n; ++n)
      for (const auto& [p, d] : oracle::filtered_cohomology(om, n))
        if (d > 0) oracle_e = std::max(oracle_e, p);

    std::ostringstream got;
    got << id << ": (" << dim_h << "," << *v.n << "," << e << "," << to_string(hilali) << ")";
    o.expect(dim_h == want.dim_h && *v.n == want.n && e == want.e && hilali == want.hilali, got.str() + " != pinned");
    o.expect(oracle_h == want.dim_h && oracle_n == want.n && oracle_e == want.e, id + ": oracle disagrees");
  }
  double secs = seconds_since(t0);
  o.expect(secs < kCorpusSeconds, "corpus runtime over budget");
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << kCorpusTable.size() << " models exact, oracle agrees, " << secs
    << " s; cp3 pinned at re-derived N=6 (listed as 8)";
  o.detail = d.str();
  return o;
}

Outcome first_page_identification() {
  Outcome o;
  long entries = 0;
  for (const auto& entry : corpus()) {
    auto m = entry.model();
    CochainComplex cx(m);
    SpectralSequence ss(cx);
    CochainComplex lead(leading_model(m));
    auto olead = oracle::Model::from(leading_model(m));
    int k = invariants(m).k.value_or(2);
    int bound = true_n(m) + 2;
    for (int n = 0; n <= bound; ++n) {
      auto bg = bigraded_cohomology(lead, n);
      auto ob = oracle::bigraded(olead, n);
      for (int p = 0; p <= n; ++p) {
        auto dim = [p](const std::map<int, std::size_t>& mp) {
          auto it = mp.find(p);
          return it == mp.end() ? std::size_t{0} : it->second;
        };
        std::size_t page = ss.page_entry(k, p, n - p).dim();
        ++entries;
        o.expect(page == dim(bg) && page == dim(ob),
                 entry.id + " (p,q)=(" + std::to_string(p) + "," + std::to_string(n - p) + ")");
      }
    }
  }
  o.detail = std::to_string(corpus().size()) + " models, " + std::to_string(entries) + " bidegrees up to N+2";
  return o;
}

Outcome convergence() {
  Outcome o;
  int degrees = 0;
  for (const auto& entry : corpus()) {
    auto m = entry.model();
    CochainComplex cx(m);
    SpectralSequence ss(cx);
    int top = true_n(m);
    for (int n = 0; n <= top; ++n, ++degrees) {
      std::size_t sum = 0;
      for (const auto& [p, d] : ss.e_infinity_column_dims(n)) sum += d;
      o.expect(sum == cohomology(cx, n).dim(), entry.id + " degree " + std::to_string(n));
    }
  }
  o.detail = std::to_string(degrees) + " degrees n <= N";
  return o;
}

Outcome theorem_regressions() {
  Outcome o;
  const std::pair<const char*, TheoremVerdict (*)(const SullivanModel&, const CheckOptions&)> checks[] = {
      {"nogaps", nogap_check},
      {"e0gaps", e0gap_check},
      {"hilali-special", hilali_special_cases},
      {"lupton", lupton_sequence_check}};
  int holds = 0, not_met = 0;
  for (const auto& entry : corpus()) {
    auto m = entry.model();
    for (const auto& [name, check] : checks) {
      auto v = check(m, {});
      std::string at = entry.id + " " + name + ": " + to_string(v.conclusion);
      bool all_met = std::all_of(v.hypotheses.begin(), v.hypotheses.end(), [](const Hypothesis& h) { return h.satisfied; });
      bool case_met = std::any_of(v.hypotheses.begin(), v.hypotheses.end(),
                                  [](const Hypothesis& h) { return h.satisfied && h.name.rfind("case", 0) == 0; });
      bool met = std::string(name) == "hilali-special"
                     ? case_met && std::all_of(v.hypotheses.begin(), v.hypotheses.end(),
                                               [](const Hypothesis& h) { return h.satisfied || h.name.rfind("case", 0) == 0; })
                     : all_met;
      if (met) {
        o.expect(v.conclusion == Conclusion::Holds, at);
        ++holds;
      } else {
        o.expect(v.conclusion == Conclusion::HypothesisNotMet && !v.witness.empty(), at);
        ++not_met;
      }
      o.expect(v.conclusion == (entry.has_tag(name) ? Conclusion::Holds : Conclusion::HypothesisNotMet), at + " vs tags");
      if (entry.id == "mixed-1") o.expect(v.conclusion == Conclusion::HypothesisNotMet && !v.witness.empty(), at);
    }
  }
  o.detail = std::to_string(holds) + " Holds, " + std::to_string(not_met) + " HypothesisNotMet with witness";
  return o;
}

Outcome e0_routes() {
  Outcome o;
  std::string spectra;
  for (const auto& entry : corpus()) {
    auto m = entry.model();
    CochainComplex cx(m);
    SpectralSequence ss(cx);
    auto s = ss.e0_spectrum(true_n(m));
    o.expect(s.routes_agree, entry.id + ": e0 routes disagree");
    o.expect(s.einfty_support == s.e0_values, entry.id + ": spectrum differs from E_inf support");
    o.expect(s.basis_values_in_support, entry.id + ": basis e0 outside support");
    if (entry.id == "e6-pure" || entry.id == "mixed-1")
      spectra += (spectra.empty() ? "" : ", ") + entry.id + " " + detail::join(s.e0_values);
  }
  o.detail = "all corpus models; " + spectra;
  return o;
}

Outcome iso_checks() {
  Outcome o;
  long checks = 0;
  for (const char* id : {"cp2", "s2"}) {
    auto m = corpus_entry(id).model();
    CochainComplex cx(m);
    SpectralSequence ss(cx);
    int bound = true_n(m) + 2;
    for (int n = 0; n <= bound; ++n)
      for (int r = 1; r <= stabilization_page(n) + 1; ++r)
        for (int p = 0; p <= n; ++p) {
          ++checks;
          o.expect(ss.subquotient_iso_check(r, p, n - p).ok(),
                   std::string(id) + " r=" + std::to_string(r) + " (p,q)=(" + std::to_string(p) + "," +
                       std::to_string(n - p) + ")");
        }
  }
  o.detail = std::to_string(checks) + " (r,p,q) on cp2 and s2 through N+2";
  return o;
}

Outcome random_properties() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(kRandomSeed);
  testing::PropertyLog log;
  int nonzero = 0, mixed = 0;
  for (int i = 0; i < kRandomModels; ++i) {
    auto m = testing::random_minimal_model(rng, 4, 8);
    auto lp = length_profile(m.differential);
    nonzero += lp.length.has_value();
    mixed += !lp.homogeneous;
    testing::check_model_properties(m, kRandomMaxTotal, log);
  }
  for (const auto& f : log.failures) o.expect(false, f);
  double secs = seconds_since(t0);
  o.expect(secs < kRandomSeconds, "runtime over budget");
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << kRandomModels << " models (" << nonzero << " with d != 0, " << mixed << " non-homogeneous), " << log.checks
    << " checks through total degree " << kRandomMaxTotal << ", " << secs << " s";
  o.detail = d.str();
  return o;
}

struct Acyclicity {
  bool acyclic = true;
  std::string witness;
};

Acyclicity acyclicity(const AcyclicClosure& ac, int bound) {
  Acyclicity a;
  CochainComplex cx(ac.as_complex());
  if (cohomology(cx, 0).dim() != 1) return {false, "H^0 != Q"};
  for (int i = 1; i <= bound; ++i) {
    auto h = cohomology(cx, i);
    if (h.dim() != 0) return {false, "H^" + std::to_string(i) + " = <" + format_polynomial(ac.algebra, h.representatives[0]) + ">"};
  }
  return a;
}

// Judged on the standard closure, D(sv) = v + c with Dc = -dv. The formula
// D(sv) = -S(dv) alone lacks the linear term and is never acyclic; the line
// reports where it first fails.
Outcome closures() {
  Outcome o;
  std::string literal;
  for (const char* id : {"s2", "s3", "cp2"}) {
    auto m = corpus_entry(id).model();
    auto ac = inductive_acyclic_closure(m);
    o.expect(ac.d_squared_zero(), std::string(id) + ": D^2 != 0");
    auto a = acyclicity(ac, kClosureMaxDegree);
    o.expect(a.acyclic, std::string(id) + ": " + a.witness);
    auto lit = acyclicity(acyclic_closure(m), kClosureMaxDegree);
    literal += std::string(literal.empty() ? "" : ", ") + id + " " + (lit.acyclic ? "acyclic" : lit.witness);
  }
  o.detail = "s2, s3, cp2 acyclic through degree " + std::to_string(kClosureMaxDegree) +
             "; literal D(sv) = -S(dv) gives " + literal;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"corpus exactness", corpus_exactness},
      {"first-page identification", first_page_identification},
      {"convergence", convergence},
      {"theorem regressions", theorem_regressions},
      {"dual e0 routes", e0_routes},
      {"subquotient isomorphisms", iso_checks},
      {"random structural properties", random_properties},
      {"acyclic closure", closures},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
