#include <catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "sullivan/cochain.hpp"
#include "sullivan/corpus.hpp"
#include "support/oracle.hpp"

using namespace sullivan;

namespace {

Polynomial parse(const GradedAlgebra& alg, const char* text) {
  auto r = parse_polynomial(alg, text);
  REQUIRE(std::holds_alternative<Polynomial>(r));
  return std::get<Polynomial>(r);
}

bool same_class(const CochainComplex& cx, int n, const Polynomial& a, const Polynomial& b) {
  auto h = cohomology(cx, n);
  return h.space.is_zero_class(cx.to_vector(a - b, n));
}

// dim H^n for n = 0.. from the brute-force oracle, frozen.
const std::map<std::string, std::vector<std::size_t>> kFrozenDims = {
    {"s2", {1, 0, 1, 0, 0, 0, 0}},
    {"s3", {1, 0, 0, 1, 0, 0, 0}},
    {"s3xs5", {1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0}},
    {"cp2", {1, 0, 1, 0, 1, 0, 0}},
    {"cp3", {1, 0, 1, 0, 1, 0, 1, 0, 0}},
    {"e6-pure", {1, 0, 2, 0, 3, 0, 2, 0, 1, 0, 0}},
    {"free-odd", {1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 0}},
    {"mixed-1", {1, 0, 1, 2, 1, 2, 2, 2, 1, 2, 1, 0, 1, 0, 0}},
    {"s2xs2", {1, 0, 2, 0, 1, 0, 0}},
    {"s2xs5-twisted", {1, 0, 1, 0, 0, 1, 0, 1, 0, 0}},
};

}  // namespace

TEST_CASE("differential matrices") {
  CochainComplex s2(corpus_entry("s2").model());
  const auto& m3 = s2.differential_matrix(3);
  REQUIRE(m3.cols() == 1);
  REQUIRE(m3.rows == 1);
  CHECK(m3.columns[0] == SparseVector::unit(0));
  CHECK(s2.differential_matrix(0).columns.at(0).is_zero());

  CochainComplex free(corpus_entry("free-odd").model());
  for (int n = 0; n <= 15; ++n)
    for (const auto& c : free.differential_matrix(n).columns) CHECK(c.is_zero());
}

TEST_CASE("cohomology dimensions match frozen oracle values") {
  for (const auto& [id, dims] : kFrozenDims) {
    CAPTURE(id);
    CochainComplex cx(corpus_entry(id).model());
    for (std::size_t n = 0; n < dims.size(); ++n) CHECK(cohomology(cx, static_cast<int>(n)).dim() == dims[n]);
  }
}

TEST_CASE("engine cohomology agrees with the brute-force oracle") {
  for (const auto& entry : corpus()) {
    CAPTURE(entry.id);
    auto m = entry.model();
    auto o = oracle::Model::from(m);
    CochainComplex cx(m);
    int bound = invariants(m).n_formula + 4;
    for (int n = 0; n <= bound; ++n) CHECK(cohomology(cx, n).dim() == oracle::cohomology_dim(o, n));
  }
}

TEST_CASE("cohomology representatives") {
  auto cp2 = corpus_entry("cp2").model();
  CochainComplex cx(cp2);
  CHECK(cohomology(cx, 2).representatives == std::vector<Polynomial>{parse(cp2.algebra, "x")});
  CHECK(cohomology(cx, 4).representatives == std::vector<Polynomial>{parse(cp2.algebra, "x^2")});

  auto e6 = corpus_entry("e6-pure").model();
  CochainComplex ce(e6);
  std::size_t total = 0;
  for (int n = 0; n <= 8; ++n) total += cohomology(ce, n).dim();
  CHECK(total == 9);
  CHECK(cohomology(ce, 8).representatives == std::vector<Polynomial>{parse(e6.algebra, "x^2*y^2")});

  for (const auto& entry : corpus()) {
    CochainComplex c(entry.model());
    for (int n = 0; n <= 10; ++n) {
      auto h = cohomology(c, n);
      for (const auto& rep : h.representatives) {
        auto v = c.to_vector(rep, n);
        CHECK(c.apply_d(v, n).is_zero());
        CHECK_FALSE(coboundaries(c, n).contains(v));
      }
    }
  }
}

TEST_CASE("bigraded cohomology") {
  CochainComplex cp2(corpus_entry("cp2").model());
  CHECK(bigraded_cohomology(cp2, 0) == std::map<int, std::size_t>{{0, 1}});
  CHECK(bigraded_cohomology(cp2, 2) == std::map<int, std::size_t>{{1, 1}});
  CHECK(bigraded_cohomology(cp2, 4) == std::map<int, std::size_t>{{2, 1}});
  CHECK(bigraded_cohomology(cp2, 5).empty());

  CochainComplex s2(corpus_entry("s2").model());
  for (int n = 1; n <= 8; ++n)
    CHECK(bigraded_cohomology(s2, n) == (n == 2 ? std::map<int, std::size_t>{{1, 1}} : std::map<int, std::size_t>{}));

  CochainComplex free(corpus_entry("s3xs5").model());
  for (int n = 0; n <= 12; ++n) {
    std::map<int, std::size_t> span;
    for (const auto& m : degree_basis(free.algebra(), n)) ++span[m.word_length()];
    CHECK(bigraded_cohomology(free, n) == span);
  }

  CochainComplex twisted(corpus_entry("s2xs5-twisted").model());
  CHECK_THROWS_AS(bigraded_cohomology(twisted, 4), std::invalid_argument);
}

TEST_CASE("bigraded cohomology of leading models agrees with the oracle") {
  for (const auto& entry : corpus()) {
    CAPTURE(entry.id);
    auto lead = leading_model(entry.model());
    auto o = oracle::Model::from(lead);
    CochainComplex cx(lead);
    int bound = invariants(lead).n_formula + 2;
    for (int n = 0; n <= bound; ++n) {
      auto split = bigraded_cohomology(cx, n);
      CHECK(split == oracle::bigraded(o, n));
      std::size_t sum = 0;
      for (const auto& [p, d] : split) sum += d;
      CHECK(sum == cohomology(cx, n).dim());
    }
  }
}

TEST_CASE("rank-nullity and the Poincare series") {
  for (const auto& entry : corpus()) {
    CochainComplex cx(entry.model());
    for (int n = 0; n <= 14; ++n) {
      const auto& mat = cx.differential_matrix(n);
      CHECK(cx.piece(n).dim() == cocycles(cx, n).dim() + mat.rank());
    }
  }
}

TEST_CASE("Euler characteristic of truncated complexes") {
  // Σ (-1)^n dim C^n over n <= b equals Σ (-1)^n dim H^n plus the boundary
  // correction (-1)^b rank d_b.
  for (const auto& entry : corpus()) {
    CochainComplex cx(entry.model());
    for (int b : {6, 9, 12}) {
      long chain = 0, coh = 0;
      for (int n = 0; n <= b; ++n) {
        long sign = n % 2 == 0 ? 1 : -1;
        chain += sign * static_cast<long>(cx.piece(n).dim());
        coh += sign * static_cast<long>(cohomology(cx, n).dim());
      }
      long correction = (b % 2 == 0 ? 1 : -1) * static_cast<long>(cx.differential_matrix(b).rank());
      CHECK(chain == coh + correction);
    }
  }
}

TEST_CASE("ellipticity verdicts") {
  CochainComplex s2(corpus_entry("s2").model());
  auto v = ellipticity_verdict(s2);
  CHECK(v.status == EllipticStatus::Elliptic);
  CHECK(v.n == 2);
  CHECK(v.window == 5);

  CochainComplex poly(SullivanModel(GradedAlgebra({{0, "x", 2}})));
  auto p = ellipticity_verdict(poly);
  CHECK(p.status == EllipticStatus::NotElliptic);
  CHECK(p.n_formula == -1);
  CHECK(p.witness_degree == 0);

  CochainComplex e6(corpus_entry("e6-pure").model());
  auto ve = ellipticity_verdict(e6);
  CHECK(ve.status == EllipticStatus::Elliptic);
  CHECK(ve.n == 8);

  auto mixed = corpus_entry("mixed-1").model();
  CochainComplex lead(leading_model(mixed));
  auto vl = ellipticity_verdict(lead);
  CHECK(vl.status == EllipticStatus::NotElliptic);
  REQUIRE(vl.witness_degree);
  CHECK(*vl.witness_degree == 13);
  CHECK(vl.witness_class);

  CochainComplex full(mixed);
  auto vf = ellipticity_verdict(full);
  CHECK(vf.status == EllipticStatus::Elliptic);
  CHECK(vf.n == 12);

  EllipticityOptions tight;
  tight.budget = 3;
  CochainComplex small(corpus_entry("e6-pure").model(), tight.budget);
  CHECK(ellipticity_verdict(small, tight).status == EllipticStatus::Undetermined);

  for (const auto& entry : corpus()) {
    if (!entry.has_tag("elliptic")) continue;
    CAPTURE(entry.id);
    CochainComplex cx(entry.model());
    CHECK(ellipticity_verdict(cx).elliptic());
  }
}

TEST_CASE("NotElliptic verdicts carry witnesses") {
  // Λ(x2, y5), dy = x^3 with an extra free even generator: H is infinite.
  auto res = parse_model("generator x 2\ngenerator u 4\ngenerator y 5\nd y = x^3\n");
  REQUIRE(res.ok());
  CochainComplex cx(*res.model);
  auto v = ellipticity_verdict(cx);
  CHECK(v.status == EllipticStatus::NotElliptic);
  CHECK(v.n_formula == 1);
  CHECK(v.witness_degree == 2);
}

TEST_CASE("Poincare pairing and duals") {
  auto cp2 = corpus_entry("cp2").model();
  CochainComplex cx(cp2);
  CHECK(same_class(cx, 2, pairing_dual(cx, 4, parse(cp2.algebra, "x")), parse(cp2.algebra, "x")));
  CHECK(same_class(cx, 4, pairing_dual(cx, 4, Polynomial::constant(1)), fundamental_class(cx, 4).representative));

  auto e6 = corpus_entry("e6-pure").model();
  CochainComplex ce(e6);
  CHECK(same_class(ce, 4, pairing_dual(ce, 8, parse(e6.algebra, "x*y")), parse(e6.algebra, "x*y")));

  for (const auto& entry : corpus()) {
    if (!entry.has_tag("elliptic")) continue;
    CAPTURE(entry.id);
    CochainComplex c(entry.model());
    int top = invariants(entry.model()).n_formula;
    std::vector<CohomologyEntry> h;
    for (int i = 0; i <= top; ++i) h.push_back(cohomology(c, i));
    CHECK(poincare_duality_holds(c, top, h));
    auto omega = fundamental_class(c, top).representative;
    for (int i = 0; i <= top; ++i)
      for (const auto& a : h[static_cast<std::size_t>(i)].representatives) {
        auto b = pairing_dual(c, top, a);
        CHECK(same_class(c, top, multiply(c.algebra(), a, b), omega));
      }
  }
}

TEST_CASE("pairing_dual rejects a model without duality") {
  CochainComplex free(SullivanModel(GradedAlgebra({{0, "x", 2}})));
  CHECK_THROWS_AS(pairing_dual(free, 3, Polynomial(Monomial::generator(0))), DualityViolation);
}

TEST_CASE("fundamental class has word length e on homogeneous elliptic models") {
  for (const auto& entry : corpus()) {
    if (!entry.has_tag("elliptic") || !entry.has_tag("homogeneous")) continue;
    CAPTURE(entry.id);
    auto m = entry.model();
    auto inv = invariants(m);
    CochainComplex cx(m);
    auto f = fundamental_class(cx, inv.n_formula);
    CHECK(f.degree == inv.n_formula);
    REQUIRE(f.word_length);
    CHECK(*f.word_length == *inv.e_formula);
  }
}

TEST_CASE("cohomology table collects degrees and bigrading") {
  CochainComplex cx(corpus_entry("e6-pure").model());
  auto t = cohomology_table(cx, 8, true);
  CHECK(t.total() == 9);
  REQUIRE(t.bigraded);
  CHECK((*t.bigraded)[6] == std::map<int, std::size_t>{{3, 2}});
}
