#ifndef SULLIVAN_CLOSURE_HPP
#define SULLIVAN_CLOSURE_HPP

// Acyclic closure built one generator at a time: D(sv) = v + c, where c lies in
// Λ(V_{<v} ⊕ sV_{<v}) and solves Dc = -dv. The partial closure is acyclic in
// positive degrees, so c exists; it is chosen canonically by echelon reduction.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sullivan/cochain.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

namespace detail {

struct ClosureSlot {
  std::string name;
  int degree;
  bool suspended;
  GeneratorId origin;
};

/// Degree-sorted Λ(V' ⊕ sV') for the first `count` base generators.
inline GradedAlgebra closure_algebra(const GradedAlgebra& base, std::size_t count, std::vector<GeneratorId>& v_ids,
                                     std::vector<GeneratorId>& sv_ids) {
  std::vector<ClosureSlot> slots;
  for (std::size_t g = 0; g < count; ++g) {
    const auto& gen = base.generator(static_cast<GeneratorId>(g));
    slots.push_back({gen.name, gen.degree, false, gen.id});
  }
  for (std::size_t g = 0; g < count; ++g) {
    const auto& gen = base.generator(static_cast<GeneratorId>(g));
    slots.push_back({"s" + gen.name, gen.degree - 1, true, gen.id});
  }
  std::stable_sort(slots.begin(), slots.end(), [](const ClosureSlot& a, const ClosureSlot& b) { return a.degree < b.degree; });
  v_ids.assign(count, 0);
  sv_ids.assign(count, 0);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto id = static_cast<GeneratorId>(i);
    gens.push_back({id, slots[i].name, slots[i].degree});
    (slots[i].suspended ? sv_ids : v_ids)[static_cast<std::size_t>(slots[i].origin)] = id;
  }
  return GradedAlgebra(std::move(gens));
}

}  // namespace detail

inline AcyclicClosure inductive_acyclic_closure(const SullivanModel& model, std::size_t budget = CochainComplex::kDefaultBudget) {
  const auto& base = model.algebra;
  std::size_t n = base.size();
  // c for each sv, with the generator names of the algebra it was solved in.
  std::vector<std::pair<std::vector<std::string>, Polynomial>> sv_values;

  auto build = [&](std::size_t count, std::vector<GeneratorId>& v_ids, std::vector<GeneratorId>& sv_ids) {
    GradedAlgebra alg = detail::closure_algebra(base, count, v_ids, sv_ids);
    Derivation d = Derivation::zero(alg, 1);
    std::vector<GeneratorId> base_to_here(v_ids);
    for (std::size_t g = 0; g < count; ++g) {
      d.values[static_cast<std::size_t>(v_ids[g])] = reindex(alg, base_to_here, model.d(static_cast<GeneratorId>(g)));
      if (g < sv_values.size()) {
        const auto& [names, poly] = sv_values[g];
        std::vector<GeneratorId> map;
        for (const auto& nm : names) map.push_back(*alg.find(nm));
        d.values[static_cast<std::size_t>(sv_ids[g])] =
            Polynomial(Monomial::generator(v_ids[g])) + reindex(alg, map, poly);
      }
    }
    return SullivanModel(alg, d);
  };

  for (std::size_t g = 0; g < n; ++g) {
    std::vector<GeneratorId> v_ids, sv_ids;
    SullivanModel partial = build(g, v_ids, sv_ids);
    auto gid = static_cast<GeneratorId>(g);
    int deg = base.degree(gid);
    Polynomial c;
    if (!model.d(gid).is_zero()) {
      CochainComplex cx(partial, budget);
      Polynomial target = -reindex(partial.algebra, v_ids, model.d(gid));
      const auto& src = cx.piece(deg);
      const auto& mat = cx.differential_matrix(deg);
      std::size_t rows = mat.rows;
      std::vector<SparseVector> aug;
      for (std::size_t j = 0; j < src.dim(); ++j) {
        std::vector<SparseVector::Entry> e(mat.columns[j].entries().begin(), mat.columns[j].entries().end());
        e.emplace_back(rows + j, Rational(1));
        aug.emplace_back(std::move(e));
      }
      Subspace span = Subspace::span(rows + src.dim(), aug);
      SparseVector w = cx.to_vector(target, deg + 1);
      SparseVector r = span.reduce(w);
      SparseVector sol;
      for (const auto& [i, v] : r.entries()) {
        if (i < rows) throw std::logic_error("partial closure is not acyclic: -dv is not a boundary");
        sol.add_scaled(SparseVector::unit(i - rows), -v);
      }
      c = cx.to_polynomial(sol, deg);
    }
    std::vector<std::string> names;
    for (const auto& gen : partial.algebra.generators()) names.push_back(gen.name);
    sv_values.emplace_back(std::move(names), std::move(c));
  }

  AcyclicClosure ac;
  ac.base = model;
  SullivanModel full = build(n, ac.v_ids, ac.sv_ids);
  ac.algebra = full.algebra;
  ac.D = full.differential;
  ac.suspension = Derivation::zero(ac.algebra, -1);
  for (std::size_t g = 0; g < n; ++g)
    ac.suspension.values[static_cast<std::size_t>(ac.v_ids[g])] = Polynomial(Monomial::generator(ac.sv_ids[g]));
  if (!ac.d_squared_zero()) throw std::logic_error("inductive closure differential does not square to zero");
  return ac;
}

}  // namespace sullivan

#endif  // SULLIVAN_CLOSURE_HPP
