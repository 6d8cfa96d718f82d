#ifndef SULLIVAN_MODEL_HPP
#define SULLIVAN_MODEL_HPP

// Sullivan minimal models (ΛV, d): validation, word-length homogeneous parts
// d_i, closed-form invariants and the acyclic closure (ΛV ⊗ ΛsV, D).

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"

namespace sullivan {

struct SullivanModel {
  GradedAlgebra algebra;
  Derivation differential;

  SullivanModel() = default;
  SullivanModel(GradedAlgebra alg, Derivation d) : algebra(std::move(alg)), differential(std::move(d)) {
    if (differential.values.size() != algebra.size())
      throw std::invalid_argument("differential must be given on every generator");
  }

  /// Model with zero differential.
  explicit SullivanModel(GradedAlgebra alg) : algebra(std::move(alg)), differential(Derivation::zero(algebra, 1)) {}

  const Polynomial& d(GeneratorId g) const { return differential.on(g); }
  Polynomial d(const Polynomial& p) const { return apply_derivation(algebra, differential, p); }

  bool operator==(const SullivanModel&) const = default;
};

enum class Invariant {
  GeneratorDegree,   // |g| >= 2
  DegreeOrder,       // declared degrees nondecreasing
  DegreeHomogeneous, // d(g) homogeneous of degree |g|+1
  Minimality,        // d(g) ∈ Λ^{>=2}V
  Nilpotence,        // d(g) only involves earlier generators
  DSquared,          // d(d(g)) = 0
};

inline const char* to_string(Invariant inv) {
  switch (inv) {
    case Invariant::GeneratorDegree: return "generator-degree";
    case Invariant::DegreeOrder: return "degree-order";
    case Invariant::DegreeHomogeneous: return "degree-homogeneous";
    case Invariant::Minimality: return "minimality";
    case Invariant::Nilpotence: return "nilpotence";
    case Invariant::DSquared: return "d-squared";
  }
  return "?";
}

inline constexpr Invariant kAllInvariants[] = {Invariant::GeneratorDegree,   Invariant::DegreeOrder,
                                               Invariant::DegreeHomogeneous, Invariant::Minimality,
                                               Invariant::Nilpotence,        Invariant::DSquared};

struct ValidationIssue {
  Invariant invariant;
  GeneratorId generator;
  std::string witness;  // offending polynomial
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool passed(Invariant inv) const {
    return std::none_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.invariant == inv; });
  }
};

/// Checks every minimal-model invariant and collects all failures. d² = 0 is
/// decided exactly: d² is a derivation, so it suffices to test generators.
inline ValidationReport validate(const SullivanModel& model) {
  ValidationReport rep;
  const auto& alg = model.algebra;
  auto issue = [&](Invariant inv, GeneratorId g, const Polynomial& w, std::string msg) {
    rep.issues.push_back({inv, g, format_polynomial(alg, w), std::move(msg)});
  };
  for (const auto& g : alg.generators()) {
    if (g.degree < 2) issue(Invariant::GeneratorDegree, g.id, Polynomial(), "generator " + g.name + " has degree < 2");
    if (g.id > 0 && alg.degree(g.id - 1) > g.degree)
      issue(Invariant::DegreeOrder, g.id, Polynomial(),
            "generator " + g.name + " declared after a generator of higher degree");
  }
  bool structurally_sound = true;
  for (const auto& g : alg.generators()) {
    const Polynomial& dg = model.d(g.id);
    if (dg.is_zero()) continue;
    for (const auto& [m, c] : dg.terms()) {
      if (m.degree(alg) != g.degree + 1) {
        issue(Invariant::DegreeHomogeneous, g.id, dg,
              "d(" + g.name + ") has a term of degree " + std::to_string(m.degree(alg)) + ", expected " +
                  std::to_string(g.degree + 1));
        structurally_sound = false;
        break;
      }
    }
    if (auto len = dg.min_word_length(); len && *len < 2) {
      issue(Invariant::Minimality, g.id, dg, "d(" + g.name + ") has a term of word length " + std::to_string(*len));
      structurally_sound = false;
    }
    if (auto top = dg.highest_generator(); top && *top >= g.id) {
      issue(Invariant::Nilpotence, g.id, dg,
            "d(" + g.name + ") involves " + alg.generator(*top).name + ", which is not earlier in the order");
    }
  }
  if (structurally_sound) {
    for (const auto& g : alg.generators()) {
      Polynomial dd = model.d(model.d(g.id));
      if (!dd.is_zero()) issue(Invariant::DSquared, g.id, dd, "d(d(" + g.name + ")) = " + format_polynomial(alg, dd));
    }
  }
  return rep;
}

/// Word-length-i component d_i of the differential.
inline Derivation homogeneous_part(const SullivanModel& model, int length) {
  Derivation out = Derivation::zero(model.algebra, model.differential.degree);
  for (std::size_t g = 0; g < model.algebra.size(); ++g) out.values[g] = model.differential.values[g].length_component(length);
  return out;
}

/// Common word length of every nonzero d(g), if any.
struct LengthProfile {
  bool homogeneous = true;
  std::optional<int> length;  // nullopt for d = 0
};

inline LengthProfile length_profile(const Derivation& d) {
  LengthProfile lp;
  for (const auto& v : d.values) {
    for (const auto& [m, c] : v.terms()) {
      int l = m.word_length();
      if (lp.length && *lp.length != l) {
        lp.homogeneous = false;
        return lp;
      }
      lp.length = l;
    }
  }
  return lp;
}

struct ModelInvariants {
  std::optional<int> k;  // nullopt when d = 0
  int dim_v_odd = 0;
  int dim_v_even = 0;
  int n_formula = 0;
  std::optional<int> e_formula;
  int chi_pi = 0;

  int dim_v() const { return dim_v_odd + dim_v_even; }
};

inline ModelInvariants invariants(const SullivanModel& model) {
  ModelInvariants inv;
  for (const auto& g : model.algebra.generators()) {
    if (g.odd()) {
      ++inv.dim_v_odd;
      inv.n_formula += g.degree;
    } else {
      ++inv.dim_v_even;
      inv.n_formula -= g.degree;
    }
  }
  inv.n_formula += inv.dim_v_even;
  for (const auto& v : model.differential.values)
    if (auto l = v.min_word_length()) inv.k = inv.k ? std::min(*inv.k, *l) : *l;
  if (inv.k)
    inv.e_formula = inv.dim_v_odd + (*inv.k - 2) * inv.dim_v_even;
  else if (inv.dim_v_even == 0)
    inv.e_formula = inv.dim_v_odd;
  inv.chi_pi = inv.dim_v_even - inv.dim_v_odd;
  return inv;
}

/// (ΛV, d_k): the first nonzero homogeneous part. For d = 0 this is the model itself.
inline SullivanModel leading_model(const SullivanModel& model) {
  auto inv = invariants(model);
  if (!inv.k) return model;
  return SullivanModel(model.algebra, homogeneous_part(model, *inv.k));
}

/// Reindex p into another algebra, generator g ↦ target[g]. Signs are
/// recomputed from scratch, so the target may order odd generators differently.
inline Polynomial reindex(const GradedAlgebra& target_alg, const std::vector<GeneratorId>& target,
                          const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial acc = Polynomial::constant(c);
    for (auto [id, e] : m.factors())
      for (int i = 0; i < e; ++i)
        acc = multiply(target_alg, acc, Polynomial(Monomial::generator(target[static_cast<std::size_t>(id)])));
    out += acc;
  }
  return out;
}

struct AcyclicClosure {
  SullivanModel base;
  GradedAlgebra algebra;            // Λ(V ⊕ sV)
  std::vector<GeneratorId> v_ids;   // position of v in `algebra`
  std::vector<GeneratorId> sv_ids;  // position of sv in `algebra`
  Derivation suspension;            // S: v ↦ sv, sv ↦ 0 (degree -1)
  Derivation D;                     // D|_V = d, D(sv) = -S(dv)

  SullivanModel as_complex() const { return SullivanModel(algebra, D); }

  bool d_squared_zero() const {
    for (const auto& v : D.values)
      if (!apply_derivation(algebra, D, v).is_zero()) return false;
    return true;
  }
};

/// D|_V = d and D(sv) = -S(dv), exactly as stated. D squares to zero, but
/// without a linear term v in D(sv) the result is not acyclic (s of a
/// lowest-degree generator is a nonzero class); see inductive_acyclic_closure.
inline AcyclicClosure acyclic_closure(const SullivanModel& model) {
  AcyclicClosure ac;
  ac.base = model;
  const auto& base = model.algebra;
  struct Slot {
    std::string name;
    int degree;
    bool suspended;
    GeneratorId origin;
  };
  std::vector<Slot> slots;
  for (const auto& g : base.generators()) slots.push_back({g.name, g.degree, false, g.id});
  for (const auto& g : base.generators()) slots.push_back({"s" + g.name, g.degree - 1, true, g.id});
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.degree < b.degree; });

  std::vector<Generator> gens;
  ac.v_ids.assign(base.size(), 0);
  ac.sv_ids.assign(base.size(), 0);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto id = static_cast<GeneratorId>(i);
    gens.push_back({id, slots[i].name, slots[i].degree});
    (slots[i].suspended ? ac.sv_ids : ac.v_ids)[static_cast<std::size_t>(slots[i].origin)] = id;
  }
  ac.algebra = GradedAlgebra(std::move(gens));

  ac.suspension = Derivation::zero(ac.algebra, -1);
  for (std::size_t g = 0; g < base.size(); ++g)
    ac.suspension.values[static_cast<std::size_t>(ac.v_ids[g])] = Polynomial(Monomial::generator(ac.sv_ids[g]));

  ac.D = Derivation::zero(ac.algebra, 1);
  for (std::size_t g = 0; g < base.size(); ++g) {
    Polynomial dv = reindex(ac.algebra, ac.v_ids, model.differential.values[g]);
    ac.D.values[static_cast<std::size_t>(ac.sv_ids[g])] = -apply_derivation(ac.algebra, ac.suspension, dv);
    ac.D.values[static_cast<std::size_t>(ac.v_ids[g])] = std::move(dv);
  }
  if (!ac.d_squared_zero()) throw std::logic_error("acyclic closure differential does not square to zero");
  return ac;
}

}  // namespace sullivan

#endif  // SULLIVAN_MODEL_HPP
