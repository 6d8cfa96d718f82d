#ifndef SULLIVAN_CORPUS_HPP
#define SULLIVAN_CORPUS_HPP

// Built-in models. Tags name the checks whose hypotheses the model meets
// (hilali, nogaps, e0gaps, lupton, hilali-special) plus structural traits.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sullivan/parser.hpp"

namespace sullivan {

struct CorpusEntry {
  std::string id;
  std::string description;
  std::string source;
  std::vector<std::string> tags;

  bool has_tag(std::string_view t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }

  SullivanModel model() const {
    auto res = parse_model(source);
    if (!res.ok()) throw std::logic_error("corpus model " + id + " does not parse");
    return *res.model;
  }
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"s2", "2-sphere",
       "generator x 2\n"
       "generator y 3\n"
       "d y = x^2\n",
       {"elliptic", "homogeneous", "pure", "lead-elliptic", "hilali", "nogaps", "e0gaps", "lupton"}},
      {"s3", "3-sphere",
       "generator x 3\n",
       {"elliptic", "homogeneous", "pure", "odd", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"s3xs5", "product of spheres S^3 x S^5",
       "generator x 3\n"
       "generator y 5\n",
       {"elliptic", "homogeneous", "pure", "odd", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"cp2", "complex projective plane",
       "generator x 2\n"
       "generator y 5\n"
       "d y = x^3\n",
       {"elliptic", "homogeneous", "pure", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"cp3", "complex projective 3-space",
       "generator x 2\n"
       "generator y 7\n"
       "d y = x^4\n",
       {"elliptic", "homogeneous", "pure", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"e6-pure", "pure model with cohomology Q[x,y]/(x^3, y^3)",
       "generator x 2\n"
       "generator y 2\n"
       "generator z 5\n"
       "generator w 5\n"
       "d z = x^3\n"
       "d w = y^3\n",
       {"elliptic", "homogeneous", "pure", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"free-odd", "free exterior algebra on three odd generators",
       "generator x 3\n"
       "generator y 5\n"
       "generator z 7\n",
       {"elliptic", "homogeneous", "pure", "odd", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton",
        "hilali-special"}},
      {"mixed-1", "d_3 part has infinite cohomology; hypothesis-failure exemplar",
       "generator x 2\n"
       "generator a 3\n"
       "generator b 3\n"
       "generator c 7\n"
       "d c = x*a*b + x^4\n",
       {"elliptic", "kerd2-odd", "lead-not-elliptic", "hilali"}},
      {"s2xs2", "product of two 2-spheres",
       "generator x 2\n"
       "generator u 2\n"
       "generator y 3\n"
       "generator v 3\n"
       "d y = x^2\n"
       "d v = u^2\n",
       {"elliptic", "homogeneous", "pure", "lead-elliptic", "hilali", "nogaps", "e0gaps", "lupton"}},
      {"s2xs5-twisted", "S^2 x S^5 presented with a length-3 perturbation d = d_2 + d_3",
       "generator x 2\n"
       "generator y 3\n"
       "generator z 5\n"
       "d y = x^2\n"
       "d z = x^3\n",
       {"elliptic", "pure", "lead-elliptic", "kerd2-odd", "hilali", "nogaps", "e0gaps", "lupton"}},
  };
  return entries;
}

inline const CorpusEntry& corpus_entry(std::string_view id) {
  for (const auto& e : corpus())
    if (e.id == id) return e;
  throw std::out_of_range("unknown corpus model '" + std::string(id) + "'");
}

}  // namespace sullivan

#endif  // SULLIVAN_CORPUS_HPP
