#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renorm/graph.hpp"
#include "renorm/rational.hpp"

namespace renorm {

using GenId = int;

struct GeneratorInfo {
  std::string name;
  std::string key;  // canonical form, the identity of the generator
  Graph graph;      // representative
  int grade = 0;    // loop number
};

// Commutative monomial in the generators: sorted multiset of ids. Empty is
// the unit.
using Monomial = std::vector<GenId>;

Monomial monomial_mul(const Monomial& a, const Monomial& b);

// Finite rational combination of monomials. `truncated` records that a
// product dropped monomials beyond the grade cap; it is never dropped
// silently.
struct HopfElement {
  std::map<Monomial, Rational> terms;
  bool truncated = false;

  bool is_zero() const { return terms.empty(); }
  Rational coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rational(0) : it->second;
  }
};

HopfElement hopf_mono(const Monomial& m, const Rational& c = Rational(1));
HopfElement hopf_add(const HopfElement& a, const HopfElement& b);
HopfElement hopf_scale(const Rational& c, const HopfElement& a);

struct TensorElement {
  std::map<std::pair<Monomial, Monomial>, Rational> terms;
};

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b);

// The free commutative Hopf algebra on the 1PI graphs generated by a seed
// list under admissible-subgraph components and contractions. Construction
// runs the closure, assigns deterministic ids ordered by (grade, canonical
// key), and precomputes coproducts and antipodes; instances are immutable
// afterwards and safe to share across threads.
class HopfAlgebra {
 public:
  HopfAlgebra(const std::vector<std::pair<std::string, Graph>>& seeds,
              int grade_cap);

  int grade_cap() const { return cap_; }
  int generator_count() const { return static_cast<int>(gens_.size()); }
  const GeneratorInfo& generator(GenId id) const { return gens_.at(id); }
  // -1 when absent.
  GenId find_name(const std::string& name) const;
  GenId find_key(const std::string& key) const;

  // All monomials of grade <= cap including the unit, ordered by (grade,
  // factor ids). Generators of grade > cap exist but do not enter the basis.
  const std::vector<Monomial>& basis() const { return basis_; }
  int grade(const Monomial& m) const;

  // One admissible subgraph of a generator: components as a monomial, the
  // contraction as a generator. Multiplicities appear as repeated entries.
  struct SubgraphTerm {
    Monomial left;
    GenId right;
  };
  const std::vector<SubgraphTerm>& subgraph_terms(GenId id) const {
    return sub_terms_.at(id);
  }

  // Delta(m): 1 (x) m + m (x) 1 + admissible middle terms, extended to
  // monomials multiplicatively. Grade is preserved leg by leg.
  TensorElement coproduct(const Monomial& m) const;
  Rational counit(const HopfElement& a) const { return a.coeff({}); }

  // S(Gamma) = -Gamma - sum S(gamma) * Gamma/gamma, extended as an algebra
  // map; exact rational coefficients.
  const HopfElement& antipode_gen(GenId id) const { return antipodes_.at(id); }
  HopfElement antipode(const Monomial& m) const;
  HopfElement antipode(const HopfElement& a) const;

  // Grading operator Y: scales each monomial by its grade.
  HopfElement grading(const HopfElement& a) const;

  // Product in H with grade-cap truncation; sets `truncated` when it drops.
  HopfElement multiply(const HopfElement& a, const HopfElement& b) const;

  // "B1.B1", unit renders as "1". Elements render with terms ordered by
  // (grade, name): "2*B1.B1 - B2".
  std::string render(const Monomial& m) const;
  std::string render(const HopfElement& a) const;
  std::string render(const TensorElement& t) const;
  Monomial parse_monomial(const std::string& text) const;

 private:
  int cap_;
  std::vector<GeneratorInfo> gens_;
  std::map<std::string, GenId> by_key_;
  std::map<std::string, GenId> by_name_;
  std::vector<std::vector<SubgraphTerm>> sub_terms_;
  std::vector<Monomial> basis_;
  std::vector<HopfElement> antipodes_;
  std::map<Monomial, TensorElement> coproduct_cache_;  // basis monomials

  TensorElement coproduct_uncached(const Monomial& m) const;
};

using HopfPtr = std::shared_ptr<const HopfAlgebra>;

// The built-in corpus: bubble B1, tadpole T1, sunset S, bubble chains B2 and
// B3, the sunset-dressed bubble BS3, and the two graphs their contractions
// produce (B1d, the bubble with a subdivided edge; B1t, the bubble carrying a
// tadpole on the subdivided edge).
std::vector<std::pair<std::string, Graph>> builtin_corpus();

// Convenience: algebra over the built-in corpus at the given cap.
HopfPtr builtin_algebra(int grade_cap);

}  // namespace renorm
