#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "flux/linalg.hpp"
#include "flux/rational.hpp"

namespace flux {

// Path-algebra quotients by homogeneous length-2 relations, over the
// semisimple vertex base. A word lists its arrows last-applied first, so
// concatenation of words matches the multiplication order a*b = "b, then a".

struct Arrow {
  int src = 0;
  int tgt = 0;
  int deg = 0;
};

// One relation: a combination of composable length-2 words, all sharing one
// (tgt, src) bucket. A word {a, b} is the product arrow[a]*arrow[b].
struct Rel2 {
  std::vector<std::pair<std::array<int, 2>, Rat>> terms;
};

// Weight-n data built from weight n - 1: the component of weight n is the
// span of (arrow, previous class) pairs modulo the relations applied to
// weight-(n-2) classes, so no full word list is ever materialized.
struct WeightComponent {
  std::vector<std::vector<int>> basis_words;  // one canonical word per class
  // reduction of arrow r applied after class j of the previous weight
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> red;
};

class QuadraticAlgebra {
 public:
  QuadraticAlgebra(int nverts, std::vector<Arrow> arrows, std::vector<Rel2> rels);

  int nverts() const { return nverts_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Rel2>& rels() const { return rels_; }

  const WeightComponent& component(int n) const;  // n >= 1
  int dim(int n) const;                           // dim(0) = nverts

  int word_src(const std::vector<int>& w) const;
  int word_tgt(const std::vector<int>& w) const;
  int word_deg(const std::vector<int>& w) const;
  bool word_composable(const std::vector<int>& w) const;

  std::vector<std::pair<int, Rat>> reduce_word(const std::vector<int>& w) const;

  // Product of basis class i of weight m with basis class j of weight n,
  // as coordinates over the basis of weight m + n. Weight-0 indices name
  // vertices. Zero when the buckets fail to compose.
  std::vector<std::pair<int, Rat>> mul_basis(int m, int i, int n, int j) const;

  int basis_src(int n, int i) const;
  int basis_tgt(int n, int i) const;
  int basis_deg(int n, int i) const;

 private:
  std::vector<std::pair<int, Rat>> prepend_arrow(
      int r, int n, const std::vector<std::pair<int, Rat>>& combo) const;

  int nverts_;
  std::vector<Arrow> arrows_;
  std::vector<Rel2> rels_;
  mutable std::map<int, WeightComponent> cache_;
};

// Reversed arrows of degree 1 - deg, with the orthogonal relation span under
// the pairing that evaluates criss-cross and weights by the parity of the
// first-applied arrow.
QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a);

QuadraticAlgebra doubled_grading(const QuadraticAlgebra& a);

struct KoszulDegreeReport {
  int weight = 0;
  bool exact = true;
  long euler = 0;  // alternating sum of chain dims; must vanish when exact
  std::vector<int> chain_dims;
  std::vector<int> homology;  // dim at chain position k = 0..weight
};

struct KoszulReport {
  bool acyclic = true;
  std::vector<KoszulDegreeReport> degrees;
};

// Exactness of the weight-n piece of the standard resolution-style complex
// built from the dual's components paired against the algebra, n = 1..bound.
KoszulReport koszul_acyclicity(const QuadraticAlgebra& a, int bound);

// The eight-dimensional two-vertex algebra: w1, w2 of degree 0 one way, w3,
// w4 of degree 1 back; same-index-pattern products vanish and the two cross
// products are anti-identified, so both closed buckets multiply as a wedge.
QuadraticAlgebra make_wedge_pair();

QuadraticAlgebra make_free_odd();        // one vertex, one degree-1 arrow
QuadraticAlgebra make_exterior(int k);   // k anticommuting odd arrows
QuadraticAlgebra make_symmetric(int k);  // k commuting even arrows

// A frozen three-generator presentation whose weight-4 complex has nonzero
// Euler characteristic, so no choice of ranks could make it exact.
QuadraticAlgebra make_nonacyclic_control();

}  // namespace flux
