#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abelic/matrix.hpp"
#include "abelic/splitting.hpp"

namespace abelic {

/*
 * Polarization calculus on a power of an elliptic curve.
 *
 * A class is a conjugate-symmetric matrix over K = Frac(O); the identity
 * matrix is the product polarization, pullback is conjugation, and tensor
 * product is entrywise addition.  A formal class keeps the row symbols a
 * pullback was built from, so collapsing after a formal pullback can be
 * audited against plain matrix conjugation.  Intersection numbers are mixed
 * determinant coefficients, computed by two unrelated routes (permuted-row
 * determinants vs. a truncated polynomial expansion) so each can audit the
 * other.
 */

// Conjugate-symmetric class matrix; entries a + b*omega with rational a, b.
struct HermitianClass {
  Order order;
  int size = 0;
  std::vector<KElem> e;

  HermitianClass() = default;
  HermitianClass(const Order& o, int n);

  KElem& at(int r, int c) { return e[static_cast<size_t>(r) * size + c]; }
  const KElem& at(int r, int c) const {
    return e[static_cast<size_t>(r) * size + c];
  }

  static HermitianClass identity(const Order& o, int n);

  bool operator==(const HermitianClass&) const = default;
};

KElem kconj(const Order& o, const KElem& x);
KElem kscale(const KElem& x, const Rat& c);

bool conjugate_symmetric(const HermitianClass& h);

HermitianClass scale_class(const HermitianClass& h, const Rat& c);

// Formal sum of row pullback symbols: each term is a 1 x ambient row v over
// the order with a positive multiplicity, standing for m copies of the class
// v-dagger * v.
struct FormalChernClass {
  Order order;
  int ambient = 0;
  std::vector<std::pair<MorphismMatrix, Int>> terms;
};

// The product polarization on an n-power written formally: one standard
// basis row per coordinate.
FormalChernClass formal_product_class(const Order& o, int n);

// Sum of m * v-dagger v over the terms.
HermitianClass collapse(const FormalChernClass& c);

// Maps each term row v to v * psi (pullback along psi from the ambient power
// of c to the source power of psi); collapse then equals
// psi-dagger * collapse(c) * psi.
FormalChernClass formal_pullback(const FormalChernClass& c,
                                 const MorphismMatrix& psi);

FormalChernClass formal_tensor(const FormalChernClass& c1,
                               const FormalChernClass& c2);

// psi-dagger * h * psi for psi mapping an N-power to an M-power (M x N
// matrix, h of size M); the result has size N.
HermitianClass pullback_class(const HermitianClass& h,
                              const MorphismMatrix& psi);

// Tensor product of bundles adds classes; the m-th power scales by m.
HermitianClass tensor_class(const HermitianClass& h1,
                            const HermitianClass& h2);
HermitianClass power_class(const HermitianClass& h, const Int& m);

// Intersection number of size-N classes whose multiplicities sum to N: the
// coefficient of t_1 ... t_N in det(sum_i t_i * H_i).  The all-identity
// input gives N!.
Rat intersection_number(
    const std::vector<std::pair<HermitianClass, int>>& classes);

// Same number by expanding the determinant as a multilinear-truncated
// polynomial in the t_i and reading off the square-free coefficient; kept
// deliberately separate from intersection_number as its audit.
Rat intersection_number_expanded(
    const std::vector<std::pair<HermitianClass, int>>& classes);

// Top self-intersection: n! * det(h) for h of size n.
Rat degree_of_class(const HermitianClass& h, int n);

// Machine check of the bundle equivalence carried by a split: the tensor
// product over all index sets of the pulled-back product polarizations
// collapses to binom * dual-gram, conjugating by phi lands on
// alpha^2 * binom * identity, and both sides agree after restriction to the
// submodule parametrization.
struct EquivalenceVerdict {
  bool formal_collapse = false;
  bool global = false;
  bool restricted = false;
  HermitianClass lhs, rhs;  // the two sides of the global identity

  bool all_true() const { return formal_collapse && global && restricted; }
};

EquivalenceVerdict verify_equivalence(const SubvarietySplit& s);

// Machine check that the top self-intersection of the tensor-product class
// splits, against a list of reference classes, into the binomial-weighted
// sum over index sets of the individual top self-intersections.
struct IntersectionSplitVerdict {
  Rat lhs, rhs;
  bool equal = false;
};

// rows holds the N row vectors (an N x N nonsingular matrix); reference has
// N - n classes of size N filling the remaining slots.
IntersectionSplitVerdict verify_intersection_split(
    const MorphismMatrix& rows, int n,
    const std::vector<HermitianClass>& reference);

// How often each coordinate index appears across the increasing n-tuples
// drawn from {1..N}, with the enumeration witness that the count is uniform.
struct IndexFamilyCount {
  Int per_index;    // occurrences of any fixed index
  Int family_size;  // number of tuples
  bool witnessed = false;
};

IndexFamilyCount binomial_multiplicity(int big, int small);

// Transport multipliers for heights and degrees under a basis change of
// squared operator norm at most norm_t.  The pair brackets the moved
// quantity relative to the original; both hold only up to constants
// independent of the transform, which stay symbolic.
enum class ScaledQuantity { height, degree };

struct ScalingEnvelope {
  Rat lower, upper;
  std::string note;
};

ScalingEnvelope t_bounds(const Rat& norm_t, int ambient, ScaledQuantity q,
                         int dim_x = 0);

}  // namespace abelic
