#pragma once
#include <vector>

#include "abelic/matrix.hpp"
#include "abelic/model.hpp"

namespace abelic {

/*
 * Degree calculus for matrices acting on a power of a curve: degree, dual
 * and minimal multiplier, kernel invariants, and the bookkeeping rules for
 * preimages, images and pushforwards.  The finite-model verdicts at the
 * bottom check the stabilizer identities exhaustively at torsion level.
 */

struct IsogenyData {
  MorphismMatrix matrix;
  Int degree;                        // = |ker| = |det regular_rep|
  Int alpha;                         // least integer with alpha * inverse integral
  MorphismMatrix dual;               // alpha * matrix^{-1}; dual*matrix = alpha*identity
  std::vector<Int> kernel_divisors;  // full 2N elementary divisor chain
};

// Kernel cardinality: Nm(det) over an imaginary-quadratic order, det^2
// over Z; always |det regular_rep| (the oracle route recomputes that).
Int degree(const MorphismMatrix& m);

IsogenyData dual_and_alpha(const MorphismMatrix& m);

// Elementary divisors of lattice / m*lattice as a finite abelian group:
// the integer Smith chain of the regular representation, all 2N entries
// (leading ones kept); their product is degree(m).
std::vector<Int> kernel_structure(const MorphismMatrix& m);

// Degree of the multiplication-by-a preimage of a sub_dim-dimensional
// subvariety of a big_dim-dimensional ambient: |a|^(2(big_dim - sub_dim)) * deg_y.
Rat deg_preimage(int big_dim, int sub_dim, const Int& a, const Rat& deg_y);
// Degree of the multiplication-by-a image: |a|^(2*sub_dim) * deg_y / stab_ker_order,
// where stab_ker_order counts the stabilizer elements inside ker[a].
Rat deg_image(const Int& a, int sub_dim, const Int& stab_ker_order, const Rat& deg_y);
// Degree of a pushforward counted with fiber multiplicity.
Rat pushforward_degree(const Int& stab_ker_order, const Rat& deg_image_val);

// Exhaustive verdict for the two stabilizer identities in a finite model:
//   (i)  Stab f^{-1}(Y) = f^{-1}(Stab Y)            (compared as sets)
//   (ii) |Stab g^{-1}(Y) /\ ker[a]| = |ker g| * |Stab Y /\ ker f|
// where f is the action of the matrix and g the action of its dual scaled
// to f o g = g o f = [a].  A side with empty preimage makes that part
// inapplicable (its flag is vacuously true); for subgroup cosets with
// nonempty preimage both flags are theorems and must come back true.
struct StabLemmaVerdict {
  Int alpha;  // minimal multiplier of the matrix
  long a = 1; // supplied torsion level; alpha | a | model modulus
  bool i_applicable = false;
  Int i_lhs = 0, i_rhs = 0;
  bool i_equal = false;
  bool ii_applicable = false;
  Int ii_lhs = 0, ii_rhs = 0;
  bool ii_equal = false;
  bool all_true() const { return i_equal && ii_equal; }
};

StabLemmaVerdict stab_lemma_checks(const FiniteModel& model, const std::vector<Point>& y,
                                   const MorphismMatrix& m, long a);

}  // namespace abelic
