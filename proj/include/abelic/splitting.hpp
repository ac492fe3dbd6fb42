#pragma once
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abelic/isogeny.hpp"
#include "abelic/matrix.hpp"

namespace abelic {

/*
 * Splitting a power of a curve along a saturated submodule.  A submodule
 * B of O^N (columns of a generator matrix) plays the abelian-subvariety
 * role; the split manufactures a square map phi whose top block kills B
 * and whose bottom block is injective on it, together with the dual,
 * the multiplier, the normalizer T and the row-selection family.
 */

struct SubvarietyModule {
  Order order;
  int ambient = 0;            // N: the power of the curve
  int rank = 0;               // n: column rank of the generators
  MorphismMatrix generators;  // N x n; columns span the module
  bool saturated = false;
};

// Validates shape and full column rank.
SubvarietyModule make_module(const Order& o, int ambient, int rank, MorphismMatrix generators,
                             bool saturated = false);

struct SaturationResult {
  SubvarietyModule module;  // saturated module with the same span over the fraction field
  MorphismMatrix coeff;     // rank x rank with original = saturated * coeff
  Int connecting_degree;    // lattice index of coeff: kernel size of the connecting map
};

// Smallest saturated overmodule.  Already-saturated input comes back
// unchanged with coeff = identity, making the operation idempotent.
SaturationResult saturate(const SubvarietyModule& b);

bool is_saturated_module(const SubvarietyModule& b);

// Two constructions of the complementary block are surfaced: `completion`
// extends the kernel rows to a unimodular basis (multiplier 1 whenever the
// input is saturated); `hermitian` uses the conjugate transpose of the
// generators (always nonsingular on B, usually a nontrivial multiplier).
enum class ComplementStyle { completion, hermitian };

struct SubvarietySplit {
  SubvarietyModule b;
  MorphismMatrix phi;      // N x N; rows = top block killing B, bottom block injective on B
  MorphismMatrix phi_hat;  // alpha * phi^{-1}
  Int alpha = 1;
  Int degree = 1;          // degree of phi, reported (minimality is not promised)
  MorphismMatrix t;        // unimodular normalizer; identity until normalize_t
  bool normalized = false;
  Int t_norm_sq = 1;       // rational bound on the squared operator norm of t
  // Row-selection family: for each increasing rank-tuple I of rows of
  // phi_hat, the n x N matrix of those rows.  Filled by phi_family.
  std::vector<std::pair<std::vector<int>, MorphismMatrix>> family;

  MorphismMatrix top_block() const;     // rows 0 .. N-n-1 of phi
  MorphismMatrix bottom_block() const;  // rows N-n .. N-1 of phi
};

SubvarietySplit complement_and_split(const SubvarietyModule& b,
                                     ComplementStyle style = ComplementStyle::completion);

// Left-composes phi with a block-lower-triangular nonsingular factor
// (top-left (N-n)^2, bottom-right n^2).  The split invariants survive:
// the new top block still kills B, the new bottom block is still
// injective on B.  Used to generate splits with varied multipliers.
SubvarietySplit apply_left_factor(const SubvarietySplit& s, const MorphismMatrix& v);

// Bounded breadth-first search over words in elementary shears and swaps
// for a unimodular t such that every rank-minor of the last-rank columns
// of t^{-1} * phi_hat is nonzero; among successes of minimal word length
// the lexicographically least t wins.  Records phi <- phi * t and the
// norm bound; SearchBudgetExceeded when no word within the budget works.
SubvarietySplit normalize_t(SubvarietySplit s, int budget = 3, long shear_norm_bound = 1);

// Fills the row-selection family; requires normalize_t first.  Checks the
// defining minor of every member and reports MinorVanished on any zero.
SubvarietySplit phi_family(SubvarietySplit s);

struct DiagramVerdict {
  bool dual_left = false;   // phi_hat * phi = alpha * identity
  bool dual_right = false;  // phi * phi_hat = alpha * identity
  bool outer = false;       // phi_hat * (phi * P) = alpha * P
  bool family_ok = false;   // family complete with nonsingular minors
  std::vector<bool> squares;  // per family member: both association orders agree
  bool all_true() const;
};

DiagramVerdict diagram_check(const SubvarietySplit& s);

struct ProductStructure {
  std::vector<SubvarietySplit> factors;  // pairwise maps are zero by construction
  Int global_alpha;                      // max over factors of alpha^2 * binom(N-1, n-1)
  Int index_size;                        // product of binom(N, n)
};

ProductStructure product_assemble(const std::vector<SubvarietySplit>& factors);

// Degree of the image of B under phi paired with a class degree on the
// bottom power: (|B meet ker phi| * class_degree, degree(phi) * class_degree).
// The first component never exceeds the second; violation means the split
// is inconsistent.
std::pair<Rat, Rat> push_degree_bound(const SubvarietySplit& s, const Rat& class_degree);

// Full random split for the test suites: random full-rank generators,
// saturation, a random construction style, a random left factor, then
// normalization and family fill-in.
SubvarietySplit random_split(std::mt19937_64& rng, const Order& o, int ambient, int rank,
                             long norm_bound);

}  // namespace abelic
