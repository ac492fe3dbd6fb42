#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "abelic/isogeny.hpp"
#include "abelic/model.hpp"

namespace abelic {

/*
 * The brute-force verification layer.  Everything here recomputes results
 * of the calculus by an independent route — integer determinants, raw
 * point enumeration, aggregated coset sweeps — and the cross-check suites
 * compare the routes pairwise.  Nothing in this header trusts the fast
 * paths except to test them.
 */

// |det regular_rep(M)| by fraction-free integer elimination; the reference
// value every degree computation is compared against.
Int lattice_index(const MorphismMatrix& m);

struct KernelEnumeration {
  Int alpha;                              // search modulus; the kernel lies in the alpha-torsion
  std::vector<std::vector<long>> points;  // coordinate vectors mod alpha, lex-sorted
  std::vector<Int> divisors;              // elementary divisors of the point group (nontrivial)
};

// Kernel of M as explicit points.  Dispatches between the exhaustive scan
// (small alpha-model) and the lattice route (any size); both produce the
// same canonical list.  CapExceeded when the kernel has more than cap
// points.  The low-level routes stay public so tests and the benchmark can
// pit them against each other.
KernelEnumeration enumerate_kernel(const MorphismMatrix& m, const Int& cap);
KernelEnumeration enumerate_kernel_scan(const MorphismMatrix& m, const Int& cap, bool parallel);
KernelEnumeration enumerate_kernel_lattice(const MorphismMatrix& m, const Int& cap);

// Elementary divisors (nontrivial) of the subgroup of (Z/modulus)^dim
// generated by the given points — computed from the points alone, so it is
// independent of how the list was produced.
std::vector<Int> group_structure_of_points(const std::vector<std::vector<long>>& pts,
                                           const Int& modulus, int dim);

// Uniform random matrix with entries of norm <= bound, resampled until
// nonsingular.  Uses the raw engine (modulo reduction) so sequences are
// identical across platforms.
MorphismMatrix random_nonsingular_matrix(std::mt19937_64& rng, const Order& o, int n,
                                         long norm_bound);

struct CrossCheckFailure {
  std::string suite;
  std::string witness;
};

// Exhaustive stabilizer-identity sweep.  For every model, endomorphism and
// compatible torsion level, every subgroup coset is classified through
// aggregated per-subgroup identities (each coset's verdict is determined by
// one exact equality per subgroup plus counting identities), and a sample
// of cosets is re-verified through the one-coset stab_lemma_checks API.
// Models with at most api_max_points points additionally run the API on
// every coset of every subgroup, for pairs drawn on the same budget.
struct StabSuiteOptions {
  std::vector<Order> orders;
  std::vector<long> moduli = {2, 3, 4, 6};
  int max_n = 2;
  long entry_norm_bound = 2;
  int phi_cap = 0;             // max endomorphisms per model; 0 = all of them
  int api_subgroup_samples = 3;  // per sampled pair: subgroups re-checked via the API
  int api_pair_budget = 64;    // (matrix, level) pairs per model routed through the
                               // one-coset API; 0 disables the spot checks.  The
                               // fast sweep itself always covers every pair.
  std::uint64_t api_max_points = 40;  // full per-coset API runs for models up to this size
};

struct StabSuiteReport {
  long models = 0;
  long endomorphisms = 0;  // (matrix, level) pairs examined
  long subgroups = 0;      // per (matrix, level, subgroup) aggregated verdicts
  long cosets = 0;         // cosets classified
  long api_calls = 0;      // one-coset API confirmations
  std::vector<CrossCheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

StabSuiteReport stab_exhaustive_suite(const StabSuiteOptions& opt);

// The registered equivalence suites: degree fast path vs lattice_index,
// kernel enumeration vs degree and kernel_structure (all routes), and the
// stabilizer sweep.  Failures are data, not errors.
struct CrossCheckScope {
  std::vector<Order> orders;  // empty scope: nothing runs
  int matrices = 500;
  int max_n = 3;
  long entry_norm_bound = 3;
  Int kernel_cap = 10000;  // enumerate kernels only when the degree fits
  bool run_degrees = true;
  bool run_kernels = true;
  bool run_stab = true;
  StabSuiteOptions stab;  // orders copied from the scope when left empty
  std::uint64_t seed = 0;
  long inject_fault = 0;  // test hook: flip the sign of the k-th reference determinant
};

struct CrossCheckReport {
  long degree_checks = 0;
  long kernel_checks = 0;
  long stab_checks = 0;  // aggregated subgroup verdicts + API confirmations
  std::vector<CrossCheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

CrossCheckReport cross_check(const CrossCheckScope& scope);

// Compact one-line description of a matrix for failure witnesses.
std::string describe_matrix(const MorphismMatrix& m);

}  // namespace abelic
