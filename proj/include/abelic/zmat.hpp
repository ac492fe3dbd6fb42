#pragma once
#include <vector>

#include "abelic/rational.hpp"

namespace abelic {

// Dense integer matrices; the regular representation of an order matrix and
// every oracle-side computation lives here, deliberately separate from the
// order-level normal forms so the two routes can cross-check each other.
struct ZMat {
  int rows = 0, cols = 0;
  std::vector<Int> e;  // row-major

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, Int(0)) {}

  Int& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return e[static_cast<size_t>(r) * cols + c]; }

  static ZMat identity(int n);
  bool operator==(const ZMat&) const = default;
};

ZMat zmul(const ZMat& a, const ZMat& b);
ZMat ztranspose(const ZMat& a);

// Fraction-free elimination; exact for any size.
Int bareiss_det(ZMat a);

// Row Hermite form: U*A = H with U unimodular, H in row echelon form with
// positive pivots and entries above each pivot reduced to [0, pivot).
struct ZHnf {
  ZMat h, u;
  std::vector<int> pivot_cols;  // one per nonzero row of h
};
ZHnf zhnf(const ZMat& a);

// Basis (as rows) of { x : A x = 0 }.
ZMat zright_kernel(const ZMat& a);

// Smith form divisors d1 | d2 | ... (all min(r,c) of them, nonnegative).
std::vector<Int> zsnf_divisors(ZMat a);

// Independent route for tests: dk = gcd(k-minors)/gcd((k-1)-minors).
// Exponential in size; callers keep it small.
std::vector<Int> zsnf_divisors_by_minors(const ZMat& a);

// Canonical representative of v modulo the row lattice of H (H = row HNF,
// full row rank, square).  Used to enumerate finite quotients.
std::vector<Int> zreduce_mod_rows(const ZMat& h, std::vector<Int> v);

}  // namespace abelic
