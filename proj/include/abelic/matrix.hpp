#pragma once
#include <vector>

#include "abelic/order.hpp"
#include "abelic/zmat.hpp"

namespace abelic {

/*
 * Matrices over an endomorphism order, plus the normal forms the isogeny
 * calculus needs.  Everything is exact: Bareiss for determinants, Euclidean
 * reduction (via divmod) for Hermite/Smith forms, and a rational model of
 * the fraction field for inverses.
 *
 * Conventions:
 *   - entries are row-major; vectors are rows unless a name says otherwise;
 *   - hnf() returns U*A = H with U unimodular over the order, pivots
 *     normalized to their canonical associate, entries above a pivot
 *     reduced by divmod;
 *   - kernels come back as ROW bases and are saturated (a unimodular U
 *     produces them, so the quotient by their span is torsion-free);
 *   - regular_rep() expands each entry a + b*omega into the integer block
 *     [[a, -b*n], [b, a + b*t]] acting on column (1, omega)-coordinates,
 *     so an M x N matrix becomes 2M x 2N and det(regular_rep(A)) equals
 *     Nm(det(A)); over Z the block is scalar and the same identity reads
 *     det(A)^2.
 */

struct MorphismMatrix {
  Order order;
  int rows = 0, cols = 0;
  std::vector<OrderElement> e;  // row-major

  MorphismMatrix() = default;
  MorphismMatrix(const Order& o, int r, int c);

  OrderElement& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
  const OrderElement& at(int r, int c) const {
    return e[static_cast<size_t>(r) * cols + c];
  }

  static MorphismMatrix identity(const Order& o, int n);
  static MorphismMatrix scalar(const Order& o, int n, const OrderElement& s);
  bool operator==(const MorphismMatrix&) const = default;
  bool is_zero() const;
};

MorphismMatrix mmul(const MorphismMatrix& a, const MorphismMatrix& b);
MorphismMatrix madd(const MorphismMatrix& a, const MorphismMatrix& b);
MorphismMatrix msub(const MorphismMatrix& a, const MorphismMatrix& b);
MorphismMatrix scalar_mul(const OrderElement& s, const MorphismMatrix& a);
MorphismMatrix transpose(const MorphismMatrix& a);       // no conjugation
MorphismMatrix conj_transpose(const MorphismMatrix& a);  // entrywise conj + transpose
MorphismMatrix vstack(const MorphismMatrix& a, const MorphismMatrix& b);
MorphismMatrix submatrix(const MorphismMatrix& a, const std::vector<int>& rows,
                         const std::vector<int>& cols);

// Fraction-free Bareiss over the order; every interior division is exact.
OrderElement det(const MorphismMatrix& a);

// 2M x 2N integer matrix of the multiplication action, see the header note.
ZMat regular_rep(const MorphismMatrix& a);

// Row Hermite form over a norm-Euclidean order (NonEuclideanOrder otherwise).
struct OHnf {
  MorphismMatrix h, u;          // u * input = h, u unimodular
  std::vector<int> pivot_cols;  // one per nonzero row of h
};
OHnf hnf(const MorphismMatrix& a);

// Smith form u * input * v = s over a norm-Euclidean order; s is diagonal
// with canonical-associate entries in a divisibility chain.
struct OSmith {
  MorphismMatrix u, s, v;
};
OSmith smith(const MorphismMatrix& a);

// Saturated row basis of { x : x A = 0 }, shape (rows - rank) x rows.
MorphismMatrix left_kernel(const MorphismMatrix& a);
// Saturated row basis of { v : A v^T = 0 }, shape (cols - rank) x cols.
MorphismMatrix right_kernel(const MorphismMatrix& a);

// --- fraction field ---------------------------------------------------
// K = Frac(O): elements a + b*omega with rational a, b (b = 0 over Z).

struct KElem {
  Rat a, b;
  bool operator==(const KElem&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

struct KMat {
  Order order;
  int rows = 0, cols = 0;
  std::vector<KElem> e;

  KMat() = default;
  KMat(const Order& o, int r, int c);

  KElem& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
  const KElem& at(int r, int c) const {
    return e[static_cast<size_t>(r) * cols + c];
  }
};

KElem kadd(const KElem& x, const KElem& y);
KElem ksub(const KElem& x, const KElem& y);
KElem kmul(const Order& o, const KElem& x, const KElem& y);
KElem kinv(const Order& o, const KElem& x);  // SingularMatrix on zero

KMat to_kmat(const MorphismMatrix& a);
KMat kmat_mul(const KMat& a, const KMat& b);
KElem kdet(KMat a);
KMat kinverse(const KMat& a);  // SingularMatrix if not invertible

// Least common multiple of all coordinate denominators (>= 1).
Int denominator_lcm(const KMat& a);
// c * a as an order matrix; c must be a multiple of denominator_lcm(a).
MorphismMatrix scale_to_integral(const KMat& a, const Int& c);

}  // namespace abelic
