#include "abelic/matrix.hpp"

#include <algorithm>

#include "abelic/errors.hpp"

namespace abelic {

MorphismMatrix::MorphismMatrix(const Order& o, int r, int c)
    : order(o), rows(r), cols(c),
      e(static_cast<size_t>(r) * c, OrderElement(o, 0, 0)) {
  if (r < 0 || c < 0) fail(ErrorCode::BadDimensions, "negative matrix shape");
}

MorphismMatrix MorphismMatrix::identity(const Order& o, int n) {
  return scalar(o, n, oe(o, 1));
}

MorphismMatrix MorphismMatrix::scalar(const Order& o, int n, const OrderElement& s) {
  MorphismMatrix m(o, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = s;
  return m;
}

bool MorphismMatrix::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](const OrderElement& x) { return x.is_zero(); });
}

static void check_same_order(const MorphismMatrix& a, const MorphismMatrix& b) {
  if (!(a.order == b.order))
    fail(ErrorCode::OrderMismatch, "matrices over different orders");
}

MorphismMatrix mmul(const MorphismMatrix& a, const MorphismMatrix& b) {
  check_same_order(a, b);
  if (a.cols != b.rows) fail(ErrorCode::SizeMismatch, "mmul shape mismatch");
  MorphismMatrix c(a.order, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const OrderElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = add(c.at(i, j), mul(aik, b.at(k, j)));
    }
  return c;
}

MorphismMatrix madd(const MorphismMatrix& a, const MorphismMatrix& b) {
  check_same_order(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    fail(ErrorCode::SizeMismatch, "madd shape mismatch");
  MorphismMatrix c(a.order, a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) c.e[i] = add(a.e[i], b.e[i]);
  return c;
}

MorphismMatrix msub(const MorphismMatrix& a, const MorphismMatrix& b) {
  check_same_order(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    fail(ErrorCode::SizeMismatch, "msub shape mismatch");
  MorphismMatrix c(a.order, a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) c.e[i] = sub(a.e[i], b.e[i]);
  return c;
}

MorphismMatrix scalar_mul(const OrderElement& s, const MorphismMatrix& a) {
  if (!(s.order == a.order))
    fail(ErrorCode::OrderMismatch, "scalar from a different order");
  MorphismMatrix c(a.order, a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) c.e[i] = mul(s, a.e[i]);
  return c;
}

MorphismMatrix transpose(const MorphismMatrix& a) {
  MorphismMatrix t(a.order, a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

MorphismMatrix conj_transpose(const MorphismMatrix& a) {
  MorphismMatrix t(a.order, a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = conj(a.at(i, j));
  return t;
}

MorphismMatrix vstack(const MorphismMatrix& a, const MorphismMatrix& b) {
  check_same_order(a, b);
  if (a.cols != b.cols) fail(ErrorCode::SizeMismatch, "vstack column mismatch");
  MorphismMatrix c(a.order, a.rows + b.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) c.at(a.rows + i, j) = b.at(i, j);
  return c;
}

MorphismMatrix submatrix(const MorphismMatrix& a, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  MorphismMatrix s(a.order, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= a.rows)
      fail(ErrorCode::BadIndexRange, "row index out of range");
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= a.cols)
        fail(ErrorCode::BadIndexRange, "column index out of range");
      s.at(static_cast<int>(i), static_cast<int>(j)) = a.at(rows[i], cols[j]);
    }
  }
  return s;
}

OrderElement det(const MorphismMatrix& a0) {
  if (a0.rows != a0.cols) fail(ErrorCode::SizeMismatch, "determinant of non-square matrix");
  MorphismMatrix a = a0;
  int n = a.rows;
  if (n == 0) return oe(a.order, 1);
  OrderElement prev = oe(a.order, 1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k).is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a.at(i, k).is_zero()) { p = i; break; }
      if (p < 0) return oe(a.order, 0);
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        OrderElement t = sub(mul(a.at(i, j), a.at(k, k)), mul(a.at(i, k), a.at(k, j)));
        // Bareiss: the previous pivot divides t exactly, in any integral domain.
        auto q = try_div(t, prev);
        if (!q) fail(ErrorCode::SingularMatrix, "inexact interior division in Bareiss");
        a.at(i, j) = *q;
      }
    prev = a.at(k, k);
  }
  OrderElement d = a.at(n - 1, n - 1);
  return sign > 0 ? d : neg(d);
}

ZMat regular_rep(const MorphismMatrix& a) {
  // One formula covers both kinds: over Z the omega part is pinned to zero
  // and t = n = 0, so the block degenerates to a scalar block.
  Int t = a.order.omega_trace(), n = a.order.omega_norm();
  ZMat m(2 * a.rows, 2 * a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const OrderElement& x = a.at(i, j);
      m.at(2 * i, 2 * j) = x.a;
      m.at(2 * i, 2 * j + 1) = -x.b * n;
      m.at(2 * i + 1, 2 * j) = x.b;
      m.at(2 * i + 1, 2 * j + 1) = x.a + x.b * t;
    }
  return m;
}

// --- Hermite / Smith over a norm-Euclidean order ------------------------

static void require_euclidean(const Order& o, const char* what) {
  if (!o.euclidean())
    fail(ErrorCode::NonEuclideanOrder, std::string(what) + " needs a norm-Euclidean order");
}

OHnf hnf(const MorphismMatrix& a) {
  require_euclidean(a.order, "hermite form");
  OHnf r{a, MorphismMatrix::identity(a.order, a.rows), {}};
  MorphismMatrix& h = r.h;
  MorphismMatrix& u = r.u;
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < h.cols; ++c) std::swap(h.at(i, c), h.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  };
  auto submul = [&](int dst, int src, const OrderElement& q) {  // row dst -= q * row src
    if (q.is_zero()) return;
    for (int c = 0; c < h.cols; ++c) h.at(dst, c) = sub(h.at(dst, c), mul(q, h.at(src, c)));
    for (int c = 0; c < u.cols; ++c) u.at(dst, c) = sub(u.at(dst, c), mul(q, u.at(src, c)));
  };
  auto scale_row = [&](int i, const OrderElement& s) {
    for (int c = 0; c < h.cols; ++c) h.at(i, c) = mul(s, h.at(i, c));
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = mul(s, u.at(i, c));
  };
  int row = 0;
  for (int col = 0; col < h.cols && row < h.rows; ++col) {
    while (true) {
      int piv = -1;
      Int best;
      for (int i = row; i < h.rows; ++i) {
        if (h.at(i, col).is_zero()) continue;
        Int nn = norm(h.at(i, col));
        if (piv < 0 || nn < best) { piv = i; best = nn; }
      }
      if (piv < 0) break;
      swap_rows(row, piv);
      bool clear = true;
      for (int i = row + 1; i < h.rows; ++i) {
        if (h.at(i, col).is_zero()) continue;
        OrderElement q = divmod(h.at(i, col), h.at(row, col)).first;
        submul(i, row, q);
        if (!h.at(i, col).is_zero()) clear = false;
      }
      if (clear) break;
    }
    if (h.at(row, col).is_zero()) continue;
    scale_row(row, canonical_associate_with_unit(h.at(row, col)).second);
    for (int i = 0; i < row; ++i)
      submul(i, row, divmod(h.at(i, col), h.at(row, col)).first);
    r.pivot_cols.push_back(col);
    ++row;
  }
  return r;
}

OSmith smith(const MorphismMatrix& a) {
  require_euclidean(a.order, "smith form");
  OSmith r{MorphismMatrix::identity(a.order, a.rows), a,
           MorphismMatrix::identity(a.order, a.cols)};
  MorphismMatrix& s = r.s;
  auto row_submul = [&](int dst, int src, const OrderElement& q) {
    if (q.is_zero()) return;
    for (int c = 0; c < s.cols; ++c) s.at(dst, c) = sub(s.at(dst, c), mul(q, s.at(src, c)));
    for (int c = 0; c < r.u.cols; ++c)
      r.u.at(dst, c) = sub(r.u.at(dst, c), mul(q, r.u.at(src, c)));
  };
  auto col_submul = [&](int dst, int src, const OrderElement& q) {
    if (q.is_zero()) return;
    for (int i = 0; i < s.rows; ++i) s.at(i, dst) = sub(s.at(i, dst), mul(q, s.at(i, src)));
    for (int i = 0; i < r.v.rows; ++i)
      r.v.at(i, dst) = sub(r.v.at(i, dst), mul(q, r.v.at(i, src)));
  };
  auto row_add = [&](int dst, int src) {
    for (int c = 0; c < s.cols; ++c) s.at(dst, c) = add(s.at(dst, c), s.at(src, c));
    for (int c = 0; c < r.u.cols; ++c) r.u.at(dst, c) = add(r.u.at(dst, c), r.u.at(src, c));
  };
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int c = 0; c < r.u.cols; ++c) std::swap(r.u.at(i, c), r.u.at(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < s.rows; ++k) std::swap(s.at(k, i), s.at(k, j));
    for (int k = 0; k < r.v.rows; ++k) std::swap(r.v.at(k, i), r.v.at(k, j));
  };
  int nmin = std::min(s.rows, s.cols);
  int top = 0;
  while (top < nmin) {
    int pi = -1, pj = -1;
    Int best;
    for (int i = top; i < s.rows; ++i)
      for (int j = top; j < s.cols; ++j) {
        if (s.at(i, j).is_zero()) continue;
        Int nn = norm(s.at(i, j));
        if (pi < 0 || nn < best) { pi = i; pj = j; best = nn; }
      }
    if (pi < 0) break;
    swap_rows(top, pi);
    swap_cols(top, pj);
    bool dirty = false;
    for (int i = top + 1; i < s.rows; ++i) {
      if (s.at(i, top).is_zero()) continue;
      OrderElement q = divmod(s.at(i, top), s.at(top, top)).first;
      row_submul(i, top, q);
      if (!s.at(i, top).is_zero()) dirty = true;
    }
    for (int j = top + 1; j < s.cols; ++j) {
      if (s.at(top, j).is_zero()) continue;
      OrderElement q = divmod(s.at(top, j), s.at(top, top)).first;
      col_submul(j, top, q);
      if (!s.at(top, j).is_zero()) dirty = true;
    }
    if (dirty) continue;
    bool fixed = false;
    for (int i = top + 1; i < s.rows && !fixed; ++i)
      for (int j = top + 1; j < s.cols && !fixed; ++j)
        if (!divides(s.at(top, top), s.at(i, j))) {
          row_add(top, i);  // drags a non-multiple into the pivot row
          fixed = true;
        }
    if (fixed) continue;
    OrderElement unit = canonical_associate_with_unit(s.at(top, top)).second;
    for (int c = 0; c < s.cols; ++c) s.at(top, c) = mul(unit, s.at(top, c));
    for (int c = 0; c < r.u.cols; ++c) r.u.at(top, c) = mul(unit, r.u.at(top, c));
    ++top;
  }
  return r;
}

MorphismMatrix left_kernel(const MorphismMatrix& a) {
  OHnf n = hnf(a);
  int rank = static_cast<int>(n.pivot_cols.size());
  MorphismMatrix k(a.order, a.rows - rank, a.rows);
  for (int i = rank; i < a.rows; ++i)
    for (int j = 0; j < a.rows; ++j) k.at(i - rank, j) = n.u.at(i, j);
  // The transform rows are only one basis of the kernel; put them in
  // Hermite form so kernels are canonical (stable pivots, golden output).
  return k.rows > 0 ? hnf(k).h : k;
}

MorphismMatrix right_kernel(const MorphismMatrix& a) { return left_kernel(transpose(a)); }

// --- fraction field ------------------------------------------------------

KMat::KMat(const Order& o, int r, int c)
    : order(o), rows(r), cols(c), e(static_cast<size_t>(r) * c) {}

KElem kadd(const KElem& x, const KElem& y) { return {x.a + y.a, x.b + y.b}; }
KElem ksub(const KElem& x, const KElem& y) { return {x.a - y.a, x.b - y.b}; }

KElem kmul(const Order& o, const KElem& x, const KElem& y) {
  Rat t(o.omega_trace()), n(o.omega_norm());
  Rat be = x.b * y.b;
  return {x.a * y.a - be * n, x.a * y.b + x.b * y.a + be * t};
}

KElem kinv(const Order& o, const KElem& x) {
  if (x.is_zero()) fail(ErrorCode::SingularMatrix, "division by zero in the fraction field");
  Rat t(o.omega_trace()), n(o.omega_norm());
  Rat nm = x.a * x.a + x.a * x.b * t + x.b * x.b * n;  // positive definite
  return {(x.a + x.b * t) / nm, -x.b / nm};
}

KMat to_kmat(const MorphismMatrix& a) {
  KMat k(a.order, a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      k.at(i, j) = {Rat(a.at(i, j).a), Rat(a.at(i, j).b)};
  return k;
}

KMat kmat_mul(const KMat& a, const KMat& b) {
  if (!(a.order == b.order)) fail(ErrorCode::OrderMismatch, "matrices over different orders");
  if (a.cols != b.rows) fail(ErrorCode::SizeMismatch, "kmat_mul shape mismatch");
  KMat c(a.order, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = kadd(c.at(i, j), kmul(a.order, a.at(i, k), b.at(k, j)));
    }
  return c;
}

KElem kdet(KMat a) {
  if (a.rows != a.cols) fail(ErrorCode::SizeMismatch, "determinant of non-square matrix");
  KElem d{1, 0};
  for (int k = 0; k < a.rows; ++k) {
    int p = -1;
    for (int i = k; i < a.rows; ++i)
      if (!a.at(i, k).is_zero()) { p = i; break; }
    if (p < 0) return {0, 0};
    if (p != k) {
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(k, j), a.at(p, j));
      d = ksub(KElem{0, 0}, d);
    }
    d = kmul(a.order, d, a.at(k, k));
    KElem inv = kinv(a.order, a.at(k, k));
    for (int i = k + 1; i < a.rows; ++i) {
      if (a.at(i, k).is_zero()) continue;
      KElem f = kmul(a.order, a.at(i, k), inv);
      for (int j = k; j < a.cols; ++j)
        a.at(i, j) = ksub(a.at(i, j), kmul(a.order, f, a.at(k, j)));
    }
  }
  return d;
}

KMat kinverse(const KMat& a0) {
  if (a0.rows != a0.cols) fail(ErrorCode::SizeMismatch, "inverse of non-square matrix");
  KMat a = a0;
  int n = a.rows;
  KMat inv(a.order, n, n);
  for (int i = 0; i < n; ++i) inv.at(i, i) = {1, 0};
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!a.at(i, k).is_zero()) { p = i; break; }
    if (p < 0) fail(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(p, j));
        std::swap(inv.at(k, j), inv.at(p, j));
      }
    KElem s = kinv(a.order, a.at(k, k));
    for (int j = 0; j < n; ++j) {
      a.at(k, j) = kmul(a.order, s, a.at(k, j));
      inv.at(k, j) = kmul(a.order, s, inv.at(k, j));
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a.at(i, k).is_zero()) continue;
      KElem f = a.at(i, k);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = ksub(a.at(i, j), kmul(a.order, f, a.at(k, j)));
        inv.at(i, j) = ksub(inv.at(i, j), kmul(a.order, f, inv.at(k, j)));
      }
    }
  }
  return inv;
}

Int denominator_lcm(const KMat& a) {
  Int l(1);
  for (const auto& x : a.e) {
    l = lcm(l, x.a.get_den());
    l = lcm(l, x.b.get_den());
  }
  return l;
}

MorphismMatrix scale_to_integral(const KMat& a, const Int& c) {
  MorphismMatrix m(a.order, a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      Rat ra = Rat(c) * a.at(i, j).a, rb = Rat(c) * a.at(i, j).b;
      ra.canonicalize();
      rb.canonicalize();
      if (ra.get_den() != 1 || rb.get_den() != 1)
        fail(ErrorCode::MalformedInput, "scale factor does not clear all denominators");
      m.at(i, j) = OrderElement(a.order, ra.get_num(), rb.get_num());
    }
  return m;
}

}  // namespace abelic
