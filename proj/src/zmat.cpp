#include "abelic/zmat.hpp"

#include <algorithm>
#include <numeric>

#include "abelic/errors.hpp"

namespace abelic {

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat zmul(const ZMat& a, const ZMat& b) {
  if (a.cols != b.rows) fail(ErrorCode::SizeMismatch, "zmul shape mismatch");
  ZMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

ZMat ztranspose(const ZMat& a) {
  ZMat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Int bareiss_det(ZMat a) {
  if (a.rows != a.cols) fail(ErrorCode::SizeMismatch, "determinant of non-square matrix");
  int n = a.rows;
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        // Bareiss: division by the previous pivot is exact.
        a.at(i, j) = t / prev;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

ZHnf zhnf(const ZMat& a) {
  ZHnf r;
  r.h = a;
  r.u = ZMat::identity(a.rows);
  ZMat& h = r.h;
  ZMat& u = r.u;
  int row = 0;
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < h.cols; ++c) std::swap(h.at(i, c), h.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  };
  auto addmul = [&](int dst, int src, const Int& q) {  // row dst += q * row src
    if (q == 0) return;
    for (int c = 0; c < h.cols; ++c) h.at(dst, c) += q * h.at(src, c);
    for (int c = 0; c < u.cols; ++c) u.at(dst, c) += q * u.at(src, c);
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < h.cols; ++c) h.at(i, c) = -h.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  };
  for (int col = 0; col < h.cols && row < h.rows; ++col) {
    // Reduce the column below `row` to a single entry by gcd steps.
    while (true) {
      int piv = -1;
      for (int i = row; i < h.rows; ++i)
        if (h.at(i, col) != 0 &&
            (piv < 0 || cmp(abs(h.at(i, col)), abs(h.at(piv, col))) < 0))
          piv = i;
      if (piv < 0) break;
      swap_rows(row, piv);
      bool clear = true;
      for (int i = row + 1; i < h.rows; ++i) {
        if (h.at(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(row, col).get_mpz_t());
        addmul(i, row, -q);
        if (h.at(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (h.at(row, col) == 0) continue;
    if (h.at(row, col) < 0) negate_row(row);
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(row, col).get_mpz_t());
      addmul(i, row, -q);
    }
    r.pivot_cols.push_back(col);
    ++row;
  }
  return r;
}

ZMat zright_kernel(const ZMat& a) {
  // Rows u of U with U*A^T echelon: the rows matching zero rows of the
  // echelon satisfy u*A^T = 0, i.e. A u^T = 0.
  ZHnf n = zhnf(ztranspose(a));
  int rank = static_cast<int>(n.pivot_cols.size());
  ZMat k(n.h.rows - rank, a.cols);
  for (int i = rank; i < n.h.rows; ++i)
    for (int j = 0; j < a.cols; ++j) k.at(i - rank, j) = n.u.at(i, j);
  return k;
}

std::vector<Int> zsnf_divisors(ZMat a) {
  int n = std::min(a.rows, a.cols);
  std::vector<Int> div;
  int top = 0;
  while (top < n) {
    // Find a nonzero pivot of minimal absolute value in the working block.
    int pi = -1, pj = -1;
    for (int i = top; i < a.rows; ++i)
      for (int j = top; j < a.cols; ++j)
        if (a.at(i, j) != 0 &&
            (pi < 0 || cmp(abs(a.at(i, j)), abs(a.at(pi, pj))) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    for (int c = 0; c < a.cols; ++c) std::swap(a.at(top, c), a.at(pi, c));
    for (int r = 0; r < a.rows; ++r) std::swap(a.at(r, top), a.at(r, pj));
    bool dirty = false;
    for (int i = top + 1; i < a.rows; ++i) {
      if (a.at(i, top) == 0) continue;
      Int q = a.at(i, top) / a.at(top, top);
      for (int c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(top, c);
      if (a.at(i, top) != 0) dirty = true;
    }
    for (int j = top + 1; j < a.cols; ++j) {
      if (a.at(top, j) == 0) continue;
      Int q = a.at(top, j) / a.at(top, top);
      for (int r = 0; r < a.rows; ++r) a.at(r, j) -= q * a.at(r, top);
      if (a.at(top, j) != 0) dirty = true;
    }
    if (dirty) continue;  // smaller residues appeared; pick a new pivot
    // Divisibility sweep: the pivot must divide the rest of the block.
    bool fixed = false;
    for (int i = top + 1; i < a.rows && !fixed; ++i)
      for (int j = top + 1; j < a.cols && !fixed; ++j)
        if (a.at(i, j) % a.at(top, top) != 0) {
          for (int c = 0; c < a.cols; ++c) a.at(top, c) += a.at(i, c);
          fixed = true;
        }
    if (fixed) continue;
    div.push_back(abs(a.at(top, top)));
    ++top;
  }
  while (static_cast<int>(div.size()) < n) div.push_back(0);
  return div;
}

static void minor_gcds(const ZMat& a, int k, std::vector<int>& rows, std::vector<int>& cols,
                       int ri, int ci, Int& g) {
  // Accumulate gcd of all k x k minors; tiny inputs only.
  if (static_cast<int>(rows.size()) == k) {
    if (static_cast<int>(cols.size()) == k) {
      ZMat m(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = a.at(rows[i], cols[j]);
      Int d = bareiss_det(m);
      g = gcd(g, d);
      return;
    }
    for (int c = ci; c < a.cols; ++c) {
      cols.push_back(c);
      minor_gcds(a, k, rows, cols, ri, c + 1, g);
      cols.pop_back();
    }
    return;
  }
  for (int r = ri; r < a.rows; ++r) {
    rows.push_back(r);
    minor_gcds(a, k, rows, cols, r + 1, 0, g);
    rows.pop_back();
  }
}

std::vector<Int> zsnf_divisors_by_minors(const ZMat& a) {
  int n = std::min(a.rows, a.cols);
  std::vector<Int> g(n + 1);
  g[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Int gk(0);
    std::vector<int> rows, cols;
    minor_gcds(a, k, rows, cols, 0, 0, gk);
    g[k] = gk;
  }
  std::vector<Int> div(n);
  for (int k = 1; k <= n; ++k) {
    if (g[k] == 0)
      div[k - 1] = 0;
    else
      div[k - 1] = g[k] / g[k - 1];
  }
  return div;
}

std::vector<Int> zreduce_mod_rows(const ZMat& h, std::vector<Int> v) {
  if (h.rows != h.cols || static_cast<int>(v.size()) != h.cols)
    fail(ErrorCode::SizeMismatch, "zreduce_mod_rows wants square full-rank HNF");
  for (int i = 0; i < h.rows; ++i) {
    if (h.at(i, i) == 0) fail(ErrorCode::SingularMatrix, "HNF not full rank");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), h.at(i, i).get_mpz_t());
    if (q == 0) continue;
    for (int j = i; j < h.cols; ++j) v[j] -= q * h.at(i, j);
  }
  return v;
}

}  // namespace abelic
