#include "abelic/model.hpp"

#include <algorithm>
#include <numeric>

#include "abelic/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace abelic {

std::uint64_t FiniteModel::size() const {
  std::uint64_t s = 1;
  for (int i = 0; i < dim(); ++i) s *= static_cast<std::uint64_t>(c);
  return s;
}

FiniteModel make_model(const Order& o, int n, long c) {
  if (n < 1) fail(ErrorCode::BadDimension, "ambient power must be >= 1");
  if (c < 1) fail(ErrorCode::ModulusIncompatible, "modulus must be >= 1");
  // Overflow-safe size guard: the exhaustive scans cap at 2^26 points.
  std::uint64_t s = 1;
  for (int i = 0; i < 2 * n; ++i) {
    s *= static_cast<std::uint64_t>(c);
    if (s > (std::uint64_t(1) << 26))
      fail(ErrorCode::CapExceeded, "model too large for exhaustive scans");
  }
  return FiniteModel{o, n, c};
}

std::vector<long> point_coords(const FiniteModel& m, Point p) {
  std::vector<long> x(m.dim());
  auto c = static_cast<std::uint64_t>(m.c);
  for (int i = 0; i < m.dim(); ++i) {
    x[i] = static_cast<long>(p % c);
    p /= c;
  }
  return x;
}

Point point_index(const FiniteModel& m, const std::vector<long>& coords) {
  if (static_cast<int>(coords.size()) != m.dim())
    fail(ErrorCode::SizeMismatch, "coordinate count does not match the model");
  Point p = 0;
  for (int i = m.dim() - 1; i >= 0; --i) {
    long v = coords[i] % m.c;
    if (v < 0) v += m.c;
    p = p * static_cast<std::uint64_t>(m.c) + static_cast<std::uint64_t>(v);
  }
  return p;
}

Point add_points(const FiniteModel& m, Point x, Point y) {
  auto c = static_cast<std::uint64_t>(m.c);
  Point r = 0, mult = 1;
  for (int i = 0; i < m.dim(); ++i) {
    r += ((x % c + y % c) % c) * mult;
    x /= c;
    y /= c;
    mult *= c;
  }
  return r;
}

Point sub_points(const FiniteModel& m, Point x, Point y) {
  auto c = static_cast<std::uint64_t>(m.c);
  Point r = 0, mult = 1;
  for (int i = 0; i < m.dim(); ++i) {
    r += ((x % c + c - y % c) % c) * mult;
    x /= c;
    y /= c;
    mult *= c;
  }
  return r;
}

EndoAction endo_action(const FiniteModel& m, const MorphismMatrix& a) {
  if (!(a.order == m.order))
    fail(ErrorCode::OrderMismatch, "matrix over a different order than the model");
  if (a.rows != m.n || a.cols != m.n)
    fail(ErrorCode::SizeMismatch, "matrix shape does not match the ambient power");
  ZMat r = regular_rep(a);
  EndoAction f{m, std::vector<long>(static_cast<size_t>(m.dim()) * m.dim())};
  Int c(m.c);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      Int v;
      mpz_fdiv_r(v.get_mpz_t(), r.at(i, j).get_mpz_t(), c.get_mpz_t());
      f.r[static_cast<size_t>(i) * m.dim() + j] = v.get_si();
    }
  return f;
}

Point apply_endo(const EndoAction& f, Point p) {
  const FiniteModel& m = f.model;
  int d = m.dim();
  long x[16];  // dim <= 16 given the size cap; scans stay allocation-free
  if (d > 16) fail(ErrorCode::CapExceeded, "model dimension too large");
  auto c = static_cast<std::uint64_t>(m.c);
  for (int i = 0; i < d; ++i) {
    x[i] = static_cast<long>(p % c);
    p /= c;
  }
  Point r = 0, mult = 1;
  for (int i = 0; i < d; ++i) {
    long acc = 0;
    const long* row = &f.r[static_cast<size_t>(i) * d];
    for (int j = 0; j < d; ++j) acc += row[j] * x[j];
    r += static_cast<std::uint64_t>(acc % m.c) * mult;
    mult *= c;
  }
  return r;
}

std::vector<Point> kernel_points(const EndoAction& f) {
  std::vector<Point> k;
  std::uint64_t s = f.model.size();
  for (Point p = 0; p < s; ++p)
    if (apply_endo(f, p) == 0) k.push_back(p);
  return k;
}

std::vector<Point> scalar_kernel(const FiniteModel& m, long a) {
  long g = std::gcd(((a % m.c) + m.c) % m.c, m.c);  // gcd(0, c) = c: [0] kills everything
  long step = m.c / g;
  // Per coordinate the solutions of a*x = 0 are the g multiples of step.
  std::vector<Point> pts;
  pts.reserve(1);
  std::vector<long> digit(m.dim(), 0);
  std::vector<long> coords(m.dim());
  while (true) {
    for (int i = 0; i < m.dim(); ++i) coords[i] = digit[i] * step;
    pts.push_back(point_index(m, coords));
    int i = 0;
    for (; i < m.dim(); ++i) {
      if (++digit[i] < g) break;
      digit[i] = 0;
    }
    if (i == m.dim()) break;
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Candidates for the stabilizer are the differences y - y0: any stabilizing
// translation must map y0 somewhere inside Y.
static std::vector<Point> stab_candidates(const FiniteModel& m, const std::vector<Point>& y) {
  std::vector<Point> cand(y.size());
  for (size_t i = 0; i < y.size(); ++i) cand[i] = sub_points(m, y[i], y[0]);
  return cand;
}

std::vector<Point> finite_stab(const FiniteModel& m, const std::vector<Point>& y0) {
  if (y0.empty()) fail(ErrorCode::EmptySet, "stabilizer of the empty set");
  std::vector<Point> y = y0;
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  std::vector<bool> in(m.size(), false);
  for (Point p : y) {
    if (p >= m.size()) fail(ErrorCode::BadIndexRange, "point outside the model");
    in[p] = true;
  }
  std::vector<Point> stab;
  for (Point t : stab_candidates(m, y)) {
    bool ok = true;
    for (Point p : y)
      if (!in[add_points(m, p, t)]) { ok = false; break; }
    if (ok) stab.push_back(t);
  }
  std::sort(stab.begin(), stab.end());
  return stab;
}

std::vector<Point> finite_stab_parallel(const FiniteModel& m, const std::vector<Point>& y0) {
  if (y0.empty()) fail(ErrorCode::EmptySet, "stabilizer of the empty set");
  std::vector<Point> y = y0;
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  std::vector<bool> in(m.size(), false);
  for (Point p : y) {
    if (p >= m.size()) fail(ErrorCode::BadIndexRange, "point outside the model");
    in[p] = true;
  }
  std::vector<Point> cand = stab_candidates(m, y);
  std::vector<char> keep(cand.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < static_cast<long>(cand.size()); ++i) {
    bool ok = true;
    for (Point p : y)
      if (!in[add_points(m, p, cand[i])]) { ok = false; break; }
    keep[i] = ok ? 1 : 0;
  }
  std::vector<Point> stab;
  for (size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) stab.push_back(cand[i]);
  std::sort(stab.begin(), stab.end());
  return stab;
}

// --- subgroup enumeration ------------------------------------------------

// Subgroups of (Z/q)^m, q a prime power, via Hermite forms of the lattices
// between q*Z^m and Z^m.  Each subgroup has exactly one such basis matrix,
// so the enumeration needs no deduplication.  Returned as coordinate lists.
static bool lattice_contains_q_basis(const std::vector<std::vector<long>>& h, long q) {
  int m = static_cast<int>(h.size());
  for (int j = 0; j < m; ++j) {
    std::vector<long> v(m, 0);
    v[j] = q;
    for (int i = 0; i < m; ++i) {
      if (v[i] % h[i][i] != 0) return false;
      long f = v[i] / h[i][i];
      for (int k = i; k < m; ++k) v[k] -= f * h[i][k];
    }
    for (int k = 0; k < m; ++k)
      if (v[k] != 0) return false;
  }
  return true;
}

static void emit_subgroup(const std::vector<std::vector<long>>& h, long q,
                          std::vector<std::vector<std::vector<long>>>& out) {
  int m = static_cast<int>(h.size());
  std::vector<long> reps(m);
  for (int i = 0; i < m; ++i) reps[i] = q / h[i][i];
  std::vector<std::vector<long>> pts;
  std::vector<long> t(m, 0);
  while (true) {
    std::vector<long> x(m, 0);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) x[k] = (x[k] + t[i] * h[i][k]) % q;
    pts.push_back(x);
    int i = 0;
    for (; i < m; ++i) {
      if (++t[i] < reps[i]) break;
      t[i] = 0;
    }
    if (i == m) break;
  }
  out.push_back(std::move(pts));
}

static void hnf_recurse(std::vector<std::vector<long>>& h, int col, long q,
                        const std::vector<long>& divisors,
                        std::vector<std::vector<std::vector<long>>>& out) {
  int m = static_cast<int>(h.size());
  if (col == m) {
    if (lattice_contains_q_basis(h, q)) emit_subgroup(h, q, out);
    return;
  }
  for (long d : divisors) {
    h[col][col] = d;
    // entries above the pivot run over [0, d)
    std::vector<long> above(col, 0);
    while (true) {
      for (int i = 0; i < col; ++i) h[i][col] = above[i];
      hnf_recurse(h, col + 1, q, divisors, out);
      int i = 0;
      for (; i < col; ++i) {
        if (++above[i] < d) break;
        above[i] = 0;
      }
      if (i == col) break;
    }
    for (int i = 0; i < col; ++i) h[i][col] = 0;
  }
  h[col][col] = 0;
}

static std::vector<std::vector<std::vector<long>>> part_subgroups(long q, int m) {
  std::vector<long> divisors;
  for (long d = 1; d <= q; ++d)
    if (q % d == 0) divisors.push_back(d);
  std::vector<std::vector<long>> h(m, std::vector<long>(m, 0));
  std::vector<std::vector<std::vector<long>>> out;
  hnf_recurse(h, 0, q, divisors, out);
  return out;
}

std::vector<std::vector<Point>> subgroups_of_model(const FiniteModel& m) {
  // Split the modulus into prime powers; every subgroup is the product of
  // its p-parts because the component orders are coprime.
  std::vector<long> parts;
  long rest = m.c;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    long q = 1;
    while (rest % p == 0) { q *= p; rest /= p; }
    parts.push_back(q);
  }
  if (rest > 1) parts.push_back(rest);
  if (parts.empty()) return {std::vector<Point>{0}};  // c = 1: trivial group

  std::vector<std::vector<std::vector<std::vector<long>>>> per_part;
  per_part.reserve(parts.size());
  for (long q : parts) per_part.push_back(part_subgroups(q, m.dim()));

  // Idempotents e_i = 1 mod q_i, 0 mod the other parts.
  std::vector<long> idem(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    long rest_i = m.c / parts[i];
    long inv = 1;  // inverse of rest_i modulo parts[i], by brute force (tiny)
    for (long k = 1; k < parts[i]; ++k)
      if ((rest_i % parts[i]) * k % parts[i] == 1 % parts[i]) { inv = k; break; }
    idem[i] = rest_i % m.c * inv % m.c;
  }

  std::vector<std::vector<Point>> subgroups;
  std::vector<size_t> choice(parts.size(), 0);
  std::vector<long> coords(m.dim());
  while (true) {
    std::vector<Point> pts;
    std::vector<size_t> cursor(parts.size(), 0);
    while (true) {
      for (int j = 0; j < m.dim(); ++j) {
        long x = 0;
        for (size_t i = 0; i < parts.size(); ++i)
          x = (x + idem[i] * per_part[i][choice[i]][cursor[i]][j]) % m.c;
        coords[j] = x;
      }
      pts.push_back(point_index(m, coords));
      size_t i = 0;
      for (; i < parts.size(); ++i) {
        if (++cursor[i] < per_part[i][choice[i]].size()) break;
        cursor[i] = 0;
      }
      if (i == parts.size()) break;
    }
    std::sort(pts.begin(), pts.end());
    subgroups.push_back(std::move(pts));
    size_t i = 0;
    for (; i < parts.size(); ++i) {
      if (++choice[i] < per_part[i].size()) break;
      choice[i] = 0;
    }
    if (i == parts.size()) break;
  }
  return subgroups;
}

std::vector<Point> coset_representatives(const FiniteModel& m,
                                         const std::vector<Point>& subgroup) {
  if (subgroup.empty()) fail(ErrorCode::EmptySet, "cosets of an empty set");
  std::vector<bool> seen(m.size(), false);
  std::vector<Point> reps;
  for (Point p = 0; p < m.size(); ++p) {
    if (seen[p]) continue;
    reps.push_back(p);
    for (Point h : subgroup) seen[add_points(m, p, h)] = true;
  }
  return reps;
}

}  // namespace abelic
