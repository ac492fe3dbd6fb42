#include "abelic/splitting.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "abelic/errors.hpp"

namespace abelic {

namespace {

// Express p as y * s for a full-row-rank s, via its Hermite form: solve
// along the pivot columns, then verify the whole row.  Drops out of the
// span -> no solution (callers treat that as an internal inconsistency).
std::vector<OrderElement> solve_in_rowspan(const MorphismMatrix& s,
                                           const std::vector<OrderElement>& p) {
  OHnf nf = hnf(s);
  const Order& o = s.order;
  std::vector<OrderElement> y(s.rows, oe(o, 0));
  std::vector<OrderElement> residual = p;
  for (int i = 0; i < s.rows; ++i) {
    int c = nf.pivot_cols[i];
    auto q = try_div(residual[c], nf.h.at(i, c));
    if (!q) fail(ErrorCode::InconsistentSplit, "row does not lie in the target module");
    y[i] = *q;
    for (int j = 0; j < s.cols; ++j) residual[j] = sub(residual[j], mul(y[i], nf.h.at(i, j)));
  }
  for (const auto& r : residual)
    if (!r.is_zero()) fail(ErrorCode::InconsistentSplit, "row does not lie in the target module");
  // y solves y * H = p; pull back through the transform.
  std::vector<OrderElement> x(s.rows, oe(o, 0));
  for (int j = 0; j < s.rows; ++j) {
    OrderElement acc = oe(o, 0);
    for (int i = 0; i < s.rows; ++i) acc = add(acc, mul(y[i], nf.u.at(i, j)));
    x[j] = acc;
  }
  return x;
}

MorphismMatrix inverse_of_unimodular(const MorphismMatrix& u) {
  return scale_to_integral(kinverse(to_kmat(u)), Int(1));
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

bool minor_condition(const MorphismMatrix& phi_hat, int n) {
  int big = phi_hat.rows;
  std::vector<int> last_cols(n);
  std::iota(last_cols.begin(), last_cols.end(), big - n);
  for (const auto& rows : increasing_tuples(big, n))
    if (det(submatrix(phi_hat, rows, last_cols)).is_zero()) return false;
  return true;
}

bool lex_less(const MorphismMatrix& a, const MorphismMatrix& b) {
  for (size_t k = 0; k < a.e.size(); ++k) {
    if (a.e[k].a != b.e[k].a) return a.e[k].a < b.e[k].a;
    if (a.e[k].b != b.e[k].b) return a.e[k].b < b.e[k].b;
  }
  return false;
}

std::string matrix_key(const MorphismMatrix& m) {
  std::string k;
  for (const auto& x : m.e) k += to_string(x.a) + "," + to_string(x.b) + ";";
  return k;
}

// Rational bound on the squared operator norm: (max row sum of entry
// norms) * (max column sum of entry norms); exact, and 1 on the identity.
Int operator_norm_sq_bound(const MorphismMatrix& t) {
  Int row_max = 0, col_max = 0;
  for (int i = 0; i < t.rows; ++i) {
    Int s = 0;
    for (int j = 0; j < t.cols; ++j) s += norm(t.at(i, j));
    row_max = std::max(row_max, s);
  }
  for (int j = 0; j < t.cols; ++j) {
    Int s = 0;
    for (int i = 0; i < t.rows; ++i) s += norm(t.at(i, j));
    col_max = std::max(col_max, s);
  }
  return row_max * col_max;
}

void fill_duals(SubvarietySplit& s) {
  IsogenyData iso = dual_and_alpha(s.phi);
  s.phi_hat = iso.dual;
  s.alpha = iso.alpha;
  s.degree = iso.degree;
}

}  // namespace

MorphismMatrix SubvarietySplit::top_block() const {
  std::vector<int> rows(b.ambient - b.rank), cols(b.ambient);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  return submatrix(phi, rows, cols);
}

MorphismMatrix SubvarietySplit::bottom_block() const {
  std::vector<int> rows(b.rank), cols(b.ambient);
  std::iota(rows.begin(), rows.end(), b.ambient - b.rank);
  std::iota(cols.begin(), cols.end(), 0);
  return submatrix(phi, rows, cols);
}

bool DiagramVerdict::all_true() const {
  if (!(dual_left && dual_right && outer && family_ok)) return false;
  for (bool sq : squares)
    if (!sq) return false;
  return true;
}

SubvarietyModule make_module(const Order& o, int ambient, int rank, MorphismMatrix generators,
                             bool saturated) {
  if (ambient < 1 || rank < 1 || rank > ambient)
    fail(ErrorCode::BadDimension, "module needs 1 <= rank <= ambient");
  if (generators.rows != ambient || generators.cols != rank)
    fail(ErrorCode::SizeMismatch, "generator matrix must be ambient x rank");
  if (generators.order != o) fail(ErrorCode::OrderMismatch, "generators over the wrong order");
  if (right_kernel(generators).rows != 0)
    fail(ErrorCode::SingularMatrix, "generators are not of full column rank");
  return {o, ambient, rank, std::move(generators), saturated};
}

SaturationResult saturate(const SubvarietyModule& b) {
  if (!b.order.euclidean()) fail(ErrorCode::NonEuclideanOrder, "saturation needs normal forms");
  const Order& o = b.order;
  int big = b.ambient, n = b.rank;
  MorphismMatrix span = transpose(b.generators);  // n x N, rows span the module
  MorphismMatrix sat_rows;
  if (n == big) {
    sat_rows = MorphismMatrix::identity(o, big);
  } else {
    sat_rows = right_kernel(right_kernel(span));
    if (sat_rows.rows != n) fail(ErrorCode::InconsistentSplit, "saturation changed the rank");
  }
  // Transition matrix: original rows in terms of the saturated basis.
  MorphismMatrix d(o, n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<OrderElement> row(big);
    for (int j = 0; j < big; ++j) row[j] = span.at(i, j);
    std::vector<OrderElement> y = solve_in_rowspan(sat_rows, row);
    for (int k = 0; k < n; ++k) d.at(i, k) = y[k];
  }
  MorphismMatrix coeff = transpose(d);
  if (is_unit(det(coeff))) {
    SubvarietyModule same = b;
    same.saturated = true;
    return {std::move(same), MorphismMatrix::identity(o, n), Int(1)};
  }
  SubvarietyModule out{o, big, n, transpose(sat_rows), true};
  if (!(mmul(out.generators, coeff) == b.generators))
    fail(ErrorCode::InconsistentSplit, "saturation does not factor the input");
  Int deg = degree(coeff);
  return {std::move(out), std::move(coeff), std::move(deg)};
}

bool is_saturated_module(const SubvarietyModule& b) {
  return saturate(b).connecting_degree == 1;
}

SubvarietySplit complement_and_split(const SubvarietyModule& b, ComplementStyle style) {
  if (!b.order.euclidean()) fail(ErrorCode::NonEuclideanOrder, "splitting needs normal forms");
  if (!b.saturated || !is_saturated_module(b))
    fail(ErrorCode::NotSaturated, "split requires a saturated module");
  const Order& o = b.order;
  int big = b.ambient, n = b.rank;

  MorphismMatrix top = left_kernel(b.generators);  // (N-n) x N, kills the module
  MorphismMatrix bottom;
  if (style == ComplementStyle::hermitian) {
    bottom = conj_transpose(b.generators);
  } else if (n == big) {
    bottom = MorphismMatrix::identity(o, big);
  } else {
    // Extend the saturated kernel rows to a unimodular basis: with
    // U * top^T in column staircase form, top spans the first (N-n) rows
    // of W = (U^{-1})^T up to a unimodular factor, so the remaining rows
    // of W complete it.
    OHnf nf = hnf(transpose(top));
    MorphismMatrix w = transpose(inverse_of_unimodular(nf.u));
    std::vector<int> rows(n), cols(big);
    std::iota(rows.begin(), rows.end(), big - n);
    std::iota(cols.begin(), cols.end(), 0);
    bottom = submatrix(w, rows, cols);
  }

  SubvarietySplit s;
  s.b = b;
  s.phi = n == big ? bottom : vstack(top, bottom);
  if (!mmul(top, b.generators).is_zero())
    fail(ErrorCode::InconsistentSplit, "top block does not kill the module");
  if (det(mmul(bottom, b.generators)).is_zero())
    fail(ErrorCode::InconsistentSplit, "bottom block is singular on the module");
  fill_duals(s);
  s.t = MorphismMatrix::identity(o, big);
  s.t_norm_sq = 1;
  return s;
}

SubvarietySplit apply_left_factor(const SubvarietySplit& s, const MorphismMatrix& v) {
  int big = s.b.ambient, n = s.b.rank;
  if (v.rows != big || v.cols != big) fail(ErrorCode::SizeMismatch, "left factor must be N x N");
  if (v.order != s.b.order) fail(ErrorCode::OrderMismatch, "left factor over the wrong order");
  for (int i = 0; i < big - n; ++i)
    for (int j = big - n; j < big; ++j)
      if (!v.at(i, j).is_zero())
        fail(ErrorCode::InconsistentSplit, "left factor must be block lower triangular");
  if (det(v).is_zero()) fail(ErrorCode::SingularMatrix, "left factor must be nonsingular");
  SubvarietySplit out;
  out.b = s.b;
  out.phi = mmul(v, s.phi);
  fill_duals(out);
  out.t = MorphismMatrix::identity(s.b.order, big);
  out.t_norm_sq = 1;
  return out;
}

SubvarietySplit normalize_t(SubvarietySplit s, int budget, long shear_norm_bound) {
  const Order& o = s.b.order;
  int big = s.b.ambient, n = s.b.rank;

  struct Gen {
    MorphismMatrix m, inv;
  };
  std::vector<Gen> gens;
  std::vector<OrderElement> pool = elements_of_norm_up_to(o, shear_norm_bound);
  for (int i = 0; i < big; ++i)
    for (int j = 0; j < big; ++j) {
      if (i == j) continue;
      for (const auto& u : pool) {
        if (u.is_zero()) continue;
        MorphismMatrix sh = MorphismMatrix::identity(o, big);
        sh.at(i, j) = u;
        MorphismMatrix inv = MorphismMatrix::identity(o, big);
        inv.at(i, j) = neg(u);
        gens.push_back({std::move(sh), std::move(inv)});
      }
    }
  for (int i = 0; i < big; ++i)
    for (int j = i + 1; j < big; ++j) {
      MorphismMatrix sw = MorphismMatrix::identity(o, big);
      sw.at(i, i) = oe(o, 0);
      sw.at(j, j) = oe(o, 0);
      sw.at(i, j) = oe(o, 1);
      sw.at(j, i) = oe(o, 1);
      gens.push_back({sw, sw});
    }

  struct State {
    MorphismMatrix t, tinv;
  };
  std::vector<State> frontier{{MorphismMatrix::identity(o, big), MorphismMatrix::identity(o, big)}};
  std::map<std::string, bool> visited{{matrix_key(frontier[0].t), true}};

  for (int depth = 0; depth <= budget; ++depth) {
    const State* best = nullptr;
    for (const State& st : frontier) {
      if (!minor_condition(mmul(st.tinv, s.phi_hat), n)) continue;
      if (!best || lex_less(st.t, best->t)) best = &st;
    }
    if (best) {
      MorphismMatrix new_phi = mmul(s.phi, best->t);
      MorphismMatrix new_hat = mmul(best->tinv, s.phi_hat);
      IsogenyData iso = dual_and_alpha(new_phi);
      if (iso.alpha != s.alpha || !(iso.dual == new_hat) || iso.degree != s.degree)
        fail(ErrorCode::InconsistentSplit, "normalizer changed the dual data");
      s.phi = std::move(new_phi);
      s.phi_hat = std::move(new_hat);
      // Right-composition moves the tracked submodule too: the new map kills
      // the transported generators, not the old ones.  The transform is
      // unimodular, so the moved generators stay integral and saturated;
      // t_norm_sq records the cost of the move for the height/degree bounds.
      s.b.generators = mmul(best->tinv, s.b.generators);
      if (!mmul(s.top_block(), s.b.generators).is_zero())
        fail(ErrorCode::InconsistentSplit,
             "normalizer broke the kernel block");
      s.t = best->t;
      s.t_norm_sq = operator_norm_sq_bound(s.t);
      s.normalized = true;
      s.family.clear();
      return s;
    }
    if (depth == budget) break;
    std::vector<State> next;
    for (const State& st : frontier)
      for (const Gen& g : gens) {
        State cand{mmul(st.t, g.m), mmul(g.inv, st.tinv)};
        std::string key = matrix_key(cand.t);
        if (visited.emplace(std::move(key), true).second) next.push_back(std::move(cand));
      }
    frontier = std::move(next);
  }
  fail(ErrorCode::SearchBudgetExceeded,
       "no normalizer within " + std::to_string(budget) + " elementary factors");
}

SubvarietySplit phi_family(SubvarietySplit s) {
  if (!s.normalized) fail(ErrorCode::MalformedInput, "family extraction requires normalize_t");
  int big = s.b.ambient, n = s.b.rank;
  std::vector<int> all_cols(big), last_cols(n);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  std::iota(last_cols.begin(), last_cols.end(), big - n);
  s.family.clear();
  for (const auto& rows : increasing_tuples(big, n)) {
    if (det(submatrix(s.phi_hat, rows, last_cols)).is_zero())
      fail(ErrorCode::MinorVanished, "row-selection minor vanished after normalization");
    s.family.emplace_back(rows, submatrix(s.phi_hat, rows, all_cols));
  }
  if (Int(static_cast<long>(s.family.size())) !=
      binomial(static_cast<unsigned long>(big), static_cast<unsigned long>(n)))
    fail(ErrorCode::InconsistentSplit, "family has the wrong cardinality");
  return s;
}

DiagramVerdict diagram_check(const SubvarietySplit& s) {
  const Order& o = s.b.order;
  int big = s.b.ambient, n = s.b.rank;
  DiagramVerdict v;
  MorphismMatrix alpha_id = MorphismMatrix::scalar(o, big, OrderElement(o, s.alpha));
  v.dual_left = mmul(s.phi_hat, s.phi) == alpha_id;
  v.dual_right = mmul(s.phi, s.phi_hat) == alpha_id;
  MorphismMatrix phi_p = mmul(s.phi, s.b.generators);
  v.outer = mmul(s.phi_hat, phi_p) == scalar_mul(OrderElement(o, s.alpha), s.b.generators);
  Int expected = binomial(static_cast<unsigned long>(big), static_cast<unsigned long>(n));
  v.family_ok = Int(static_cast<long>(s.family.size())) == expected;
  std::vector<int> last_cols(n), fam_rows(n), gen_cols(n);
  std::iota(last_cols.begin(), last_cols.end(), big - n);
  std::iota(fam_rows.begin(), fam_rows.end(), 0);
  std::iota(gen_cols.begin(), gen_cols.end(), 0);
  MorphismMatrix hat_phi_p = mmul(s.phi_hat, phi_p);
  for (const auto& [rows, fam] : s.family) {
    if (det(submatrix(fam, fam_rows, last_cols)).is_zero()) v.family_ok = false;
    MorphismMatrix left = mmul(mmul(fam, s.phi), s.b.generators);
    MorphismMatrix right = mmul(fam, phi_p);
    MorphismMatrix from_dual = submatrix(hat_phi_p, rows, gen_cols);
    v.squares.push_back(left == right && left == from_dual);
  }
  return v;
}

ProductStructure product_assemble(const std::vector<SubvarietySplit>& factors) {
  if (factors.empty()) fail(ErrorCode::EmptyFactorList, "product needs at least one factor");
  ProductStructure p;
  p.global_alpha = 0;
  p.index_size = 1;
  for (const SubvarietySplit& s : factors) {
    MorphismMatrix alpha_id =
        MorphismMatrix::scalar(s.b.order, s.b.ambient, OrderElement(s.b.order, s.alpha));
    if (!(mmul(s.phi_hat, s.phi) == alpha_id))
      fail(ErrorCode::InconsistentSplit, "factor split fails the dual identity");
    Int contribution = s.alpha * s.alpha *
                       binomial(static_cast<unsigned long>(s.b.ambient - 1),
                                static_cast<unsigned long>(s.b.rank - 1));
    p.global_alpha = std::max(p.global_alpha, contribution);
    p.index_size *= binomial(static_cast<unsigned long>(s.b.ambient),
                             static_cast<unsigned long>(s.b.rank));
    p.factors.push_back(s);
  }
  return p;
}

std::pair<Rat, Rat> push_degree_bound(const SubvarietySplit& s, const Rat& class_degree) {
  if (class_degree <= 0) fail(ErrorCode::MalformedInput, "class degree must be positive");
  Int restricted = degree(mmul(s.bottom_block(), s.b.generators));
  Rat pushed = Rat(restricted) * class_degree;
  Rat bound = Rat(s.degree) * class_degree;
  if (pushed > bound) fail(ErrorCode::InconsistentSplit, "pushforward degree exceeds its bound");
  return {pushed, bound};
}

SubvarietySplit random_split(std::mt19937_64& rng, const Order& o, int ambient, int rank,
                             long norm_bound) {
  std::vector<OrderElement> pool = elements_of_norm_up_to(o, norm_bound);
  auto draw = [&] { return pool[rng() % pool.size()]; };
  MorphismMatrix p(o, ambient, rank);
  do {
    for (auto& x : p.e) x = draw();
  } while (right_kernel(p).rows != 0);
  SubvarietyModule mod = make_module(o, ambient, rank, p);
  SubvarietyModule sat = saturate(mod).module;
  ComplementStyle style =
      (rng() % 2) ? ComplementStyle::hermitian : ComplementStyle::completion;
  SubvarietySplit base = complement_and_split(sat, style);
  for (int attempt = 0; attempt < 50; ++attempt) {
    MorphismMatrix v(o, ambient, ambient);
    do {
      for (int i = 0; i < ambient; ++i)
        for (int j = 0; j < ambient; ++j)
          v.at(i, j) = (i < ambient - rank && j >= ambient - rank) ? oe(o, 0) : draw();
    } while (det(v).is_zero());
    try {
      return phi_family(normalize_t(apply_left_factor(base, v), 4));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SearchBudgetExceeded || attempt == 49) throw;
    }
  }
  fail(ErrorCode::SearchBudgetExceeded, "unreachable");
}

}  // namespace abelic
