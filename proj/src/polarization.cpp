#include "abelic/polarization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "abelic/errors.hpp"

namespace abelic {

HermitianClass::HermitianClass(const Order& o, int n)
    : order(o), size(n), e(static_cast<size_t>(n) * n) {}

HermitianClass HermitianClass::identity(const Order& o, int n) {
  HermitianClass h(o, n);
  for (int i = 0; i < n; ++i) h.at(i, i).a = 1;
  return h;
}

KElem kconj(const Order& o, const KElem& x) {
  return {x.a + x.b * Rat(o.omega_trace()), -x.b};
}

KElem kscale(const KElem& x, const Rat& c) { return {x.a * c, x.b * c}; }

bool conjugate_symmetric(const HermitianClass& h) {
  for (int i = 0; i < h.size; ++i)
    for (int j = 0; j < h.size; ++j)
      if (!(h.at(i, j) == kconj(h.order, h.at(j, i)))) return false;
  return true;
}

HermitianClass scale_class(const HermitianClass& h, const Rat& c) {
  HermitianClass out = h;
  for (KElem& x : out.e) x = kscale(x, c);
  return out;
}

static KMat kmat_of_class(const HermitianClass& h) {
  KMat m(h.order, h.size, h.size);
  m.e = h.e;
  return m;
}

static HermitianClass class_of_kmat(const KMat& m) {
  if (m.rows != m.cols)
    fail(ErrorCode::SizeMismatch, "class matrix must be square");
  HermitianClass h(m.order, m.rows);
  h.e = m.e;
  return h;
}

static void check_class_input(const HermitianClass& h) {
  if (!conjugate_symmetric(h))
    fail(ErrorCode::MalformedInput, "class is not conjugate-symmetric");
}

FormalChernClass formal_product_class(const Order& o, int n) {
  if (n < 1) fail(ErrorCode::BadDimension, "power must be positive");
  FormalChernClass c{o, n, {}};
  for (int j = 0; j < n; ++j) {
    MorphismMatrix row(o, 1, n);
    row.at(0, j) = oe(o, 1);
    c.terms.emplace_back(std::move(row), Int(1));
  }
  return c;
}

HermitianClass collapse(const FormalChernClass& c) {
  HermitianClass h(c.order, c.ambient);
  for (const auto& [v, m] : c.terms) {
    if (!(v.order == c.order))
      fail(ErrorCode::OrderMismatch, "term row over a different order");
    if (v.rows != 1 || v.cols != c.ambient)
      fail(ErrorCode::SizeMismatch, "term is not a row on the ambient power");
    if (m < 1) fail(ErrorCode::BadMultiplicity, "multiplicity must be >= 1");
    for (int k = 0; k < c.ambient; ++k)
      for (int l = 0; l < c.ambient; ++l) {
        OrderElement x = mul(conj(v.at(0, k)), v.at(0, l));
        h.at(k, l) = kadd(h.at(k, l), kscale({Rat(x.a), Rat(x.b)}, Rat(m)));
      }
  }
  return h;
}

FormalChernClass formal_pullback(const FormalChernClass& c,
                                 const MorphismMatrix& psi) {
  if (!(psi.order == c.order))
    fail(ErrorCode::OrderMismatch, "pullback map over a different order");
  if (psi.rows != c.ambient)
    fail(ErrorCode::SizeMismatch, "pullback map does not land on the class");
  FormalChernClass out{c.order, psi.cols, {}};
  for (const auto& [v, m] : c.terms) out.terms.emplace_back(mmul(v, psi), m);
  return out;
}

FormalChernClass formal_tensor(const FormalChernClass& c1,
                               const FormalChernClass& c2) {
  if (!(c1.order == c2.order))
    fail(ErrorCode::OrderMismatch, "tensor factors over different orders");
  if (c1.ambient != c2.ambient)
    fail(ErrorCode::SizeMismatch, "tensor factors on different powers");
  FormalChernClass out = c1;
  out.terms.insert(out.terms.end(), c2.terms.begin(), c2.terms.end());
  return out;
}

HermitianClass pullback_class(const HermitianClass& h,
                              const MorphismMatrix& psi) {
  if (!(psi.order == h.order))
    fail(ErrorCode::OrderMismatch, "pullback map over a different order");
  if (psi.rows != h.size)
    fail(ErrorCode::SizeMismatch, "pullback map does not land on the class");
  KMat m = kmat_mul(kmat_mul(to_kmat(conj_transpose(psi)), kmat_of_class(h)),
                    to_kmat(psi));
  return class_of_kmat(m);
}

HermitianClass tensor_class(const HermitianClass& h1,
                            const HermitianClass& h2) {
  if (!(h1.order == h2.order))
    fail(ErrorCode::OrderMismatch, "tensor factors over different orders");
  if (h1.size != h2.size)
    fail(ErrorCode::SizeMismatch, "tensor factors on different powers");
  HermitianClass out = h1;
  for (size_t i = 0; i < out.e.size(); ++i) out.e[i] = kadd(out.e[i], h2.e[i]);
  return out;
}

HermitianClass power_class(const HermitianClass& h, const Int& m) {
  if (m < 1) fail(ErrorCode::BadMultiplicity, "power must be >= 1");
  return scale_class(h, Rat(m));
}

// Flattens (class, multiplicity) pairs into one slot per copy, checking the
// shared shape and that the multiplicities fill the size exactly.
static std::vector<const HermitianClass*> expand_slots(
    const std::vector<std::pair<HermitianClass, int>>& classes) {
  if (classes.empty())
    fail(ErrorCode::EmptySet, "no classes to intersect");
  const Order& o = classes.front().first.order;
  int n = classes.front().first.size;
  std::vector<const HermitianClass*> slots;
  for (const auto& [h, m] : classes) {
    if (!(h.order == o))
      fail(ErrorCode::OrderMismatch, "classes over different orders");
    if (h.size != n)
      fail(ErrorCode::SizeMismatch, "classes on different powers");
    check_class_input(h);
    if (m < 1) fail(ErrorCode::BadMultiplicity, "multiplicity must be >= 1");
    for (int k = 0; k < m; ++k) slots.push_back(&h);
  }
  if (static_cast<int>(slots.size()) != n)
    fail(ErrorCode::BadMultiplicity,
         "multiplicities must sum to the class size");
  return slots;
}

Rat intersection_number(
    const std::vector<std::pair<HermitianClass, int>>& classes) {
  std::vector<const HermitianClass*> slots = expand_slots(classes);
  int n = static_cast<int>(slots.size());
  const Order& o = slots.front()->order;

  // Coefficient of t_1...t_n in det(sum t_i H_i): summing, over the ways to
  // assign one class to each row, the determinant of the assembled matrix.
  std::vector<int> assign(static_cast<size_t>(n));
  std::iota(assign.begin(), assign.end(), 0);
  KElem total{Rat(0), Rat(0)};
  do {
    KMat m(o, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = slots[assign[i]]->at(i, j);
    total = kadd(total, kdet(m));
  } while (std::next_permutation(assign.begin(), assign.end()));

  // Hermitian inputs force a rational total even though single assignments
  // contribute imaginary parts.
  if (!(total.b == 0))
    fail(ErrorCode::MalformedInput, "intersection number is not rational");
  return total.a;
}

namespace {

// Polynomial in t_1..t_n truncated to square-free monomials: bitmask of the
// variables present -> coefficient.
using TruncPoly = std::map<unsigned, KElem>;

TruncPoly trunc_mul(const Order& o, const TruncPoly& p, const TruncPoly& q) {
  TruncPoly out;
  for (const auto& [m1, c1] : p)
    for (const auto& [m2, c2] : q) {
      if ((m1 & m2) != 0) continue;  // a variable would reach exponent 2
      KElem prod = kmul(o, c1, c2);
      if (prod.is_zero()) continue;
      auto [it, fresh] = out.try_emplace(m1 | m2, prod);
      if (!fresh) it->second = kadd(it->second, prod);
    }
  return out;
}

}  // namespace

Rat intersection_number_expanded(
    const std::vector<std::pair<HermitianClass, int>>& classes) {
  std::vector<const HermitianClass*> slots = expand_slots(classes);
  int n = static_cast<int>(slots.size());
  const Order& o = slots.front()->order;

  // Entry (i, j) of sum t_k H_k as a linear truncated polynomial.
  std::vector<TruncPoly> entry(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const KElem& c = slots[k]->at(i, j);
        if (!c.is_zero()) entry[static_cast<size_t>(i) * n + j][1u << k] = c;
      }

  // Minor expansion over the truncated ring, memoized on the set of columns
  // still free (the row is its population count from the bottom).
  std::map<unsigned, TruncPoly> memo;
  const unsigned full = (n == 32 ? ~0u : (1u << n) - 1);
  auto minor = [&](auto&& self, unsigned cols_free) -> const TruncPoly& {
    auto it = memo.find(cols_free);
    if (it != memo.end()) return it->second;
    TruncPoly result;
    if (cols_free == 0) {
      result[0] = {Rat(1), Rat(0)};
    } else {
      int row = n - __builtin_popcount(cols_free);
      int sign = 1;
      for (int j = 0; j < n; ++j) {
        if (!(cols_free & (1u << j))) continue;
        const TruncPoly& sub = self(self, cols_free & ~(1u << j));
        TruncPoly term =
            trunc_mul(o, entry[static_cast<size_t>(row) * n + j], sub);
        for (auto& [mask, c] : term) {
          KElem signed_c = sign > 0 ? c : kscale(c, Rat(-1));
          auto [rit, fresh] = result.try_emplace(mask, signed_c);
          if (!fresh) rit->second = kadd(rit->second, signed_c);
        }
        sign = -sign;
      }
    }
    return memo.emplace(cols_free, std::move(result)).first->second;
  };

  const TruncPoly& det = minor(minor, full);
  auto it = det.find(full);
  KElem total = it == det.end() ? KElem{Rat(0), Rat(0)} : it->second;
  if (!(total.b == 0))
    fail(ErrorCode::MalformedInput, "intersection number is not rational");
  return total.a;
}

Rat degree_of_class(const HermitianClass& h, int n) {
  if (h.size != n)
    fail(ErrorCode::SizeMismatch, "class size differs from the stated power");
  check_class_input(h);
  KElem d = kdet(kmat_of_class(h));
  if (!(d.b == 0))
    fail(ErrorCode::MalformedInput, "class determinant is not rational");
  return Rat(factorial(static_cast<unsigned long>(n))) * d.a;
}

// All increasing kk-tuples from {0..nn-1}.
static std::vector<std::vector<int>> index_tuples(int nn, int kk) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == kk) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < nn; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

static MorphismMatrix gather_rows(const MorphismMatrix& m,
                                  const std::vector<int>& idx) {
  MorphismMatrix out(m.order, static_cast<int>(idx.size()), m.cols);
  for (size_t r = 0; r < idx.size(); ++r)
    for (int j = 0; j < m.cols; ++j)
      out.at(static_cast<int>(r), j) = m.at(idx[r], j);
  return out;
}

static HermitianClass gram_class(const MorphismMatrix& m) {
  return class_of_kmat(
      kmat_mul(to_kmat(conj_transpose(m)), to_kmat(m)));
}

EquivalenceVerdict verify_equivalence(const SubvarietySplit& s) {
  const Order& o = s.phi.order;
  int big = s.phi.rows;
  int small = s.b.rank;
  if (small < 1 || small >= big)
    fail(ErrorCode::BadIndexRange, "split rank must lie strictly inside");
  if (!(mmul(s.phi_hat, s.phi) ==
        MorphismMatrix::scalar(o, big, OrderElement(o, s.alpha))))
    fail(ErrorCode::InconsistentSplit,
         "dual composed with the map is not the exponent scalar");

  Rat binom(binomial(static_cast<unsigned long>(big - 1),
                     static_cast<unsigned long>(small - 1)));

  // Tensor, over every index tuple, of the product polarization pulled back
  // along the tuple's rows of the dual; each row is hit once per tuple
  // containing it, so the collapse must be binom * (dual-gram).
  FormalChernClass ln = formal_product_class(o, small);
  FormalChernClass total{o, big, {}};
  for (const std::vector<int>& tuple : index_tuples(big, small))
    total = formal_tensor(total,
                          formal_pullback(ln, gather_rows(s.phi_hat, tuple)));

  EquivalenceVerdict v;
  HermitianClass weighted = scale_class(gram_class(s.phi_hat), binom);
  v.formal_collapse = collapse(total) == weighted;

  v.lhs = pullback_class(weighted, s.phi);
  v.rhs = scale_class(HermitianClass::identity(o, big),
                      Rat(s.alpha) * Rat(s.alpha) * binom);
  v.global = v.lhs == v.rhs;

  v.restricted = pullback_class(v.lhs, s.b.generators) ==
                 pullback_class(v.rhs, s.b.generators);
  return v;
}

IntersectionSplitVerdict verify_intersection_split(
    const MorphismMatrix& rows, int n,
    const std::vector<HermitianClass>& reference) {
  int big = rows.rows;
  if (rows.cols != big)
    fail(ErrorCode::SizeMismatch, "row system must be square");
  if (n < 1 || n >= big)
    fail(ErrorCode::BadIndexRange, "power must lie strictly inside");
  if (det(rows).is_zero())
    fail(ErrorCode::SingularMatrix, "row system is singular");
  if (static_cast<int>(reference.size()) != big - n)
    fail(ErrorCode::SizeMismatch,
         "reference classes must fill the remaining slots");
  for (const HermitianClass& h : reference) {
    if (!(h.order == rows.order))
      fail(ErrorCode::OrderMismatch, "reference over a different order");
    if (h.size != big)
      fail(ErrorCode::SizeMismatch, "reference on a different power");
  }

  std::vector<HermitianClass> row_class;
  for (int i = 0; i < big; ++i)
    row_class.push_back(gram_class(gather_rows(rows, {i})));

  HermitianClass sum(rows.order, big);
  for (const HermitianClass& r : row_class) sum = tensor_class(sum, r);

  Rat binom(binomial(static_cast<unsigned long>(big - 1),
                     static_cast<unsigned long>(n - 1)));

  auto with_reference = [&](const HermitianClass& lead) {
    std::vector<std::pair<HermitianClass, int>> list{{lead, n}};
    for (const HermitianClass& h : reference) list.emplace_back(h, 1);
    return intersection_number(list);
  };

  IntersectionSplitVerdict v;
  v.lhs = with_reference(scale_class(sum, binom));
  Rat rhs(0);
  for (const std::vector<int>& tuple : index_tuples(big, n)) {
    HermitianClass part(rows.order, big);
    for (int i : tuple) part = tensor_class(part, row_class[i]);
    rhs += with_reference(part);
  }
  v.rhs = pow_rat(binom, n) * rhs;
  v.equal = v.lhs == v.rhs;
  return v;
}

IndexFamilyCount binomial_multiplicity(int big, int small) {
  if (small < 1 || small > big || big < 1)
    fail(ErrorCode::BadIndexRange, "tuple length must lie in the index range");
  IndexFamilyCount out;
  out.per_index = binomial(static_cast<unsigned long>(big - 1),
                           static_cast<unsigned long>(small - 1));
  out.family_size = binomial(static_cast<unsigned long>(big),
                             static_cast<unsigned long>(small));
  std::vector<Int> seen(static_cast<size_t>(big), Int(0));
  Int tuples(0);
  for (const std::vector<int>& tuple : index_tuples(big, small)) {
    ++tuples;
    for (int i : tuple) ++seen[static_cast<size_t>(i)];
  }
  out.witnessed = tuples == out.family_size &&
                  std::all_of(seen.begin(), seen.end(),
                              [&](const Int& c) { return c == out.per_index; });
  return out;
}

ScalingEnvelope t_bounds(const Rat& norm_t, int ambient, ScaledQuantity q,
                         int dim_x) {
  if (norm_t < 1)
    fail(ErrorCode::MalformedInput, "transform norm bound must be >= 1");
  if (ambient < 1) fail(ErrorCode::BadDimension, "ambient power must be >= 1");
  ScalingEnvelope env;
  env.note = "up to constants independent of the transform";
  if (q == ScaledQuantity::height) {
    env.lower = pow_rat(norm_t, -(ambient - 1));
    env.upper = norm_t;
  } else {
    if (dim_x < 0)
      fail(ErrorCode::BadDimension, "dimension must be nonnegative");
    env.lower = pow_rat(norm_t, -ambient);
    env.upper = pow_rat(norm_t, dim_x);
  }
  return env;
}

}  // namespace abelic
