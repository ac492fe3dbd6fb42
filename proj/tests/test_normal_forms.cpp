#include <random>

#include "doctest.h"

#include "abelic/matrix.hpp"
#include "abelic/zmat.hpp"

using namespace abelic;

namespace {

ZMat random_zmat(std::mt19937_64& rng, int r, int c, long bound) {
  std::uniform_int_distribution<long> coeff(-bound, bound);
  ZMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = coeff(rng);
  return m;
}

MorphismMatrix random_omat(std::mt19937_64& rng, const Order& o, int r, int c,
                           long bound) {
  std::uniform_int_distribution<long> coeff(-bound, bound);
  MorphismMatrix m(o, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.at(i, j) = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
  return m;
}

}  // namespace

TEST_CASE("integer hermite form postconditions") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 4);
    ZMat a = random_zmat(rng, r, c, 9);
    ZHnf hn = zhnf(a);
    CHECK(zmul(hn.u, a) == hn.h);
    Int ud = bareiss_det(hn.u);
    CHECK((ud == 1 || ud == -1));
    for (size_t k = 0; k < hn.pivot_cols.size(); ++k) {
      const Int& pivot = hn.h.at(static_cast<int>(k), hn.pivot_cols[k]);
      CHECK(pivot > 0);
      for (int i = 0; i < static_cast<int>(k); ++i) {
        const Int& above = hn.h.at(i, hn.pivot_cols[k]);
        CHECK(above >= 0);
        CHECK(above < pivot);
      }
      if (k > 0) CHECK(hn.pivot_cols[k] > hn.pivot_cols[k - 1]);
    }
  }
}

TEST_CASE("smith divisors: elimination route equals minor-gcd route") {
  ZMat d23(2, 2);
  d23.at(0, 0) = 2;
  d23.at(1, 1) = 3;
  auto s = zsnf_divisors(d23);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 1);
  CHECK(s[1] == 6);

  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 150; ++rep) {
    int r = 1 + static_cast<int>(rng() % 3);
    int c = 1 + static_cast<int>(rng() % 3);
    ZMat a = random_zmat(rng, r, c, 9);
    auto fast = zsnf_divisors(a);
    auto slow = zsnf_divisors_by_minors(a);
    CHECK(fast == slow);
    for (size_t k = 1; k < fast.size(); ++k) {
      if (fast[k - 1] == 0) CHECK(fast[k] == 0);
      else CHECK(fast[k] % fast[k - 1] == 0);
    }
  }
}

TEST_CASE("right kernel spans the exact null space") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 150; ++rep) {
    int r = 1 + static_cast<int>(rng() % 3);
    int c = r + static_cast<int>(rng() % 3);
    ZMat a = random_zmat(rng, r, c, 6);
    ZMat k = zright_kernel(a);
    for (int i = 0; i < k.rows; ++i)
      for (int row = 0; row < r; ++row) {
        Int dot = 0;
        for (int j = 0; j < c; ++j) dot += a.at(row, j) * k.at(i, j);
        CHECK(dot == 0);
      }
    // The kernel lattice is saturated, so its basis has unit Smith chain.
    if (k.rows > 0) {
      auto divisors = zsnf_divisors(k);
      for (const Int& d : divisors) CHECK(d == 1);
    }
  }
}

TEST_CASE("mod-rows reduction is canonical") {
  ZMat h(2, 2);
  h.at(0, 0) = 2;
  h.at(0, 1) = 1;
  h.at(1, 1) = 3;
  // (5,4) - 2*(2,1) = (1,2): same residue class, same representative.
  auto r1 = zreduce_mod_rows(h, {5, 4});
  CHECK(r1 == zreduce_mod_rows(h, {1, 2}));
  CHECK(r1 == zreduce_mod_rows(h, r1));
  for (const Int& x : r1) CHECK(x >= 0);
}

TEST_CASE("regular representation expands norms into determinants") {
  Order zi = order_iq(1), zw = order_iq(3);
  MorphismMatrix a(zi, 1, 1);
  a.at(0, 0) = oe(zi, 1, 1);
  CHECK(bareiss_det(regular_rep(a)) == 2);
  MorphismMatrix b(zw, 1, 1);
  b.at(0, 0) = oe(zw, 2, 1);
  CHECK(bareiss_det(regular_rep(b)) == 7);

  std::mt19937_64 rng(24);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3),
                         order_iq(2), order_iq(7, 2)}) {
    for (int rep = 0; rep < 60; ++rep) {
      int n = 1 + static_cast<int>(rng() % 3);
      MorphismMatrix m = random_omat(rng, o, n, n, 4);
      CHECK(bareiss_det(regular_rep(m)) == norm(det(m)));
      // The regular representation is a ring homomorphism.
      MorphismMatrix m2 = random_omat(rng, o, n, n, 4);
      CHECK(zmul(regular_rep(m), regular_rep(m2)) == regular_rep(mmul(m, m2)));
    }
  }
}

TEST_CASE("order-level determinant agrees with the fraction-field route") {
  Order zi = order_iq(1);
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 80; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    MorphismMatrix g = random_omat(rng, zi, n, n, 4);
    OrderElement d = det(g);
    KElem kd = kdet(to_kmat(g));
    CHECK(Rat(d.a) == kd.a);
    CHECK(Rat(d.b) == kd.b);
  }
}

TEST_CASE("order-level hermite and smith forms") {
  std::mt19937_64 rng(26);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)}) {
    for (int rep = 0; rep < 60; ++rep) {
      int r = 1 + static_cast<int>(rng() % 3);
      int c = 1 + static_cast<int>(rng() % 3);
      MorphismMatrix a = random_omat(rng, o, r, c, 3);
      OHnf oh = hnf(a);
      CHECK(mmul(oh.u, a) == oh.h);
      CHECK(is_unit(det(oh.u)));

      OSmith sm = smith(a);
      CHECK(mmul(mmul(sm.u, a), sm.v) == sm.s);
      CHECK(is_unit(det(sm.u)));
      CHECK(is_unit(det(sm.v)));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          if (i != j) CHECK(sm.s.at(i, j).is_zero());
      for (int k = 1; k < std::min(r, c); ++k) {
        if (sm.s.at(k - 1, k - 1).is_zero()) CHECK(sm.s.at(k, k).is_zero());
        else CHECK(divides(sm.s.at(k - 1, k - 1), sm.s.at(k, k)));
      }
    }
  }
}

TEST_CASE("left kernel is saturated and annihilating") {
  Order zz = order_integers();
  MorphismMatrix p(zz, 2, 1);
  p.at(0, 0) = oe(zz, 2);
  p.at(1, 0) = oe(zz, 2);
  MorphismMatrix lk = left_kernel(p);
  REQUIRE(lk.rows == 1);
  CHECK(mmul(lk, p).is_zero());
  CHECK(norm(lk.at(0, 0)) == 1);
  CHECK(norm(lk.at(0, 1)) == 1);

  std::mt19937_64 rng(27);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)}) {
    for (int rep = 0; rep < 40; ++rep) {
      int big = 2 + static_cast<int>(rng() % 3);
      int n = 1 + static_cast<int>(rng() % (big - 1));
      MorphismMatrix g = random_omat(rng, o, big, n, 3);
      MorphismMatrix k = left_kernel(g);
      CHECK(mmul(k, g).is_zero());
      if (k.rows > 0) {
        // Rows stay independent: the stacked Smith chain has no zero.
        OSmith sm = smith(k);
        for (int i = 0; i < k.rows; ++i) CHECK(!sm.s.at(i, i).is_zero());
      }
    }
  }
}

TEST_CASE("fraction-field inverse tracks denominators") {
  Order zi = order_iq(1);
  MorphismMatrix g(zi, 2, 2);
  g.at(0, 0) = oe(zi, 1, 1);
  g.at(0, 1) = oe(zi, 2, 0);
  g.at(1, 0) = oe(zi, 0, 1);
  g.at(1, 1) = oe(zi, 3, -1);
  KMat gi = kinverse(to_kmat(g));
  KMat prod = kmat_mul(to_kmat(g), gi);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(prod.at(i, j).a == (i == j ? 1 : 0));
      CHECK(prod.at(i, j).b == 0);
    }
  Int al = denominator_lcm(gi);
  MorphismMatrix scaled = scale_to_integral(gi, al);
  CHECK(mmul(g, scaled) == MorphismMatrix::scalar(zi, 2, OrderElement(zi, al)));
}
