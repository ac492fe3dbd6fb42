#include <random>

#include "doctest.h"

#include "abelic/errors.hpp"
#include "abelic/isogeny.hpp"
#include "abelic/oracle.hpp"

using namespace abelic;

TEST_CASE("degree of frozen matrices") {
  Order zz = order_integers(), zi = order_iq(1), zw = order_iq(3);

  MorphismMatrix shear(zz, 2, 2);
  shear.at(0, 0) = oe(zz, 1);
  shear.at(0, 1) = oe(zz, 1);
  shear.at(1, 1) = oe(zz, 1);
  CHECK(degree(shear) == 1);

  MorphismMatrix two(zz, 1, 1);
  two.at(0, 0) = oe(zz, 2);
  CHECK(degree(two) == 4);  // multiplication by 2 on one curve

  MorphismMatrix onepi(zi, 1, 1);
  onepi.at(0, 0) = oe(zi, 1, 1);
  CHECK(degree(onepi) == 2);

  MorphismMatrix womega(zw, 1, 1);
  womega.at(0, 0) = oe(zw, 2, 1);
  CHECK(degree(womega) == 7);

  MorphismMatrix sing(zz, 2, 2);
  sing.at(0, 0) = oe(zz, 1);
  CHECK_THROWS_AS(degree(sing), Error);
}

TEST_CASE("dual and minimal multiplier") {
  Order zi = order_iq(1);
  MorphismMatrix m(zi, 2, 2);
  m.at(0, 0) = oe(zi, 1, 1);
  m.at(1, 1) = oe(zi, 1, 0);
  IsogenyData d = dual_and_alpha(m);
  CHECK(d.degree == 2);
  CHECK(d.alpha == 2);
  CHECK(d.dual.at(0, 0) == oe(zi, 1, -1));
  CHECK(d.dual.at(1, 1) == oe(zi, 2, 0));
  CHECK(mmul(d.dual, m) ==
        MorphismMatrix::scalar(zi, 2, oe(zi, 2)));
  REQUIRE(d.kernel_divisors.size() == 4);
  CHECK(d.kernel_divisors == std::vector<Int>{1, 1, 1, 2});
}

TEST_CASE("duality relation holds on random instances") {
  std::mt19937_64 rng(31);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)}) {
    for (int rep = 0; rep < 120; ++rep) {
      int n = 1 + static_cast<int>(rng() % 3);
      MorphismMatrix m = random_nonsingular_matrix(rng, o, n, 4);
      IsogenyData d = dual_and_alpha(m);
      CHECK(d.degree == degree(m));
      CHECK(mmul(d.dual, m) ==
            MorphismMatrix::scalar(o, n, OrderElement(o, d.alpha)));
      CHECK(mmul(m, d.dual) ==
            MorphismMatrix::scalar(o, n, OrderElement(o, d.alpha)));
      // |ker dual| * |ker m| = alpha^(2N)
      CHECK(d.degree * degree(d.dual) == pow_int(d.alpha, 2ul * n));
      Int prod = 1;
      for (const Int& z : d.kernel_divisors) prod *= z;
      CHECK(prod == d.degree);
    }
  }
}

TEST_CASE("kernel structure equals enumerated group structure") {
  std::mt19937_64 rng(32);
  for (const Order& o : {order_integers(), order_iq(1)}) {
    for (int rep = 0; rep < 60; ++rep) {
      int n = 1 + static_cast<int>(rng() % 2);
      MorphismMatrix m = random_nonsingular_matrix(rng, o, n, 3);
      if (degree(m) > 600) continue;
      auto ke = enumerate_kernel(m, Int(600));
      auto chain = kernel_structure(m);
      std::vector<Int> nontrivial;
      for (const Int& z : chain)
        if (z != 1) nontrivial.push_back(z);
      CHECK(nontrivial == ke.divisors);
      CHECK(Int(static_cast<long>(ke.points.size())) == degree(m));
    }
  }
}

TEST_CASE("preimage, image and pushforward degree bookkeeping") {
  // Preimage under [a] of a d-dim subvariety in a g-dim ambient picks up
  // a^(2(g-d)); the image divides out the stabilizer part of ker[a].
  CHECK(deg_preimage(3, 1, Int(2), Rat(5)) == Rat(80));  // 2^4 * 5
  CHECK(deg_preimage(2, 1, Int(-3), Rat(1)) == Rat(9));
  CHECK(deg_image(Int(2), 1, Int(4), Rat(5)) == Rat(5));  // 2^2 * 5 / 4
  CHECK(deg_image(Int(3), 2, Int(1), Rat(2)) == Rat(162));
  CHECK(pushforward_degree(Int(4), Rat(5)) == Rat(20));
  CHECK_THROWS_AS(deg_image(Int(2), 1, Int(0), Rat(1)), Error);
  // Round trip: pushing the image forward recovers the preimage count
  // pattern |ker| * deg = a^(2d) * deg_y.
  Rat img = deg_image(Int(5), 2, Int(25), Rat(3));
  CHECK(pushforward_degree(Int(25), img) == Rat(25 * 25 * 3));
}

TEST_CASE("stabilizer identities on frozen finite models") {
  Order zz = order_integers(), zi = order_iq(1);
  {
    FiniteModel m = make_model(zz, 1, 4);
    MorphismMatrix phi(zz, 1, 1);
    phi.at(0, 0) = oe(zz, 2);
    std::vector<Point> y = scalar_kernel(m, 2);
    REQUIRE(y.size() == 4);
    StabLemmaVerdict v = stab_lemma_checks(m, y, phi, 2);
    CHECK(v.i_applicable);
    CHECK(v.i_equal);
    CHECK(v.ii_applicable);
    CHECK(v.ii_lhs == 4);
    CHECK(v.ii_rhs == 4);
    CHECK(v.all_true());
  }
  {
    FiniteModel m = make_model(zi, 1, 4);
    MorphismMatrix phi(zi, 1, 1);
    phi.at(0, 0) = oe(zi, 1, 1);
    StabLemmaVerdict v = stab_lemma_checks(m, scalar_kernel(m, 2), phi, 2);
    CHECK(v.all_true());
    CHECK(v.alpha == 2);
  }
  {
    // Incompatible moduli are rejected: a must divide c and alpha must
    // divide a.
    FiniteModel m = make_model(zz, 1, 4);
    MorphismMatrix phi(zz, 1, 1);
    phi.at(0, 0) = oe(zz, 2);
    CHECK_THROWS_AS(stab_lemma_checks(m, scalar_kernel(m, 2), phi, 3), Error);
    CHECK_THROWS_AS(stab_lemma_checks(m, scalar_kernel(m, 2), phi, 1), Error);
  }
}
