#include <algorithm>
#include <random>

#include "doctest.h"

#include "abelic/errors.hpp"
#include "abelic/oracle.hpp"
#include "abelic/splitting.hpp"

using namespace abelic;

TEST_CASE("saturation: frozen examples and idempotence") {
  Order zz = order_integers(), zi = order_iq(1);
  {
    // (2,2)^T spans index 4 inside its saturation (1,1)^T.
    MorphismMatrix p(zz, 2, 1);
    p.at(0, 0) = oe(zz, 2);
    p.at(1, 0) = oe(zz, 2);
    SaturationResult sr = saturate(make_module(zz, 2, 1, p));
    CHECK(sr.module.saturated);
    CHECK(sr.connecting_degree == 4);
    CHECK(norm(det(sr.coeff)) == 4);
    CHECK(mmul(sr.module.generators, sr.coeff) == p);
    CHECK(sr.module.generators.at(0, 0) == sr.module.generators.at(1, 0));
    CHECK(is_unit(sr.module.generators.at(0, 0)));

    SaturationResult again = saturate(sr.module);
    CHECK(again.connecting_degree == 1);
    CHECK(again.module.generators == sr.module.generators);
    CHECK(is_saturated_module(sr.module));
    CHECK(!is_saturated_module(make_module(zz, 2, 1, p)));
  }
  {
    // (1+i, 2)^T saturates to the span of (1, 1-i) with index 2.
    MorphismMatrix p(zi, 2, 1);
    p.at(0, 0) = oe(zi, 1, 1);
    p.at(1, 0) = oe(zi, 2, 0);
    SaturationResult sr = saturate(make_module(zi, 2, 1, p));
    CHECK(sr.connecting_degree == 2);
    MorphismMatrix expect(zi, 1, 2);
    expect.at(0, 0) = oe(zi, 1, 0);
    expect.at(0, 1) = oe(zi, 1, -1);
    CHECK(hnf(transpose(sr.module.generators)).h == hnf(expect).h);
  }
  // Shape validation: rank must match and generators must be independent.
  MorphismMatrix bad(zz, 2, 2);
  bad.at(0, 0) = oe(zz, 1);
  bad.at(1, 0) = oe(zz, 1);
  CHECK_THROWS_AS(make_module(zz, 2, 2, bad), Error);
  CHECK_THROWS_AS(make_module(zz, 2, 2, MorphismMatrix(zz, 2, 1)), Error);
}

TEST_CASE("completion split: unimodular on saturated input") {
  Order zz = order_integers(), zi = order_iq(1);
  {
    MorphismMatrix p(zz, 2, 1);
    p.at(0, 0) = oe(zz, 1);
    p.at(1, 0) = oe(zz, 1);
    SubvarietySplit s =
        complement_and_split(saturate(make_module(zz, 2, 1, p)).module);
    CHECK(s.alpha == 1);
    CHECK(s.degree == 1);
    CHECK(s.top_block().at(0, 0) == oe(zz, 1));
    CHECK(s.top_block().at(0, 1) == oe(zz, -1));
    CHECK(s.bottom_block().at(0, 0) == oe(zz, 0));
    CHECK(s.bottom_block().at(0, 1) == oe(zz, 1));
  }
  {
    MorphismMatrix p(zi, 2, 1);
    p.at(0, 0) = oe(zi, 1, 0);
    p.at(1, 0) = oe(zi, 0, 1);
    SubvarietySplit s =
        complement_and_split(saturate(make_module(zi, 2, 1, p)).module);
    CHECK(s.alpha == 1);
    CHECK(is_unit(det(s.phi)));
    CHECK(mmul(s.top_block(), p).is_zero());
  }
}

TEST_CASE("hermitian split of the antidiagonal kernel") {
  Order zz = order_integers();
  MorphismMatrix p(zz, 2, 1);
  p.at(0, 0) = oe(zz, 1);
  p.at(1, 0) = oe(zz, -1);
  SubvarietyModule b = saturate(make_module(zz, 2, 1, p)).module;
  SubvarietySplit s = complement_and_split(b, ComplementStyle::hermitian);
  CHECK(s.degree == 4);
  CHECK(s.alpha == 2);
  CHECK(s.phi_hat == s.phi);  // self-dual up to the multiplier
  CHECK(s.phi.at(0, 0) == oe(zz, 1));
  CHECK(s.phi.at(0, 1) == oe(zz, 1));
  CHECK(s.phi.at(1, 0) == oe(zz, 1));
  CHECK(s.phi.at(1, 1) == oe(zz, -1));

  s = phi_family(normalize_t(s));
  CHECK(s.t == MorphismMatrix::identity(zz, 2));
  CHECK(s.t_norm_sq == 1);
  REQUIRE(s.family.size() == 2);
  CHECK(s.family[0].second.at(0, 0) == oe(zz, 1));
  CHECK(s.family[0].second.at(0, 1) == oe(zz, 1));
  CHECK(s.family[1].second.at(0, 0) == oe(zz, 1));
  CHECK(s.family[1].second.at(0, 1) == oe(zz, -1));
  CHECK(diagram_check(s).all_true());

  auto [pushed, bound] = push_degree_bound(s, Rat(1));
  CHECK(pushed == 4);
  CHECK(bound == 4);
}

TEST_CASE("normalizer search moves the split coherently") {
  Order zz = order_integers();
  // B = span(0,1): the completion split is the identity, whose top-right
  // minor vanishes, so a shear is required.
  MorphismMatrix p(zz, 2, 1);
  p.at(0, 0) = oe(zz, 0);
  p.at(1, 0) = oe(zz, 1);
  SubvarietySplit s =
      complement_and_split(saturate(make_module(zz, 2, 1, p)).module);
  CHECK(s.phi == MorphismMatrix::identity(zz, 2));

  SubvarietySplit ns = normalize_t(s);
  CHECK(ns.normalized);
  CHECK(!(ns.t == MorphismMatrix::identity(zz, 2)));
  // Lexicographically least success at depth 1.
  CHECK(ns.t.at(0, 0) == oe(zz, 1));
  CHECK(ns.t.at(0, 1) == oe(zz, -1));
  CHECK(ns.t.at(1, 0) == oe(zz, 0));
  CHECK(ns.t.at(1, 1) == oe(zz, 1));
  CHECK(ns.t_norm_sq == 4);
  CHECK(ns.alpha == s.alpha);
  CHECK(ns.degree == s.degree);
  // The tracked submodule moved with the normalizer.
  CHECK(mmul(ns.top_block(), ns.b.generators).is_zero());
  CHECK(diagram_check(phi_family(ns)).all_true());

  // An impossible budget reports the exhausted search.
  CHECK_THROWS_AS(normalize_t(s, 0), Error);
}

TEST_CASE("left factors preserve the split invariants") {
  Order zi = order_iq(1);
  std::mt19937_64 rng(61);
  MorphismMatrix p(zi, 3, 1);
  p.at(0, 0) = oe(zi, 1, 0);
  p.at(1, 0) = oe(zi, 1, 1);
  p.at(2, 0) = oe(zi, 0, 1);
  SubvarietySplit s =
      complement_and_split(saturate(make_module(zi, 3, 1, p)).module);
  MorphismMatrix v(zi, 3, 3);  // block lower triangular, nonsingular
  v.at(0, 0) = oe(zi, 1, 1);
  v.at(1, 0) = oe(zi, 2, 0);
  v.at(1, 1) = oe(zi, 1, 0);
  v.at(2, 0) = oe(zi, 0, 1);
  v.at(2, 1) = oe(zi, 1, 0);
  v.at(2, 2) = oe(zi, 2, 1);
  SubvarietySplit ls = apply_left_factor(s, v);
  CHECK(mmul(ls.top_block(), ls.b.generators).is_zero());
  CHECK(ls.degree == degree(ls.phi));
  CHECK(mmul(ls.phi_hat, ls.phi) ==
        MorphismMatrix::scalar(zi, 3, OrderElement(zi, ls.alpha)));
  (void)rng;
}

TEST_CASE("product assembly computes the worst multiplier") {
  Order zz = order_integers(), zi = order_iq(1);
  MorphismMatrix p1(zz, 2, 1);
  p1.at(0, 0) = oe(zz, 1);
  p1.at(1, 0) = oe(zz, -1);
  SubvarietySplit s1 = phi_family(normalize_t(
      complement_and_split(saturate(make_module(zz, 2, 1, p1)).module,
                           ComplementStyle::hermitian)));
  MorphismMatrix p2(zi, 3, 2);
  p2.at(0, 0) = oe(zi, 1);
  p2.at(1, 1) = oe(zi, 1);
  p2.at(2, 0) = oe(zi, 0, 1);
  p2.at(2, 1) = oe(zi, 1, 1);
  SubvarietySplit s2 = phi_family(normalize_t(
      complement_and_split(saturate(make_module(zi, 3, 2, p2)).module)));
  ProductStructure ps = product_assemble({s1, s2});
  CHECK(ps.index_size == 6);  // binom(2,1) * binom(3,2)
  Int c1 = s1.alpha * s1.alpha * binomial(1, 0);
  Int c2 = s2.alpha * s2.alpha * binomial(2, 1);
  CHECK(ps.global_alpha == std::max(c1, c2));
  CHECK_THROWS_AS(product_assemble({}), Error);
}

TEST_CASE("random splits keep every invariant") {
  std::mt19937_64 rng(11);
  int count = 0;
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)})
    for (int big = 2; big <= 4; ++big)
      for (int n = 1; n < big; ++n) {
        SubvarietySplit s = random_split(rng, o, big, n, 5);
        CHECK(diagram_check(s).all_true());
        CHECK(mmul(s.top_block(), s.b.generators).is_zero());
        CHECK(degree(s.phi) * degree(s.phi_hat) ==
              pow_int(s.alpha, 2ul * big));
        // Generator basis change leaves the verdicts alone.
        MorphismMatrix u = MorphismMatrix::identity(o, n);
        if (n > 1) u.at(0, n - 1) = oe(o, 2);
        SubvarietyModule b2 =
            make_module(o, big, n, mmul(s.b.generators, u), true);
        SubvarietySplit s2 = phi_family(normalize_t(complement_and_split(b2)));
        CHECK(diagram_check(s2).all_true());
        ++count;
      }
  CHECK(count == 18);
}
