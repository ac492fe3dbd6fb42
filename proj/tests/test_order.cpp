#include <random>

#include "doctest.h"

#include "abelic/errors.hpp"
#include "abelic/order.hpp"

using namespace abelic;

TEST_CASE("order construction and validation") {
  Order zz = order_integers();
  CHECK(!zz.imaginary());
  CHECK(zz.euclidean());

  Order zi = order_iq(1);
  CHECK(zi.imaginary());
  CHECK(zi.omega_trace() == 0);
  CHECK(zi.omega_norm() == 1);
  CHECK(zi.euclidean());

  // -3 = 1 mod 4: half-integer basis, omega^2 = omega - 1.
  Order zw = order_iq(3);
  CHECK(zw.omega_trace() == 1);
  CHECK(zw.omega_norm() == 1);
  CHECK(zw.euclidean());

  // Conductor 2 in Q(sqrt(-3)): omega = 1 + sqrt(-3), trace 2, norm 4.
  Order z2w = order_iq(3, 2);
  CHECK(z2w.omega_trace() == 2);
  CHECK(z2w.omega_norm() == 4);
  CHECK(!z2w.euclidean());

  CHECK(order_iq(7).euclidean());
  CHECK(order_iq(11).euclidean());
  CHECK(!order_iq(5).euclidean());
  CHECK(!order_iq(1, 2).euclidean());

  CHECK_THROWS_AS(order_iq(4), Error);    // not squarefree
  CHECK_THROWS_AS(order_iq(12), Error);   // not squarefree
  CHECK_THROWS_AS(order_iq(0), Error);    // d >= 1
  CHECK_THROWS_AS(order_iq(1, 0), Error); // conductor >= 1
}

TEST_CASE("element arithmetic matches the defining relation") {
  Order zw = order_iq(3);
  OrderElement w = oe(zw, 0, 1);
  // omega^2 = t*omega - n = omega - 1
  CHECK(mul(w, w) == oe(zw, -1, 1));
  CHECK(norm(oe(zw, 2, 1)) == 7);
  CHECK(trace(oe(zw, 2, 1)) == 5);  // 2a + b*t
  CHECK(conj(oe(zw, 2, 1)) == oe(zw, 3, -1));

  Order zi = order_iq(1);
  OrderElement i = oe(zi, 0, 1);
  CHECK(mul(i, i) == oe(zi, -1, 0));
  CHECK(norm(oe(zi, 1, 1)) == 2);
  CHECK(conj(oe(zi, 1, 1)) == oe(zi, 1, -1));
}

TEST_CASE("norm is multiplicative and positive definite") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-50, 50);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3),
                         order_iq(2), order_iq(7, 3)}) {
    for (int rep = 0; rep < 2000; ++rep) {
      OrderElement x = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
      OrderElement y = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
      CHECK(norm(mul(x, y)) == norm(x) * norm(y));
      CHECK(norm(x) >= 0);
      CHECK((norm(x) == 0) == x.is_zero());
      // x * conj(x) lands on the rational line at the norm.
      OrderElement nx = mul(x, conj(x));
      CHECK(nx == OrderElement(o, norm(x)));
      CHECK(trace(x) == trace(conj(x)));
    }
  }
}

TEST_CASE("units and canonical associates") {
  CHECK(units(order_integers()).size() == 2);
  CHECK(units(order_iq(1)).size() == 4);
  CHECK(units(order_iq(3)).size() == 6);
  CHECK(units(order_iq(2)).size() == 2);
  CHECK(units(order_iq(1, 2)).size() == 2);  // conductor kills i
  CHECK(units(order_iq(3, 2)).size() == 2);

  Order zi = order_iq(1);
  // Associates of -1-i are {1+i, -1+i, 1-i, -1-i}; lex-greatest (a, b) wins.
  CHECK(canonical_associate(oe(zi, -1, -1)) == oe(zi, 1, 1));
  CHECK(canonical_associate(oe(zi, 0, 1)) == oe(zi, 1, 0));
  CHECK(canonical_associate(oe(order_integers(), -7)) ==
        oe(order_integers(), 7));

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)}) {
    for (int rep = 0; rep < 500; ++rep) {
      OrderElement x = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
      auto [c, u] = canonical_associate_with_unit(x);
      CHECK(is_unit(u));
      CHECK(mul(u, x) == c);
      // Idempotent, and invariant across the unit orbit.
      CHECK(canonical_associate(c) == c);
      for (const OrderElement& v : units(o))
        CHECK(canonical_associate(mul(v, x)) == c);
    }
  }
}

TEST_CASE("euclidean division leaves a smaller remainder") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> coeff(-40, 40);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(2),
                         order_iq(3), order_iq(7), order_iq(11)}) {
    for (int rep = 0; rep < 800; ++rep) {
      OrderElement x = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
      OrderElement y = oe(o, coeff(rng), o.imaginary() ? coeff(rng) : 0);
      if (y.is_zero()) continue;
      auto [q, r] = divmod(x, y);
      CHECK(add(mul(q, y), r) == x);
      CHECK(norm(r) < norm(y));
    }
  }
  Order z5 = order_iq(5);
  CHECK_THROWS_AS(divmod(oe(z5, 7, 1), oe(z5, 2, 0)), Error);
}

TEST_CASE("exact division works in any order") {
  Order z5 = order_iq(5);
  OrderElement x = oe(z5, 2, 3), y = oe(z5, 1, 1);
  OrderElement p = mul(x, y);
  auto q = try_div(p, y);
  REQUIRE(q.has_value());
  CHECK(*q == x);
  CHECK(divides(y, p));
  CHECK(!divides(oe(z5, 2, 0), oe(z5, 1, 0)));
  CHECK(!try_div(oe(z5, 1, 0), oe(z5, 2, 0)).has_value());
}

TEST_CASE("norm balls are sorted and complete") {
  auto ints = elements_of_norm_up_to(order_integers(), 4);
  REQUIRE(ints.size() == 5);  // 0, +-1, +-2
  CHECK(ints.front().is_zero());

  // Z[i], norm <= 2: 0, four units, four elements 1+i up to units.
  auto gauss = elements_of_norm_up_to(order_iq(1), 2);
  CHECK(gauss.size() == 9);
  // Z[omega], norm <= 1: 0 and the six units.
  auto eis = elements_of_norm_up_to(order_iq(3), 1);
  CHECK(eis.size() == 7);

  for (const Order& o : {order_integers(), order_iq(1), order_iq(3)}) {
    auto ball = elements_of_norm_up_to(o, 5);
    for (size_t k = 0; k < ball.size(); ++k) {
      CHECK(norm(ball[k]) <= 5);
      if (k > 0) {
        auto a = std::tuple(norm(ball[k - 1]), ball[k - 1].a, ball[k - 1].b);
        auto b = std::tuple(norm(ball[k]), ball[k].a, ball[k].b);
        CHECK(a < b);
      }
    }
  }
}
