#pragma once
#include <optional>
#include <vector>

#include "abelic/rational.hpp"

namespace abelic {

/*
 * Endomorphism orders of an elliptic curve: either Z, or the order of
 * conductor f in the imaginary quadratic field Q(sqrt(-d)), d squarefree.
 *
 * Elements are written a + b*omega on the Z-basis (1, omega) with
 *   omega = f*sqrt(-d)        if -d = 2,3 (mod 4)
 *   omega = f*(1+sqrt(-d))/2  if -d = 1 (mod 4)
 * so omega satisfies omega^2 = t*omega - n with
 *   t = 0, n = f^2*d          in the first case,
 *   t = f, n = f^2*(d+1)/4    in the second.
 * conj(a + b*omega) = (a + b*t) - b*omega and
 * norm(a + b*omega) = a^2 + a*b*t + b^2*n (positive definite).
 */

enum class OrderKind { Integers, ImagQuad };

struct Order {
  OrderKind kind = OrderKind::Integers;
  long d = 0;  // squarefree, >= 1 for ImagQuad
  long f = 1;  // conductor, >= 1

  bool operator==(const Order&) const = default;

  bool imaginary() const { return kind == OrderKind::ImagQuad; }
  // Norm-Euclidean: Z itself, or a maximal order with d in {1,2,3,7,11}.
  bool euclidean() const;
  Int omega_trace() const;  // t above
  Int omega_norm() const;   // n above
};

// Validates d squarefree, f >= 1. For Integers d/f are normalized away.
Order make_order(OrderKind kind, long d = 0, long f = 1);
Order order_integers();
Order order_iq(long d, long f = 1);

struct OrderElement {
  Order order;
  Int a, b;  // a + b*omega; b ignored (kept zero) over Z

  OrderElement() = default;
  OrderElement(const Order& o, Int a_, Int b_ = 0);

  bool operator==(const OrderElement&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

OrderElement oe(const Order& o, long a, long b = 0);

OrderElement add(const OrderElement& x, const OrderElement& y);
OrderElement sub(const OrderElement& x, const OrderElement& y);
OrderElement neg(const OrderElement& x);
OrderElement mul(const OrderElement& x, const OrderElement& y);
OrderElement conj(const OrderElement& x);
Int norm(const OrderElement& x);  // x * conj(x), >= 0, multiplicative
Int trace(const OrderElement& x);

bool is_unit(const OrderElement& x);
// All units of the order: {1,-1}, {1,-1,i,-i} for Z[i], six for Z[omega].
std::vector<OrderElement> units(const Order& o);

// The unit multiple with lexicographically greatest (a, b); makes HNF/SNF
// output deterministic (positive pivots over Z, 1+i rather than -1-i, ...).
OrderElement canonical_associate(const OrderElement& x);
// Same, also reporting the unit u with result = u*x.
std::pair<OrderElement, OrderElement> canonical_associate_with_unit(const OrderElement& x);

// Euclidean division x = q*y + r with norm(r) < norm(y).  Picks q among the
// four coefficient roundings of x*conj(y)/norm(y) minimizing norm(r)
// (covering radius < 1 for all five norm-Euclidean fields and for Z).
// Requires y != 0 and an euclidean() order.
std::pair<OrderElement, OrderElement> divmod(const OrderElement& x, const OrderElement& y);

// Exact quotient x/y when y | x, in any order (no Euclidean hypothesis).
std::optional<OrderElement> try_div(const OrderElement& x, const OrderElement& y);
bool divides(const OrderElement& y, const OrderElement& x);

// All elements with norm(x) <= bound, sorted by (norm, a, b); used by
// generators and exhaustive suites.
std::vector<OrderElement> elements_of_norm_up_to(const Order& o, long bound);

}  // namespace abelic
