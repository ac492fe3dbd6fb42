#include "abelic/order.hpp"

#include <algorithm>

#include "abelic/errors.hpp"

namespace abelic {

bool Order::euclidean() const {
  if (kind == OrderKind::Integers) return true;
  if (f != 1) return false;
  return d == 1 || d == 2 || d == 3 || d == 7 || d == 11;
}

Int Order::omega_trace() const {
  if (kind == OrderKind::Integers) return 0;
  return (d % 4 == 3) ? Int(f) : Int(0);
}

Int Order::omega_norm() const {
  if (kind == OrderKind::Integers) return 0;
  Int f2 = Int(f) * f;
  return (d % 4 == 3) ? f2 * ((d + 1) / 4) : f2 * d;
}

static bool squarefree(long d) {
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

Order make_order(OrderKind kind, long d, long f) {
  if (kind == OrderKind::Integers) return Order{OrderKind::Integers, 0, 1};
  if (d < 1 || !squarefree(d))
    fail(ErrorCode::NotSquarefree, "d must be squarefree and >= 1, got " + std::to_string(d));
  if (f < 1)
    fail(ErrorCode::BadConductor, "conductor must be >= 1, got " + std::to_string(f));
  return Order{OrderKind::ImagQuad, d, f};
}

Order order_integers() { return make_order(OrderKind::Integers); }
Order order_iq(long d, long f) { return make_order(OrderKind::ImagQuad, d, f); }

OrderElement::OrderElement(const Order& o, Int a_, Int b_)
    : order(o), a(std::move(a_)), b(std::move(b_)) {
  if (order.kind == OrderKind::Integers && b != 0)
    fail(ErrorCode::OrderMismatch, "rational integers have no omega part");
}

OrderElement oe(const Order& o, long a, long b) { return OrderElement(o, Int(a), Int(b)); }

static void check_same(const OrderElement& x, const OrderElement& y) {
  if (!(x.order == y.order))
    fail(ErrorCode::OrderMismatch, "elements of different orders");
}

OrderElement add(const OrderElement& x, const OrderElement& y) {
  check_same(x, y);
  return OrderElement(x.order, x.a + y.a, x.b + y.b);
}

OrderElement sub(const OrderElement& x, const OrderElement& y) {
  check_same(x, y);
  return OrderElement(x.order, x.a - y.a, x.b - y.b);
}

OrderElement neg(const OrderElement& x) { return OrderElement(x.order, -x.a, -x.b); }

OrderElement mul(const OrderElement& x, const OrderElement& y) {
  check_same(x, y);
  if (!x.order.imaginary()) return OrderElement(x.order, x.a * y.a, 0);
  // (a + b w)(c + e w) = ac - be*n + (ae + bc + be*t) w  since w^2 = t*w - n.
  Int t = x.order.omega_trace(), n = x.order.omega_norm();
  Int be = x.b * y.b;
  return OrderElement(x.order, x.a * y.a - be * n, x.a * y.b + x.b * y.a + be * t);
}

OrderElement conj(const OrderElement& x) {
  if (!x.order.imaginary()) return x;
  return OrderElement(x.order, x.a + x.b * x.order.omega_trace(), -x.b);
}

Int norm(const OrderElement& x) {
  if (!x.order.imaginary()) return x.a * x.a;
  Int t = x.order.omega_trace(), n = x.order.omega_norm();
  return x.a * x.a + x.a * x.b * t + x.b * x.b * n;
}

Int trace(const OrderElement& x) {
  if (!x.order.imaginary()) return 2 * x.a;
  return 2 * x.a + x.b * x.order.omega_trace();
}

bool is_unit(const OrderElement& x) { return norm(x) == 1; }

std::vector<OrderElement> units(const Order& o) {
  std::vector<OrderElement> us;
  us.push_back(oe(o, 1));
  us.push_back(oe(o, -1));
  if (o.imaginary() && o.f == 1) {
    if (o.d == 1) {  // Z[i]: +-i, with i = omega
      us.push_back(oe(o, 0, 1));
      us.push_back(oe(o, 0, -1));
    } else if (o.d == 3) {  // Z[omega]: six units, omega^2 = omega - 1
      us.push_back(oe(o, 0, 1));
      us.push_back(oe(o, 0, -1));
      us.push_back(oe(o, 1, -1));
      us.push_back(oe(o, -1, 1));
    }
  }
  return us;
}

std::pair<OrderElement, OrderElement> canonical_associate_with_unit(const OrderElement& x) {
  OrderElement best = x, best_u = oe(x.order, 1);
  for (const auto& u : units(x.order)) {
    OrderElement y = mul(u, x);
    if (y.a > best.a || (y.a == best.a && y.b > best.b)) {
      best = y;
      best_u = u;
    }
  }
  return {best, best_u};
}

OrderElement canonical_associate(const OrderElement& x) {
  return canonical_associate_with_unit(x).first;
}

std::pair<OrderElement, OrderElement> divmod(const OrderElement& x, const OrderElement& y) {
  check_same(x, y);
  if (y.is_zero()) fail(ErrorCode::SingularMatrix, "division by zero");
  if (!x.order.euclidean())
    fail(ErrorCode::NonEuclideanOrder, "euclidean division needs a norm-euclidean order");
  Int ny = norm(y);
  // x / y = x*conj(y) / norm(y); coefficients p/ny, q/ny.
  OrderElement xc = mul(x, conj(y));
  Int p = xc.a, q = xc.b;
  auto fdiv = [](const Int& u, const Int& v) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    return r;
  };
  Int pf = fdiv(p, ny), qf = fdiv(q, ny);
  OrderElement best_q = x, best_r = x;
  bool have = false;
  for (int da = 0; da <= 1; ++da) {
    for (int db = 0; db <= 1; ++db) {
      if (!x.order.imaginary() && db == 1) continue;
      OrderElement cand(x.order, pf + da, x.order.imaginary() ? qf + db : Int(0));
      OrderElement r = sub(x, mul(cand, y));
      if (!have || norm(r) < norm(best_r)) {
        best_q = cand;
        best_r = r;
        have = true;
      }
    }
  }
  // Norm-Euclidean fields have covering radius < 1, so this cannot fail.
  if (!(norm(best_r) < ny)) fail(ErrorCode::NonEuclideanOrder, "remainder not reduced");
  return {best_q, best_r};
}

std::optional<OrderElement> try_div(const OrderElement& x, const OrderElement& y) {
  check_same(x, y);
  if (y.is_zero()) return std::nullopt;
  Int ny = norm(y);
  OrderElement xc = mul(x, conj(y));
  if (xc.a % ny != 0 || xc.b % ny != 0) return std::nullopt;
  return OrderElement(x.order, xc.a / ny, x.order.imaginary() ? Int(xc.b / ny) : Int(0));
}

bool divides(const OrderElement& y, const OrderElement& x) {
  if (y.is_zero()) return x.is_zero();
  return try_div(x, y).has_value();
}

std::vector<OrderElement> elements_of_norm_up_to(const Order& o, long bound) {
  std::vector<OrderElement> out;
  if (bound < 0) return out;
  if (!o.imaginary()) {
    for (long a = 0; a * a <= bound; ++a) {
      out.push_back(oe(o, a));
      if (a > 0) out.push_back(oe(o, -a));
    }
  } else {
    // norm = a^2 + a b t + b^2 n >= (b^2)(n - t^2/4) bounds the b range.
    Int t = o.omega_trace(), n = o.omega_norm();
    Rat disc = Rat(n) - Rat(t * t) / 4;  // > 0
    long bmax = 0;
    while (Rat((bmax + 1)) * (bmax + 1) * disc <= bound) ++bmax;
    long sq = 0;
    while ((sq + 1) * (sq + 1) <= bound) ++sq;
    for (long b = -bmax; b <= bmax; ++b) {
      // norm <= bound forces (a + b t/2)^2 <= bound, so |a| <= |b t|/2 + sqrt(bound) + 1.
      long amax = sq + 1 + std::abs(b * t.get_si()) / 2 + 1;
      for (long a = -amax; a <= amax; ++a) {
        OrderElement x = oe(o, a, b);
        if (norm(x) <= bound) out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const OrderElement& x, const OrderElement& y) {
    Int nx = norm(x), ny = norm(y);
    if (nx != ny) return nx < ny;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return out;
}

}  // namespace abelic
