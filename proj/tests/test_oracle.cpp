#include <random>

#include "doctest.h"

#include "abelic/errors.hpp"
#include "abelic/oracle.hpp"

using namespace abelic;

TEST_CASE("lattice index on frozen matrices") {
  Order zz = order_integers(), zi = order_iq(1);
  CHECK(lattice_index(MorphismMatrix::identity(zz, 3)) == 1);
  MorphismMatrix m(zz, 2, 2);
  m.at(0, 0) = oe(zz, 1);
  m.at(0, 1) = oe(zz, 1);
  m.at(1, 0) = oe(zz, 1);
  m.at(1, 1) = oe(zz, -1);
  CHECK(lattice_index(m) == 4);
  MorphismMatrix g(zi, 1, 1);
  g.at(0, 0) = oe(zi, 1, 1);
  CHECK(lattice_index(g) == 2);
}

TEST_CASE("kernel enumeration routes agree") {
  Order zz = order_integers(), zi = order_iq(1), zw = order_iq(3);
  {
    MorphismMatrix m(zz, 2, 2);
    m.at(0, 0) = oe(zz, 1);
    m.at(0, 1) = oe(zz, 1);
    m.at(1, 0) = oe(zz, 1);
    m.at(1, 1) = oe(zz, -1);
    auto ke = enumerate_kernel(m, Int(100));
    REQUIRE(ke.points.size() == 4);
    CHECK(ke.divisors == std::vector<Int>{2, 2});
    auto ser = enumerate_kernel_scan(m, Int(100), false);
    auto par = enumerate_kernel_scan(m, Int(100), true);
    auto lat = enumerate_kernel_lattice(m, Int(100));
    CHECK(ser.points == ke.points);
    CHECK(par.points == ke.points);
    CHECK(lat.points == ke.points);
    CHECK(lat.divisors == ke.divisors);
    CHECK(group_structure_of_points(ke.points, ke.alpha, 4) == ke.divisors);
  }
  {
    MorphismMatrix m(zi, 1, 1);
    m.at(0, 0) = oe(zi, 1, 1);
    auto ke = enumerate_kernel(m, Int(10));
    CHECK(ke.points.size() == 2);
    CHECK(ke.divisors == std::vector<Int>{2});
  }
  {
    // Unimodular matrices have trivial kernels and alpha 1.
    MorphismMatrix u(zw, 2, 2);
    u.at(0, 0) = oe(zw, 1);
    u.at(0, 1) = oe(zw, 0, 1);
    u.at(1, 1) = oe(zw, 1);
    auto ke = enumerate_kernel(u, Int(10));
    CHECK(ke.points.size() == 1);
    CHECK(ke.divisors.empty());
    CHECK(ke.alpha == 1);
  }
  {
    MorphismMatrix m(zz, 1, 1);
    m.at(0, 0) = oe(zz, 40);  // degree 1600 over the cap
    CHECK_THROWS_AS(enumerate_kernel(m, Int(100)), Error);
  }
}

TEST_CASE("random kernel cross-section over all orders") {
  std::mt19937_64 rng(51);
  for (const Order& o : {order_integers(), order_iq(1), order_iq(3),
                         order_iq(2), order_iq(1, 2)}) {
    for (int rep = 0; rep < 25; ++rep) {
      int n = 1 + static_cast<int>(rng() % 2);
      MorphismMatrix m = random_nonsingular_matrix(rng, o, n, 3);
      Int deg = lattice_index(m);
      if (deg > 400) continue;
      auto ke = enumerate_kernel(m, Int(400));
      CHECK(Int(static_cast<long>(ke.points.size())) == deg);
      CHECK(group_structure_of_points(ke.points, ke.alpha, 2 * n) ==
            ke.divisors);
      auto scan = enumerate_kernel_scan(m, Int(400), true);
      CHECK(scan.points == ke.points);
    }
  }
}

TEST_CASE("random matrix generation is deterministic and nonsingular") {
  Order zi = order_iq(1);
  std::mt19937_64 a(77), b(77);
  for (int rep = 0; rep < 50; ++rep) {
    MorphismMatrix ma = random_nonsingular_matrix(a, zi, 2, 5);
    MorphismMatrix mb = random_nonsingular_matrix(b, zi, 2, 5);
    CHECK(ma == mb);
    CHECK(lattice_index(ma) > 0);
    for (const OrderElement& x : ma.e) CHECK(norm(x) <= 5);
  }
}

TEST_CASE("exhaustive stabilizer suite, one curve factor") {
  StabSuiteOptions opt;
  opt.orders = {order_integers(), order_iq(1)};
  opt.max_n = 1;
  opt.moduli = {2, 3, 4};
  StabSuiteReport r = stab_exhaustive_suite(opt);
  CHECK(r.ok());
  CHECK(r.models == 6);
  CHECK(r.endomorphisms > 0);
  CHECK(r.subgroups > 0);
  CHECK(r.cosets > 0);
  CHECK(r.api_calls > 0);
}

TEST_CASE("cross-check: clean run, fault injection, empty scope") {
  CrossCheckScope scope;
  scope.orders = {order_integers(), order_iq(1), order_iq(3)};
  scope.matrices = 30;
  scope.max_n = 2;
  scope.entry_norm_bound = 3;
  scope.kernel_cap = 2000;
  scope.stab.max_n = 1;
  scope.stab.moduli = {2, 3};
  scope.seed = 7;
  CrossCheckReport r = cross_check(scope);
  CHECK(r.ok());
  CHECK(r.degree_checks == 90);
  CHECK(r.kernel_checks > 0);
  CHECK(r.stab_checks > 0);

  // A flipped reference determinant must surface as exactly one failure.
  scope.run_stab = false;
  scope.inject_fault = 17;
  CrossCheckReport rf = cross_check(scope);
  REQUIRE(rf.failures.size() == 1);
  CHECK(rf.failures[0].suite == "degree");
  CHECK(!rf.failures[0].witness.empty());

  CrossCheckReport empty = cross_check(CrossCheckScope{});
  CHECK(empty.degree_checks == 0);
  CHECK(empty.kernel_checks == 0);
  CHECK(empty.stab_checks == 0);
  CHECK(empty.ok());
}

TEST_CASE("cross-check runs are reproducible for a fixed seed") {
  CrossCheckScope scope;
  scope.orders = {order_iq(1)};
  scope.matrices = 20;
  scope.max_n = 2;
  scope.kernel_cap = 500;
  scope.run_stab = false;
  scope.seed = 99;
  CrossCheckReport a = cross_check(scope);
  CrossCheckReport b = cross_check(scope);
  CHECK(a.degree_checks == b.degree_checks);
  CHECK(a.kernel_checks == b.kernel_checks);
  CHECK(a.failures.size() == b.failures.size());
}
