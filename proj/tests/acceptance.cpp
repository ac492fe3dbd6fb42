// Acceptance gate: nine numbered criteria, one verdict line each.  Every
// criterion states what was actually measured — counts, times, budgets —
// so a failure is diagnosable from the line alone and a pass cannot hide
// a silently reduced workload.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abelic/bounds.hpp"
#include "abelic/errors.hpp"
#include "abelic/isogeny.hpp"
#include "abelic/ledger.hpp"
#include "abelic/oracle.hpp"
#include "abelic/polarization.hpp"
#include "abelic/splitting.hpp"

using namespace abelic;

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

int passed = 0;
int total = 0;

void verdict(int criterion, bool ok, const std::string& detail) {
  ++total;
  if (ok) ++passed;
  std::printf("criterion %d: %s  %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int raw = pclose(p);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

// 1. Random splits across three coefficient rings and all interior ranks
//    must verify the full equivalence verdict, inside a 10 s budget.
void criterion_1() {
  const long long budget_ms = 10000;
  std::mt19937_64 rng(2024);
  Order orders[] = {order_integers(), order_iq(1, 1), order_iq(3, 1)};
  auto t0 = Clock::now();
  int count = 0, good = 0;
  for (const Order& o : orders)
    for (int big = 2; big <= 4; ++big)
      for (int small = 1; small < big; ++small)
        for (int rep = 0; rep < 6; ++rep) {
          SubvarietySplit s = random_split(rng, o, big, small, 5);
          ++count;
          if (verify_equivalence(s).all_true()) ++good;
        }
  long long ms = ms_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "(%d/%d random splits verified in %lld ms, budget %lld ms)",
                good, count, ms, budget_ms);
  verdict(1, good == count && count >= 100 && ms < budget_ms, buf);
}

// 2. The restriction-product identity on every power/rank pair up to 4,
//    100 row systems per pair over two rings, plus 20 runs per pair with
//    random reference classes; exact equality inside 30 s.
void criterion_2() {
  const long long budget_ms = 30000;
  std::mt19937_64 rng(4048);
  Order orders[] = {order_integers(), order_iq(1, 1)};
  auto t0 = Clock::now();
  int count = 0, good = 0;
  for (const Order& o : orders)
    for (int big = 2; big <= 4; ++big)
      for (int n = 1; n < big; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
          MorphismMatrix rows = random_nonsingular_matrix(rng, o, big, 3);
          std::vector<HermitianClass> ref(
              static_cast<size_t>(big - n), HermitianClass::identity(o, big));
          ++count;
          if (verify_intersection_split(rows, n, ref).equal) ++good;
        }
        for (int rep = 0; rep < 20; ++rep) {
          MorphismMatrix rows = random_nonsingular_matrix(rng, o, big, 3);
          std::vector<HermitianClass> ref;
          for (int k = 0; k < big - n; ++k)
            ref.push_back(
                pullback_class(HermitianClass::identity(o, big),
                               random_nonsingular_matrix(rng, o, big, 2)));
          ++count;
          if (verify_intersection_split(rows, n, ref).equal) ++good;
        }
      }
  long long ms = ms_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "(%d/%d identity + random-reference systems exact in %lld ms, "
                "budget %lld ms)",
                good, count, ms, budget_ms);
  verdict(2, good == count && ms < budget_ms, buf);
}

// 3 and 4 share their instances: 500 random nonsingular endomorphisms per
// ring on powers up to 3, entries of norm at most 5.  Criterion 3: the
// ring-determinant degree equals the lattice index and, whenever the
// degree is at most 10^4, the enumerated kernel has that many points with
// matching invariant divisors (60 s budget).  Criterion 4: the dual
// composes to the scalar and degrees multiply to its 2N-th power.
void criteria_3_and_4() {
  const long long budget_ms = 60000;
  const Int cap(10000);
  std::mt19937_64 rng(6072);
  Order orders[] = {order_integers(), order_iq(1, 1), order_iq(3, 1)};
  auto t0 = Clock::now();
  int count = 0, good3 = 0, good4 = 0, enumerated = 0;
  for (const Order& o : orders)
    for (int rep = 0; rep < 500; ++rep) {
      int n = 1 + static_cast<int>(rng() % 3);
      MorphismMatrix m = random_nonsingular_matrix(rng, o, n, 5);
      IsogenyData d = dual_and_alpha(m);
      ++count;

      bool ok3 = d.degree == lattice_index(m);
      if (ok3 && d.degree <= cap) {
        ++enumerated;
        KernelEnumeration k = enumerate_kernel(m, cap);
        std::vector<Int> expected;
        for (const Int& z : d.kernel_divisors)
          if (z != 1) expected.push_back(z);
        ok3 = Int(static_cast<unsigned long>(k.points.size())) == d.degree &&
              k.divisors == expected;
      }
      good3 += ok3;

      Int scalar_power = pow_int(d.alpha, static_cast<unsigned long>(2 * n));
      bool ok4 = mmul(d.dual, m) ==
                     MorphismMatrix::scalar(o, n, OrderElement(o, d.alpha)) &&
                 d.degree * degree(d.dual) == scalar_power;
      good4 += ok4;
    }
  long long ms = ms_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "(%d/%d degree/lattice/kernel agreements, %d kernels "
                "enumerated, %lld ms, budget %lld ms)",
                good3, count, enumerated, ms, budget_ms);
  verdict(3, good3 == count && ms < budget_ms, buf);
  std::snprintf(buf, sizeof buf,
                "(%d/%d dual-composition and degree-product identities)",
                good4, count);
  verdict(4, good4 == count, buf);
}

// 5. Exhaustive finite-model stabilizer sweep: moduli {2,3,4,6}, powers up
//    to 2, both rings, every subgroup (each equality settles all of its
//    cosets, which are counted), every endomorphism with entries of norm
//    at most 2 and every compatible torsion level; 2 minute budget.  The
//    sweep runs in model-sized chunks so a blown budget is reported with
//    the honest partial coverage instead of hanging the gate.
void criterion_5() {
  const long long budget_ms = 120000;
  auto t0 = Clock::now();
  StabSuiteReport sum;
  bool complete = true;
  Order orders[] = {order_integers(), order_iq(1, 1)};
  for (const Order& o : orders)
    for (long c : {2L, 3L, 4L, 6L}) {
      if (ms_since(t0) > budget_ms) {
        complete = false;
        break;
      }
      StabSuiteOptions so;
      so.orders = {o};
      so.moduli = {c};
      so.max_n = 2;
      so.entry_norm_bound = 2;
      so.phi_cap = 0;  // every endomorphism, no sampling
      StabSuiteReport rep = stab_exhaustive_suite(so);
      sum.models += rep.models;
      sum.endomorphisms += rep.endomorphisms;
      sum.subgroups += rep.subgroups;
      sum.cosets += rep.cosets;
      sum.api_calls += rep.api_calls;
      for (auto& f : rep.failures) sum.failures.push_back(std::move(f));
    }
  long long ms = ms_since(t0);
  char buf[240];
  std::snprintf(
      buf, sizeof buf,
      "(%s: %ld models, %ld endomorphism/level pairs, %ld subgroup checks "
      "covering %ld cosets, %ld api spot calls, %zu failures, %lld ms, "
      "budget %lld ms)",
      complete ? "complete" : "partial — budget exhausted", sum.models,
      sum.endomorphisms, sum.subgroups, sum.cosets, sum.api_calls,
      sum.failures.size(), ms, budget_ms);
  verdict(5, complete && sum.ok() && ms < budget_ms, buf);
}

// 6. Exact bound arithmetic: the closed-form log exponents, the frozen
//    exact value of the main bound, and outward-rounded enclosures that
//    contain a 256-bit reference and shrink as precision grows.
void criterion_6() {
  bool ok = galateau_lambda(1, 1) == 100 && galateau_lambda(1, 2) == 3375;

  BoundQuery q;
  q.constant_c = Rat(1);
  q.deg_h = Rat(8);
  q.deg_y = Rat(2);
  q.codim = 1;
  q.eta = Rat(1, 2);
  BoundResult m = main_bound(q, 128);
  ok = ok && m.exact && m.lower == 1 && m.upper == 1;

  auto contains = [](const BoundResult& outer, const BoundResult& inner) {
    return outer.lower <= inner.lower && inner.upper <= outer.upper;
  };
  BoundResult r64 = power_product(Rat(1), {{Rat(2), Rat(-4, 3)}}, 64);
  BoundResult r128 = power_product(Rat(1), {{Rat(2), Rat(-4, 3)}}, 128);
  BoundResult ref = power_product(Rat(1), {{Rat(2), Rat(-4, 3)}}, 256);
  ok = ok && contains(r64, ref) && contains(r128, ref) &&
       contains(r64, r128) &&
       (r128.upper - r128.lower) <= (r64.upper - r64.lower);

  BoundResult g96 = galateau_bound(Rat(1), Rat(2), Rat(1), Int(100), 96);
  BoundResult g192 = galateau_bound(Rat(1), Rat(2), Rat(1), Int(100), 192);
  BoundResult g384 = galateau_bound(Rat(1), Rat(2), Rat(1), Int(100), 384);
  ok = ok && contains(g96, g192) && contains(g192, g384) &&
       (g384.upper - g384.lower) <= (g192.upper - g192.lower) &&
       (g192.upper - g192.lower) <= (g96.upper - g96.lower) && g384.lower > 0;

  verdict(6, ok,
          "(closed-form exponents, frozen exact main bound, nested shrinking "
          "enclosures around the 256-bit reference)");
}

// 7. The step-by-step derivation traces: frozen final exponents, every
//    identity step re-verified by the independent sampled expander, and
//    the composite trace with one trivial factor reproducing the
//    single-isogeny trace verbatim.
void criterion_7() {
  LedgerTrace tr = isogeny_minimum_ledger(2, 1, Rat(1, 10));
  bool ok = tr.all_proven() && tr.steps.size() == 9 &&
            tr.numerator_exponent == Rat(9, 10) &&
            tr.denominator_exponent == Rat(11, 10);
  int identities = 0;
  for (const auto& s : tr.steps)
    if (s.identity) {
      ++identities;
      ok = ok && mono_equal_sampled(s.lhs_mono, s.rhs_mono);
    }
  ok = ok && identities > 0;

  LedgerTrace co = composite_bound_ledger(1, Rat(1, 10), {{Int(1), Int(1), 1}},
                                          Rat(1), Rat(1), 128);
  ok = ok && co.all_proven() && co.global_alpha == 1 && co.absorption.exact &&
       co.absorption.lower == 1 &&
       co.numerator_form == tr.numerator_form &&
       co.denominator_form == tr.denominator_form &&
       co.numerator_exponent == tr.numerator_exponent &&
       co.denominator_exponent == tr.denominator_exponent;
  for (const auto& s : co.steps)
    if (s.identity) ok = ok && mono_equal_sampled(s.lhs_mono, s.rhs_mono);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "(%d identity steps re-verified by sampling; composite trace "
                "with a trivial factor collapses to the single trace)",
                identities);
  verdict(7, ok, buf);
}

// 8. Class calculus laws, 1000 random instances each: pullback
//    composition, scalar maps acting by their square (degree by the
//    2n-th power), and degree multiplicativity under pullback.
void criterion_8() {
  std::mt19937_64 rng(8096);
  Order orders[] = {order_integers(), order_iq(1, 1), order_iq(3, 1)};
  int comp = 0, scal = 0, mult = 0;
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    const Order& o = orders[rep % 3];
    int n = 1 + static_cast<int>(rng() % 3);
    HermitianClass h = pullback_class(HermitianClass::identity(o, n),
                                      random_nonsingular_matrix(rng, o, n, 2));
    MorphismMatrix f = random_nonsingular_matrix(rng, o, n, 2);
    MorphismMatrix g = random_nonsingular_matrix(rng, o, n, 2);

    if (pullback_class(pullback_class(h, f), g) == pullback_class(h, mmul(f, g)))
      ++comp;

    long a = 2 + static_cast<long>(rng() % 3);
    MorphismMatrix sa = MorphismMatrix::scalar(o, n, oe(o, a));
    if (pullback_class(h, sa) == scale_class(h, Rat(a * a)) &&
        degree_of_class(pullback_class(h, sa), n) ==
            pow_rat(Rat(a), 2L * n) * degree_of_class(h, n))
      ++scal;

    if (degree_of_class(pullback_class(h, f), n) ==
        Rat(degree(f)) * degree_of_class(h, n))
      ++mult;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "(%d/%d compositions, %d/%d scalar actions, %d/%d degree "
                "multiplicativity)",
                comp, reps, scal, reps, mult, reps);
  verdict(8, comp == reps && scal == reps && mult == reps, buf);
}

// 9. The command-line surface reproduces every golden document byte for
//    byte, twice in a row.
void criterion_9(const std::string& cli, const std::string& golden) {
  struct Case {
    const char* stem;
    const char* subcommand;
  };
  const std::vector<Case> cases{
      {"order", "order"},
      {"deg", "deg"},
      {"dual", "dual"},
      {"kernel", "kernel"},
      {"split", "split"},
      {"verify_equivalence", "verify-equivalence"},
      {"verify_gael", "verify-gael"},
      {"bound", "bound"},
      {"ledger", "ledger"},
      {"oracle", "oracle"},
  };
  int good = 0;
  for (const Case& c : cases) {
    std::string want = read_file(golden + "/out_" + c.stem + ".json");
    std::string cmd = cli + " " + c.subcommand + " --input " + golden +
                      "/in_" + c.stem + ".json 2>/dev/null";
    int s1 = -1, s2 = -1;
    std::string first = run_capture(cmd, s1);
    std::string second = run_capture(cmd, s2);
    if (s1 == 0 && s2 == 0 && !want.empty() && first == want &&
        second == want)
      ++good;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "(%d/%zu golden documents byte-identical across two runs)",
                good, cases.size());
  verdict(9, good == static_cast<int>(cases.size()), buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <golden-dir>\n", argv[0]);
    return 2;
  }
  criterion_1();
  criterion_2();
  criteria_3_and_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argv[1], argv[2]);
  std::printf("acceptance: %d/%d criteria pass\n", passed, total);
  return passed == total ? 0 : 1;
}
