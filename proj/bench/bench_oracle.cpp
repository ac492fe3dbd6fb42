// Benchmark for the two enumeration kernels that have parallel twins: the
// stabilizer scan over a finite model and the kernel-point scan of a
// matrix.  Each case runs the serial reference and the OpenMP variant on
// the same input, insists the results are bit-identical, and reports both
// times.  Run with `abelic_bench [reps]`; reps defaults to 3 and the best
// time per route is reported.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "abelic/model.hpp"
#include "abelic/oracle.hpp"
#include "abelic/order.hpp"

using namespace abelic;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_s();
    body();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

std::string label(const Order& o) {
  if (!o.imaginary()) return "Z";
  std::string s = "Q(sqrt-" + std::to_string(o.d) + ")";
  if (o.f != 1) s += " f=" + std::to_string(o.f);
  return s;
}

void report(const std::string& name, std::uint64_t work, double serial_s, double parallel_s) {
  std::printf("%-34s %12llu items  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx\n",
              name.c_str(), static_cast<unsigned long long>(work), serial_s * 1e3,
              parallel_s * 1e3, parallel_s > 0 ? serial_s / parallel_s : 0.0);
}

// Stabilizer of the a-torsion subgroup inside a model large enough that
// the quadratic candidate scan dominates.
void bench_stab(const Order& o, int n, long c, long a, int reps) {
  FiniteModel m = make_model(o, n, c);
  std::vector<Point> y = scalar_kernel(m, a);

  std::vector<Point> serial_out, parallel_out;
  double ts = best_of(reps, [&] { serial_out = finite_stab(m, y); });
  double tp = best_of(reps, [&] { parallel_out = finite_stab_parallel(m, y); });

  if (serial_out != parallel_out) {
    std::fprintf(stderr, "bench_stab: serial and parallel stabilizers differ\n");
    std::exit(1);
  }
  report("stab " + label(o) + " c=" + std::to_string(c) + " |Y|=" + std::to_string(y.size()),
         static_cast<std::uint64_t>(y.size()) * y.size(), ts, tp);
}

// Kernel points of a fixed matrix by the exhaustive alpha-model scan,
// serial vs parallel, with the lattice route as a second reference.
void bench_kernel(const MorphismMatrix& m, int reps) {
  Int cap = Int(1) << 30;
  KernelEnumeration serial_out, parallel_out, lattice_out;
  double ts = best_of(reps, [&] { serial_out = enumerate_kernel_scan(m, cap, false); });
  double tp = best_of(reps, [&] { parallel_out = enumerate_kernel_scan(m, cap, true); });
  double tl = best_of(reps, [&] { lattice_out = enumerate_kernel_lattice(m, cap); });

  if (serial_out.points != parallel_out.points ||
      serial_out.divisors != parallel_out.divisors) {
    std::fprintf(stderr, "bench_kernel: serial and parallel scans differ\n");
    std::exit(1);
  }
  if (serial_out.points != lattice_out.points ||
      serial_out.divisors != lattice_out.divisors) {
    std::fprintf(stderr, "bench_kernel: scan and lattice routes differ\n");
    std::exit(1);
  }

  // Scanned volume: alpha^(2n) candidate points.
  std::uint64_t volume = 1;
  unsigned long alpha = serial_out.alpha.get_ui();
  for (int i = 0; i < 2 * m.rows; ++i) volume *= alpha;

  report("kernel " + label(m.order) + " alpha=" + std::to_string(alpha) +
             " pts=" + std::to_string(serial_out.points.size()),
         volume, ts, tp);
  std::printf("%-34s %12s        lattice %8.3f ms\n", "", "", tl * 1e3);
}

MorphismMatrix mat2(const Order& o, const OrderElement& a, const OrderElement& b,
                    const OrderElement& c, const OrderElement& d) {
  MorphismMatrix m(o, 2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  if (argc > 1) reps = std::max(1, std::atoi(argv[1]));
#ifdef _OPENMP
  std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);
#else
  std::printf("threads: 1 (no OpenMP), reps: %d\n", reps);
#endif

  Order z = order_integers();
  Order zi = order_iq(1);

  bench_stab(z, 2, 30, 10, reps);
  bench_stab(zi, 2, 24, 8, reps);
  bench_stab(zi, 1, 512, 64, reps);

  bench_kernel(mat2(z, oe(z, 7), oe(z, 2), oe(z, 2), oe(z, 7)), reps);
  bench_kernel(mat2(zi, oe(zi, 3, 2), oe(zi, 1), oe(zi, 1), oe(zi, 3, -2)), reps);
  return 0;
}
