#include "abelic/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "abelic/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace abelic {

Int lattice_index(const MorphismMatrix& m) {
  if (m.rows != m.cols) fail(ErrorCode::SizeMismatch, "lattice index of a non-square matrix");
  Int d = bareiss_det(regular_rep(m));
  if (d == 0) fail(ErrorCode::SingularMatrix, "lattice index of a singular matrix");
  return abs(d);
}

std::string describe_matrix(const MorphismMatrix& m) {
  std::string s = m.order.imaginary()
                      ? "iq(d=" + std::to_string(m.order.d) + ",f=" + std::to_string(m.order.f) + ")"
                      : "Z";
  s += " " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + " [";
  for (int i = 0; i < m.rows; ++i) {
    s += i ? ";[" : "[";
    for (int j = 0; j < m.cols; ++j) {
      if (j) s += ",";
      s += "(" + to_string(m.at(i, j).a) + "," + to_string(m.at(i, j).b) + ")";
    }
    s += "]";
  }
  return s + "]";
}

std::vector<Int> group_structure_of_points(const std::vector<std::vector<long>>& pts,
                                           const Int& modulus, int dim) {
  if (modulus < 1) fail(ErrorCode::ModulusIncompatible, "modulus must be >= 1");
  ZMat st(static_cast<int>(pts.size()) + dim, dim);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(pts[i].size()) != dim)
      fail(ErrorCode::SizeMismatch, "point has the wrong number of coordinates");
    for (int j = 0; j < dim; ++j) st.at(static_cast<int>(i), j) = pts[i][j];
  }
  for (int j = 0; j < dim; ++j) st.at(static_cast<int>(pts.size()) + j, j) = modulus;
  // Divisors e_k of Z^dim over the lifted span; the group is the span over
  // modulus*Z^dim, so its chain is modulus/e_k read back to front.
  std::vector<Int> e = zsnf_divisors(st);
  std::vector<Int> out;
  for (int k = dim - 1; k >= 0; --k) {
    if (e[k] == 0 || modulus % e[k] != 0)
      fail(ErrorCode::ModulusIncompatible, "points do not live in the stated torsion group");
    Int g = modulus / e[k];
    if (g > 1) out.push_back(g);
  }
  return out;
}

// Shared head of the kernel enumerators: cap check and search modulus.
struct KernelSetup {
  Int degree;
  Int alpha;
  MorphismMatrix dual;
};
static KernelSetup kernel_setup(const MorphismMatrix& m, const Int& cap) {
  Int deg = lattice_index(m);
  if (deg > cap) fail(ErrorCode::CapExceeded, "kernel larger than the cap: " + to_string(deg));
  IsogenyData iso = dual_and_alpha(m);
  return {deg, iso.alpha, iso.dual};
}

static const std::uint64_t kScanBudget = std::uint64_t(1) << 22;

KernelEnumeration enumerate_kernel_scan(const MorphismMatrix& m, const Int& cap, bool parallel) {
  KernelSetup setup = kernel_setup(m, cap);
  int d = 2 * m.rows;
  if (d > 16) fail(ErrorCode::CapExceeded, "too many coordinates for the scan route");
  Int space = pow_int(setup.alpha, static_cast<unsigned long>(d));
  if (space > Int(static_cast<unsigned long>(kScanBudget)))
    fail(ErrorCode::CapExceeded, "search space too large for the scan route");
  long al = setup.alpha.get_si();
  std::uint64_t s = space.get_ui();

  std::vector<long> rmod(static_cast<size_t>(d) * d);
  {
    ZMat r = regular_rep(m);
    Int c(al);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Int v;
        mpz_fdiv_r(v.get_mpz_t(), r.at(i, j).get_mpz_t(), c.get_mpz_t());
        rmod[static_cast<size_t>(i) * d + j] = v.get_si();
      }
  }

  auto scan_block = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hits) {
    long x[16];
    std::uint64_t p = lo;
    for (int i = 0; i < d; ++i) {
      x[i] = static_cast<long>(p % static_cast<std::uint64_t>(al));
      p /= static_cast<std::uint64_t>(al);
    }
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      bool zero = true;
      for (int i = 0; i < d && zero; ++i) {
        long acc = 0;
        const long* row = &rmod[static_cast<size_t>(i) * d];
        for (int j = 0; j < d; ++j) acc += row[j] * x[j];
        if (acc % al != 0) zero = false;
      }
      if (zero) hits.push_back(idx);
      for (int i = 0; i < d; ++i) {  // odometer step
        if (++x[i] < al) break;
        x[i] = 0;
      }
    }
  };

  std::vector<std::uint64_t> hits;
#ifdef _OPENMP
  if (parallel) {
    int nt = omp_get_max_threads();
    std::vector<std::vector<std::uint64_t>> parts(nt);
#pragma omp parallel num_threads(nt)
    {
      int t = omp_get_thread_num();
      std::uint64_t lo = s * t / nt, hi = s * (t + 1) / nt;
      scan_block(lo, hi, parts[t]);
    }
    for (auto& p : parts) hits.insert(hits.end(), p.begin(), p.end());
  } else {
    scan_block(0, s, hits);
  }
#else
  (void)parallel;
  scan_block(0, s, hits);
#endif

  KernelEnumeration out;
  out.alpha = setup.alpha;
  out.points.reserve(hits.size());
  for (std::uint64_t idx : hits) {
    std::vector<long> coords(d);
    std::uint64_t p = idx;
    for (int i = 0; i < d; ++i) {
      coords[i] = static_cast<long>(p % static_cast<std::uint64_t>(al));
      p /= static_cast<std::uint64_t>(al);
    }
    out.points.push_back(std::move(coords));
  }
  std::sort(out.points.begin(), out.points.end());
  if (Int(static_cast<unsigned long>(out.points.size())) != setup.degree)
    fail(ErrorCode::SingularMatrix, "kernel scan count disagrees with the lattice index");
  out.divisors = group_structure_of_points(out.points, setup.alpha, d);
  return out;
}

KernelEnumeration enumerate_kernel_lattice(const MorphismMatrix& m, const Int& cap) {
  KernelSetup setup = kernel_setup(m, cap);
  if (!setup.alpha.fits_slong_p())
    fail(ErrorCode::CapExceeded, "search modulus does not fit a machine word");
  long al = setup.alpha.get_si();
  int d = 2 * m.rows;
  ZMat r = regular_rep(m);

  // Solutions of R v = 0 mod alpha: v-parts of the kernel of [R | -alpha I].
  ZMat stacked(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) stacked.at(i, j) = r.at(i, j);
    stacked.at(i, d + i) = -setup.alpha;
  }
  ZMat full = zright_kernel(stacked);
  if (full.rows != d) fail(ErrorCode::SingularMatrix, "kernel lattice has the wrong rank");
  ZMat basis(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) basis.at(i, j) = full.at(i, j);

  // Quotient of Z^d by the relation lattice alpha * basis^{-1}.
  Order zz = order_integers();
  MorphismMatrix zb(zz, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) zb.at(i, j) = OrderElement(zz, basis.at(i, j));
  ZMat x(d, d);
  {
    MorphismMatrix xo = scale_to_integral(kinverse(to_kmat(zb)), setup.alpha);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x.at(i, j) = xo.at(i, j).a;
  }
  ZMat h = zhnf(x).h;
  Int count(1);
  for (int i = 0; i < d; ++i) count *= h.at(i, i);
  if (count != setup.degree)
    fail(ErrorCode::SingularMatrix, "kernel lattice volume disagrees with the lattice index");

  KernelEnumeration out;
  out.alpha = setup.alpha;
  std::vector<Int> t(d, 0);
  std::vector<long> coords(d);
  while (true) {
    for (int j = 0; j < d; ++j) {
      Int v(0);
      for (int i = 0; i < d; ++i) v += t[i] * basis.at(i, j);
      Int rmod_v;
      Int am(al);
      mpz_fdiv_r(rmod_v.get_mpz_t(), v.get_mpz_t(), am.get_mpz_t());
      coords[j] = rmod_v.get_si();
    }
    // Defensive re-verification against the raw congruence.
    for (int i = 0; i < d; ++i) {
      Int acc(0);
      for (int j = 0; j < d; ++j) acc += r.at(i, j) * coords[j];
      if (acc % al != 0)
        fail(ErrorCode::SingularMatrix, "enumerated point fails the kernel congruence");
    }
    out.points.push_back(coords);
    int i = 0;
    for (; i < d; ++i) {
      if (++t[i] < h.at(i, i)) break;
      t[i] = 0;
    }
    if (i == d) break;
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  if (Int(static_cast<unsigned long>(out.points.size())) != setup.degree)
    fail(ErrorCode::SingularMatrix, "kernel lattice enumeration produced duplicates");
  // Independent structure route: the Smith chain of the relation lattice.
  std::vector<Int> chain = zsnf_divisors(x);
  for (const Int& g : chain)
    if (g > 1) out.divisors.push_back(g);
  return out;
}

KernelEnumeration enumerate_kernel(const MorphismMatrix& m, const Int& cap) {
  Int deg = lattice_index(m);
  if (deg > cap) fail(ErrorCode::CapExceeded, "kernel larger than the cap: " + to_string(deg));
  IsogenyData iso = dual_and_alpha(m);
  Int space = pow_int(iso.alpha, static_cast<unsigned long>(2 * m.rows));
  if (2 * m.rows <= 16 && space <= Int(static_cast<unsigned long>(kScanBudget)))
    return enumerate_kernel_scan(m, cap, true);
  return enumerate_kernel_lattice(m, cap);
}

MorphismMatrix random_nonsingular_matrix(std::mt19937_64& rng, const Order& o, int n,
                                         long norm_bound) {
  std::vector<OrderElement> pool = elements_of_norm_up_to(o, norm_bound);
  for (int tries = 0; tries < 10000; ++tries) {
    MorphismMatrix m(o, n, n);
    for (auto& entry : m.e) entry = pool[rng() % pool.size()];
    if (!det(m).is_zero()) return m;
  }
  fail(ErrorCode::SearchBudgetExceeded, "could not draw a nonsingular matrix");
}

// --- exhaustive stabilizer sweep ----------------------------------------

namespace {

struct PhiData {
  MorphismMatrix matrix;
  Int alpha;
  MorphismMatrix dual;
};

// All nonsingular matrices with entries from the pool, in odometer order.
std::vector<PhiData> enumerate_endomorphisms(const Order& o, int n, long norm_bound) {
  std::vector<OrderElement> pool = elements_of_norm_up_to(o, norm_bound);
  std::vector<PhiData> out;
  std::vector<size_t> pick(static_cast<size_t>(n) * n, 0);
  while (true) {
    MorphismMatrix m(o, n, n);
    for (size_t k = 0; k < pick.size(); ++k) m.e[k] = pool[pick[k]];
    if (!det(m).is_zero()) {
      IsogenyData iso = dual_and_alpha(m);
      out.push_back({m, iso.alpha, iso.dual});
    }
    size_t k = 0;
    for (; k < pick.size(); ++k) {
      if (++pick[k] < pool.size()) break;
      pick[k] = 0;
    }
    if (k == pick.size()) break;
  }
  return out;
}

// Deterministic cap: keep everything when it fits; otherwise prefer the
// matrices with a nontrivial multiplier (the interesting duals), topped up
// with unimodular ones, preserving enumeration order inside each class.
std::vector<PhiData> cap_endomorphisms(std::vector<PhiData> phis, int cap) {
  if (cap <= 0 || static_cast<int>(phis.size()) <= cap) return phis;
  std::vector<PhiData> out;
  for (const auto& p : phis)
    if (p.alpha > 1 && static_cast<int>(out.size()) < cap) out.push_back(p);
  for (const auto& p : phis)
    if (p.alpha == 1 && static_cast<int>(out.size()) < cap) out.push_back(p);
  return out;
}

std::string stab_witness(const FiniteModel& model, const MorphismMatrix& phi, long a,
                         size_t subgroup_index, const std::string& what) {
  return describe_matrix(phi) + " modulus=" + std::to_string(model.c) +
         " a=" + std::to_string(a) + " subgroup#" + std::to_string(subgroup_index) + ": " + what;
}

}  // namespace

StabSuiteReport stab_exhaustive_suite(const StabSuiteOptions& opt) {
  StabSuiteReport rep;
  for (const Order& o : opt.orders) {
    for (int n = 1; n <= opt.max_n; ++n) {
      std::vector<PhiData> all_phis = enumerate_endomorphisms(o, n, opt.entry_norm_bound);
      std::vector<PhiData> phis = n == 1 ? all_phis : cap_endomorphisms(all_phis, opt.phi_cap);
      for (long c : opt.moduli) {
        FiniteModel model = make_model(o, n, c);
        ++rep.models;
        std::uint64_t size = model.size();
        std::vector<std::vector<Point>> subgroups = subgroups_of_model(model);

        // Flattened element list of every subgroup.  The model cap keeps
        // points below 2^26, so 32-bit indices are lossless and the hot
        // sweeps below stream one compact array.
        std::vector<std::uint32_t> flat;
        std::vector<std::size_t> flat_off(subgroups.size() + 1, 0);
        for (size_t hi = 0; hi < subgroups.size(); ++hi) {
          for (Point p : subgroups[hi]) flat.push_back(static_cast<std::uint32_t>(p));
          flat_off[hi + 1] = flat.size();
        }

        // Torsion kernels for every admissible level.
        std::vector<long> levels;
        for (long a = 1; a <= c; ++a)
          if (c % a == 0) levels.push_back(a);
        std::vector<std::vector<char>> ker_level(levels.size(), std::vector<char>(size, 0));
        for (size_t li = 0; li < levels.size(); ++li)
          for (Point p : scalar_kernel(model, levels[li])) ker_level[li][p] = 1;

        // The one-coset API rescans the model on every call, so it gets a
        // fixed per-model budget of (endomorphism, level) pairs, spread
        // evenly over the enumeration.  The sweep itself covers every pair.
        long api_stride = 0;
        if (opt.api_pair_budget > 0) {
          long pair_estimate =
              static_cast<long>(phis.size()) * static_cast<long>(levels.size());
          api_stride = std::max(1L, pair_estimate / opt.api_pair_budget);
        }
        long pair_index = 0;

        for (const PhiData& phi : phis) {
          if (!phi.alpha.fits_slong_p()) continue;
          long al = phi.alpha.get_si();
          std::vector<long> valid;
          for (long a : levels)
            if (a % al == 0) valid.push_back(a);
          if (valid.empty()) continue;

          EndoAction f = endo_action(model, phi.matrix);
          std::vector<Point> img(size);
          std::vector<std::uint32_t> fiber_f(size, 0);
          std::vector<char> in_im_f(size, 0), in_ker_f(size, 0);
          for (Point p = 0; p < size; ++p) {
            img[p] = apply_endo(f, p);
            ++fiber_f[img[p]];
            in_im_f[img[p]] = 1;
          }
          std::uint64_t ker_f_size = fiber_f[0];
          std::uint64_t im_f_size = 0;
          for (Point p = 0; p < size; ++p)
            if (in_im_f[p]) ++im_f_size;
          for (Point p = 0; p < size; ++p)
            if (img[p] == 0) in_ker_f[p] = 1;

          // Per-subgroup sums that depend on the endomorphism alone,
          // hoisted out of the per-level loop.  Every sum is at most the
          // model size (< 2^26) and every product below of two such counts
          // is < 2^52, so 64-bit accumulators are exact.
          std::vector<std::uint64_t> sub_pre(subgroups.size());
          std::vector<std::uint64_t> sub_im_f(subgroups.size());
          std::vector<std::uint64_t> sub_ker_f(subgroups.size());
          for (size_t hi = 0; hi < subgroups.size(); ++hi) {
            std::uint64_t pre = 0, imf = 0, kerf = 0;
            for (size_t k = flat_off[hi]; k < flat_off[hi + 1]; ++k) {
              std::uint32_t h = flat[k];
              pre += fiber_f[h];
              imf += in_im_f[h];
              kerf += in_ker_f[h];
            }
            sub_pre[hi] = pre;
            sub_im_f[hi] = imf;
            sub_ker_f[hi] = kerf;
          }

          for (long a : valid) {
            ++rep.endomorphisms;
            size_t level_index =
                static_cast<size_t>(std::find(levels.begin(), levels.end(), a) - levels.begin());
            const std::vector<char>& in_ker_a = ker_level[level_index];
            MorphismMatrix mhat = scalar_mul(oe(o, a / al), phi.dual);
            EndoAction g = endo_action(model, mhat);
            std::vector<Point> imgh(size);
            std::vector<char> in_im_g(size, 0);
            std::vector<std::uint32_t> cnt_ha(size, 0);
            std::uint64_t ker_g_size = 0, im_g_size = 0;
            for (Point p = 0; p < size; ++p) {
              imgh[p] = apply_endo(g, p);
              in_im_g[imgh[p]] = 1;
              if (imgh[p] == 0) ++ker_g_size;
              if (in_ker_a[p]) ++cnt_ha[imgh[p]];
            }
            for (Point p = 0; p < size; ++p)
              if (in_im_g[p]) ++im_g_size;

            for (size_t hi = 0; hi < subgroups.size(); ++hi) {
              ++rep.subgroups;
              std::uint64_t s = subgroups[hi].size();
              std::uint64_t im_meet_g = 0, lhs_ii = 0;
              for (size_t k = flat_off[hi]; k < flat_off[hi + 1]; ++k) {
                std::uint32_t h = flat[k];
                im_meet_g += in_im_g[h];
                lhs_ii += cnt_ha[h];
              }
              std::uint64_t pre_h = sub_pre[hi];
              std::uint64_t im_meet_f = sub_im_f[hi];
              std::uint64_t ker_meet_f = sub_ker_f[hi];
              // Part (i): with nonempty preimage both sides are the full
              // preimage of the subgroup, so the numerical content is the
              // fiber-counting identity |f^{-1}(H)| = |ker f| * |H meet im f|.
              if (pre_h != ker_f_size * im_meet_f)
                rep.failures.push_back(
                    {"stab-i", stab_witness(model, phi.matrix, a, hi, "preimage count mismatch")});
              // Part (ii): one equality settles every coset with nonempty
              // preimage, because both sides are coset-independent.
              std::uint64_t rhs_ii = ker_g_size * ker_meet_f;
              if (lhs_ii != rhs_ii)
                rep.failures.push_back(
                    {"stab-ii", stab_witness(model, phi.matrix, a, hi,
                                             "torsion stabilizer count " + std::to_string(lhs_ii) +
                                                 " != " + std::to_string(rhs_ii))});
              // Applicability bookkeeping: these indices must divide exactly.
              if (im_meet_f == 0 || im_f_size % im_meet_f != 0 || im_meet_g == 0 ||
                  im_g_size % im_meet_g != 0)
                rep.failures.push_back(
                    {"stab-count", stab_witness(model, phi.matrix, a, hi,
                                                "image/subgroup intersection is not a subgroup")});
              rep.cosets += static_cast<long>(size / s);
            }

            // Spot checks through the one-coset API, on subgroups small
            // enough for the quadratic stabilizer scan.
            bool api_turn = api_stride > 0 && pair_index % api_stride == 0;
            ++pair_index;
            std::vector<size_t> samples;
            if (api_turn && !subgroups.empty() && opt.api_subgroup_samples > 0) {
              for (int k = 0; k < opt.api_subgroup_samples; ++k)
                samples.push_back(k * (subgroups.size() - 1) /
                                  std::max(1, opt.api_subgroup_samples - 1) %
                                  subgroups.size());
              std::sort(samples.begin(), samples.end());
              samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
            }
            for (size_t hi : samples) {
              const std::vector<Point>& sub = subgroups[hi];
              if (sub.size() * sub.size() > 70000) continue;
              std::vector<std::vector<Point>> cosets_to_try;
              cosets_to_try.push_back(sub);  // the subgroup itself: always applicable
              Point other = 0;
              bool found = false;
              for (Point p = 0; p < size && !found; ++p) {
                if (std::binary_search(sub.begin(), sub.end(), p)) continue;
                if (in_im_f[p]) { other = p; found = true; }
              }
              if (found) {
                std::vector<Point> coset(sub.size());
                for (size_t k = 0; k < sub.size(); ++k) coset[k] = add_points(model, sub[k], other);
                std::sort(coset.begin(), coset.end());
                cosets_to_try.push_back(std::move(coset));
              }
              for (const auto& y : cosets_to_try) {
                StabLemmaVerdict v = stab_lemma_checks(model, y, phi.matrix, a);
                ++rep.api_calls;
                if (!v.all_true())
                  rep.failures.push_back(
                      {"stab-api", stab_witness(model, phi.matrix, a, hi, "one-coset verdict false")});
              }
            }
          }
        }

        // Tiny models: run the one-coset API on every coset of every
        // subgroup, for pairs drawn on the same per-model budget.
        if (size <= opt.api_max_points && api_stride > 0) {
          long tiny_index = 0;
          for (const PhiData& phi : phis) {
            if (!phi.alpha.fits_slong_p()) continue;
            long al = phi.alpha.get_si();
            for (long a : levels) {
              if (a % al != 0) continue;
              if (tiny_index++ % api_stride != 0) continue;
              for (size_t hi = 0; hi < subgroups.size(); ++hi) {
                const std::vector<Point>& sub = subgroups[hi];
                for (Point rep_pt : coset_representatives(model, sub)) {
                  std::vector<Point> y(sub.size());
                  for (size_t k = 0; k < sub.size(); ++k)
                    y[k] = add_points(model, sub[k], rep_pt);
                  std::sort(y.begin(), y.end());
                  StabLemmaVerdict v = stab_lemma_checks(model, y, phi.matrix, a);
                  ++rep.api_calls;
                  if (!v.all_true())
                    rep.failures.push_back({"stab-api",
                                            stab_witness(model, phi.matrix, a, hi,
                                                         "exhaustive coset verdict false")});
                }
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

CrossCheckReport cross_check(const CrossCheckScope& scope) {
  CrossCheckReport rep;
  std::mt19937_64 rng(scope.seed);
  long fault_countdown = scope.inject_fault;
  if ((scope.run_degrees || scope.run_kernels) && scope.matrices > 0) {
    for (const Order& o : scope.orders) {
      for (int i = 0; i < scope.matrices; ++i) {
        int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(scope.max_n));
        MorphismMatrix m = random_nonsingular_matrix(rng, o, n, scope.entry_norm_bound);
        Int reference = lattice_index(m);
        if (scope.run_degrees) {
          ++rep.degree_checks;
          Int degree_reference = reference;
          if (scope.inject_fault > 0 && --fault_countdown == 0)
            degree_reference = -degree_reference;
          if (degree(m) != degree_reference)
            rep.failures.push_back({"degree", describe_matrix(m) + ": fast path " +
                                                  to_string(degree(m)) + " != reference " +
                                                  to_string(degree_reference)});
        }
        if (scope.run_kernels && reference <= scope.kernel_cap) {
          ++rep.kernel_checks;
          KernelEnumeration ke = enumerate_kernel(m, scope.kernel_cap);
          bool bad = Int(static_cast<unsigned long>(ke.points.size())) != reference;
          std::vector<Int> chain = kernel_structure(m);
          std::vector<Int> nontrivial;
          for (const Int& g : chain)
            if (g > 1) nontrivial.push_back(g);
          if (ke.divisors != nontrivial) bad = true;
          if (group_structure_of_points(ke.points, ke.alpha, 2 * m.rows) != nontrivial) bad = true;
          Int space = pow_int(ke.alpha, static_cast<unsigned long>(2 * m.rows));
          if (2 * m.rows <= 16 && space <= Int(static_cast<unsigned long>(kScanBudget))) {
            KernelEnumeration serial = enumerate_kernel_scan(m, scope.kernel_cap, false);
            KernelEnumeration lattice = enumerate_kernel_lattice(m, scope.kernel_cap);
            if (serial.points != ke.points || lattice.points != ke.points) bad = true;
          }
          if (bad)
            rep.failures.push_back({"kernel", describe_matrix(m) + ": kernel routes disagree"});
        }
      }
    }
  }
  if (scope.run_stab && (!scope.orders.empty() || !scope.stab.orders.empty())) {
    StabSuiteOptions so = scope.stab;
    if (so.orders.empty()) so.orders = scope.orders;
    StabSuiteReport sr = stab_exhaustive_suite(so);
    rep.stab_checks = sr.subgroups + sr.api_calls;
    for (auto& f : sr.failures) rep.failures.push_back(std::move(f));
  }
  return rep;
}

}  // namespace abelic
