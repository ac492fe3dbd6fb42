#pragma once
#include <cstdint>
#include <vector>

#include "abelic/matrix.hpp"

namespace abelic {

/*
 * Finite torsion models.  The c-torsion of the N-th power of a curve with
 * endomorphism order O is (O/cO)^N, which in (1, omega)-coordinates is the
 * plain group (Z/c)^(2N); an order matrix acts through its regular
 * representation reduced mod c.  Points are mixed-radix indices (base c,
 * 2N digits, least significant digit first), so point lists sort into one
 * canonical order.
 *
 * Everything here is exhaustive by design: this module is the brute-force
 * side of every cross-check, so it must stay simple enough to be obviously
 * correct.  The only concession to speed is a parallel twin of the
 * stabilizer scan, which must return bit-identical results.
 */

using Point = std::uint64_t;

struct FiniteModel {
  Order order;
  int n = 1;   // ambient power (number of curve factors)
  long c = 1;  // torsion level, >= 1

  int dim() const { return 2 * n; }
  std::uint64_t size() const;  // c^(2n)
};

// Validates n >= 1, c >= 1 and caps the group size so exhaustive scans
// stay affordable (CapExceeded beyond 2^26 points).
FiniteModel make_model(const Order& o, int n, long c);

std::vector<long> point_coords(const FiniteModel& m, Point p);
Point point_index(const FiniteModel& m, const std::vector<long>& coords);
Point add_points(const FiniteModel& m, Point x, Point y);
Point sub_points(const FiniteModel& m, Point x, Point y);

// The reduced regular representation: a 2n x 2n residue grid applied to
// coordinate vectors mod c.
struct EndoAction {
  FiniteModel model;
  std::vector<long> r;  // row-major, entries in [0, c)
};
EndoAction endo_action(const FiniteModel& m, const MorphismMatrix& a);
Point apply_endo(const EndoAction& f, Point p);

// { p : f(p) = 0 }, sorted; exhaustive scan over the whole model.
std::vector<Point> kernel_points(const EndoAction& f);
// { p : a*p = 0 }, sorted, computed coordinatewise (no scan).
std::vector<Point> scalar_kernel(const FiniteModel& m, long a);

// Stabilizer { t : t + Y = Y } of a nonempty subset; always a subgroup,
// and exactly G when Y is a coset of G.  The parallel twin returns the
// same sorted list.
std::vector<Point> finite_stab(const FiniteModel& m, const std::vector<Point>& y);
std::vector<Point> finite_stab_parallel(const FiniteModel& m, const std::vector<Point>& y);

// All subgroups of the model group, each a sorted point list.  Subgroups
// of (Z/q)^m for each prime power q dividing c are enumerated through
// Hermite normal forms of the lattices between q*Z^m and Z^m (unique per
// subgroup, so no deduplication), then glued across prime powers.
std::vector<std::vector<Point>> subgroups_of_model(const FiniteModel& m);

// One representative per coset of the subgroup, sorted by representative.
std::vector<Point> coset_representatives(const FiniteModel& m,
                                         const std::vector<Point>& subgroup);

}  // namespace abelic
