#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abelic/rational.hpp"

namespace abelic {

/*
 * Exact evaluation of the lower-bound formulas.  Every result is a rational
 * enclosure: the true real value is guaranteed to lie between the endpoints,
 * roots are taken with integer-root directed rounding, and the logarithm is
 * outward-rounded at the caller's working precision.  When the combined
 * exponent simplifies to a rational the endpoints coincide and the result is
 * flagged exact.
 */

struct BoundResult {
  Rat lower, upper;
  bool exact = false;  // endpoints coincide; no outward rounding happened
  // Set by main_bound when 1/codim - eta <= 0: the bound stops growing with
  // the numerator degree (still computed, but worth surfacing).
  bool numerator_exponent_nonpositive = false;
};

struct BoundQuery {
  Rat deg_h{1}, deg_y{1};
  int codim = 1;
  Rat eta;
  Rat constant_c{1};
  int dim_b = 1;  // ambient dimension entering the log-power exponent
  Rat omega{1};   // caller-supplied obstruction degree
  Rat c0{1};      // caller-supplied leading constant
};

// Enclosure of c * prod base_i^exp_i for positive rational bases and
// rational exponents; exact whenever the combined radical is rational.
BoundResult power_product(const Rat& c,
                          const std::vector<std::pair<Rat, Rat>>& powers,
                          long precision);

// (5 * dim_b * (1 + codim))^(1 + codim), exactly.
Int galateau_lambda(int dim_b, int codim);

// c0/omega * (ln(3 * deg_y))^(-lambda) with the logarithm outward-rounded.
BoundResult galateau_bound(const Rat& c0, const Rat& omega, const Rat& deg_y,
                           const Int& lambda, long precision);

// c * deg_y^(-1/codim - eta).
BoundResult effective_bogomolov(const Rat& c, const Rat& deg_y, int codim,
                                const Rat& eta, long precision);

// c * deg_h^(1/codim - eta) * deg_y^(-1/codim - eta).
BoundResult main_bound(const BoundQuery& q, long precision);

// Same shape on pulled-back degrees:
// c * deg_pullback_b^(1/codim - eta) * deg_pullback_y^(-1/codim - eta).
BoundResult isogeny_bound(const Rat& deg_pullback_b, const Rat& deg_pullback_y,
                          int codim, const Rat& eta, const Rat& c,
                          long precision);

// The translate reduction: theta is the subgroup-case bound with constant
// c1, and a quarter of it survives the translation argument.  The height
// rule it leans on is recorded formally, never evaluated on points.
struct TranslatedBound {
  BoundResult theta, quarter;
  std::string height_rule;
};

TranslatedBound translate_theta(const Rat& c1, const Rat& deg_b,
                                const Rat& deg_y, int codim, const Rat& eta,
                                long precision);

}  // namespace abelic
