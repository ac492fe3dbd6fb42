#pragma once

#include <map>
#include <string>
#include <vector>

#include "abelic/bounds.hpp"
#include "abelic/rational.hpp"

namespace abelic {

/*
 * Machine-checked inequality ledgers for the proof chains behind the bound
 * evaluators.  Quantities are formal products of positive named symbols with
 * exponents affine in eta; identity steps are verified by exponent algebra
 * (and re-verifiable through a second, sample-based expander), inequality
 * steps by declared rules whose side conditions are checked exactly.
 */

// Exponent affine in eta: k0 + k1 * eta.
struct EtaAffine {
  Rat k0, k1;

  bool operator==(const EtaAffine&) const = default;
  Rat eval(const Rat& eta) const { return k0 + k1 * eta; }
};

// Formal product of positive named quantities: symbol -> exponent.  Zero
// exponents are never stored, so equal products compare equal.
using Monomial = std::map<std::string, EtaAffine>;

Monomial mono_mul(const Monomial& x, const Monomial& y);
// base^e for a product with plain rational exponents and an affine power.
Monomial mono_pow_affine(const std::map<std::string, Rat>& base,
                         const EtaAffine& e);
// Replace sym by the given product of base symbols, scaled by the exponent
// sym carried; used to rewrite derived symbols into a canonical base.
Monomial mono_substitute(const Monomial& m, const std::string& sym,
                         const std::map<std::string, Rat>& value);
bool mono_equal(const Monomial& x, const Monomial& y);
// Independent route: compare log-linear evaluations at deterministic
// per-symbol sample values over several rational eta samples.
bool mono_equal_sampled(const Monomial& x, const Monomial& y);

struct LedgerStep {
  std::string lhs, rhs;
  std::string rule;
  Monomial lhs_mono, rhs_mono;  // formal content when identity-checkable
  bool identity = false;        // verdict established by monomial equality
  bool proven = false;
};

struct LedgerTrace {
  std::vector<LedgerStep> steps;
  std::map<std::string, std::string> symbols;
  // Final exponents over the displayed numerator/denominator quantities, as
  // functions of eta and evaluated at the query's eta.
  EtaAffine numerator_form, denominator_form;
  Rat numerator_exponent, denominator_exponent;
  Rat rescaled_eta{0};  // symmetric-form eta choice (0 when not applicable)
  Int global_alpha{1};
  BoundResult absorption;  // enclosed numeric absorption constant
  std::vector<std::string> constant_factors;

  bool all_proven() const;
};

// Essential-minimum rewrite rules usable in traces, with their directions.
struct MuRule {
  std::string name;       // pullback-eq | power-eq | tensor-superadd
  std::string statement;  // instantiated formal statement
  std::string direction;  // "=" or ">="
};

MuRule mu_rule_pullback();
MuRule mu_rule_power(const Int& m);
MuRule mu_rule_tensor_superadd(int summands);

// Proof chain for the essential-minimum bound under an isogeny on a
// g-dimensional ambient with a d-dimensional subvariety: reproduces the
// kernel-cancellation exponent algebra and ends on exponents
// (1/(g-d) - 2(g-d)eta + eta, 1/(g-d) + eta) plus the eta-rescaling step
// that restores the symmetric form.
LedgerTrace isogeny_minimum_ledger(int g, int d, const Rat& eta);

// One factor of the product decomposition: the duality exponent alpha of its
// split, the per-index binomial weight, and the power on its index tuples.
struct LedgerFactor {
  Int alpha;
  Int binom;
  int n = 1;
};

// Proof chain composing per-factor isogeny bounds into the main bound:
// tensor superadditivity, root superadditivity with the binomial absorption
// constant, the three degree comparisons under the computed global alpha,
// and the final collected exponents (1/codim - eta, 1/codim + eta).
LedgerTrace composite_bound_ledger(int codim, const Rat& eta,
                                   const std::vector<LedgerFactor>& factors,
                                   const Rat& deg_h, const Rat& deg_y,
                                   long precision = 128);

}  // namespace abelic
