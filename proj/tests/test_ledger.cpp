#include "doctest.h"

#include <vector>

#include "abelic/bounds.hpp"
#include "abelic/errors.hpp"
#include "abelic/ledger.hpp"

using namespace abelic;

namespace {

template <typename F>
bool throws_code(ErrorCode c, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == c;
  }
  return false;
}

}  // namespace

TEST_CASE("monomial engine: powers, cancellation, substitution, sampling") {
  Monomial x = mono_pow_affine({{"a", Rat(2)}, {"b", Rat(-1)}},
                               EtaAffine{Rat(1, 2), Rat(1)});
  // (a^2 b^-1)^(1/2 + eta) = a^(1+2eta) * b^(-1/2-eta)
  CHECK(x.at("a") == (EtaAffine{Rat(1), Rat(2)}));
  CHECK(x.at("b") == (EtaAffine{Rat(-1, 2), Rat(-1)}));

  Monomial y = mono_mul(
      x, mono_pow_affine({{"a", Rat(1)}}, EtaAffine{Rat(-1), Rat(-2)}));
  CHECK(y.find("a") == y.end());

  Monomial b_only =
      mono_pow_affine({{"b", Rat(1)}}, EtaAffine{Rat(-1, 2), Rat(-1)});
  CHECK(mono_equal(y, b_only));
  CHECK(mono_equal_sampled(y, b_only));

  Monomial z = mono_substitute(y, "b", {{"c", Rat(2)}, {"d", Rat(1)}});
  CHECK(z.at("c") == (EtaAffine{Rat(-1), Rat(-2)}));
  CHECK(z.at("d") == (EtaAffine{Rat(-1, 2), Rat(-1)}));
  CHECK(!mono_equal_sampled(z, y));
}

TEST_CASE("rewrite rules carry their declared directions") {
  CHECK(mu_rule_pullback().direction == "=");
  CHECK(mu_rule_power(Int(3)).direction == "=");
  CHECK(mu_rule_tensor_superadd(4).direction == ">=");
}

TEST_CASE("isogeny minimum trace: frozen exponents, every step re-verified") {
  auto tr = isogeny_minimum_ledger(2, 1, Rat(1, 10));
  CHECK(tr.all_proven());
  CHECK(tr.numerator_exponent == Rat(9, 10));
  CHECK(tr.denominator_exponent == Rat(11, 10));
  CHECK(tr.numerator_form == (EtaAffine{Rat(1), Rat(-1)}));
  CHECK(tr.denominator_form == (EtaAffine{Rat(1), Rat(1)}));
  CHECK(tr.rescaled_eta == Rat(1, 10));
  CHECK(tr.steps.size() == 9);
  CHECK(!tr.symbols.empty());
  CHECK(!tr.constant_factors.empty());

  // every identity step must survive the independent sampled expander,
  // not just the verdict stored while the trace was built
  for (const auto& s : tr.steps)
    if (s.identity) {
      CHECK(s.proven);
      CHECK(mono_equal_sampled(s.lhs_mono, s.rhs_mono));
    }
}

TEST_CASE("isogeny minimum trace rescales the exponent gap correctly") {
  auto tr = isogeny_minimum_ledger(3, 1, Rat(1, 12));
  CHECK(tr.all_proven());
  // 2(g-d) = 4: numerator s - (2(g-d)-1)*eta = 1/2 - 3/12 = 1/4
  CHECK(tr.numerator_exponent == Rat(1, 4));
  CHECK(tr.rescaled_eta == Rat(1, 4));
  CHECK(tr.rescaled_eta >= Rat(1, 12));
}

TEST_CASE("isogeny minimum trace rejects degenerate dimensions") {
  CHECK(throws_code(ErrorCode::BadDimensions,
                    [] { isogeny_minimum_ledger(2, 2, Rat(1, 10)); }));
  CHECK(throws_code(ErrorCode::BadDimensions,
                    [] { isogeny_minimum_ledger(2, 0, Rat(1, 10)); }));
  CHECK(throws_code(ErrorCode::NonPositiveEta,
                    [] { isogeny_minimum_ledger(2, 1, Rat(0)); }));
}

TEST_CASE("composite trace with one trivial factor collapses to the minimum") {
  auto tr = composite_bound_ledger(1, Rat(1, 10), {{Int(1), Int(1), 1}},
                                   Rat(1), Rat(1), 128);
  CHECK(tr.all_proven());
  CHECK(tr.global_alpha == 1);
  CHECK(tr.absorption.exact);
  CHECK(tr.absorption.lower == 1);
  CHECK(tr.numerator_form == (EtaAffine{Rat(1), Rat(-1)}));
  CHECK(tr.denominator_form == (EtaAffine{Rat(1), Rat(1)}));
  CHECK(tr.numerator_exponent == Rat(9, 10));
  CHECK(tr.denominator_exponent == Rat(11, 10));
  for (const auto& s : tr.steps)
    if (s.identity) CHECK(mono_equal_sampled(s.lhs_mono, s.rhs_mono));
}

TEST_CASE("composite trace folds factor data into alpha and absorption") {
  std::vector<LedgerFactor> fs{{Int(1), Int(1), 1}, {Int(2), Int(2), 2}};
  auto tr = composite_bound_ledger(1, Rat(1, 10), fs, Rat(3), Rat(5), 128);
  CHECK(tr.all_proven());
  CHECK(tr.global_alpha == 8);  // max(1^2 * 1, 2^2 * 2)
  auto ref = power_product(Rat(1), {{Rat(4), Rat(-9, 10)}}, 256);
  CHECK(tr.absorption.lower <= ref.lower);
  CHECK(ref.upper <= tr.absorption.upper);
  CHECK(tr.constant_factors.size() >= 3);
}

TEST_CASE("composite trace rejects empty or malformed factor lists") {
  CHECK(throws_code(ErrorCode::EmptyFactorList, [] {
    composite_bound_ledger(1, Rat(1, 10), {}, Rat(1), Rat(1), 128);
  }));
  CHECK(throws_code(ErrorCode::NonPositiveEta, [] {
    composite_bound_ledger(1, Rat(-1, 10), {{Int(1), Int(1), 1}}, Rat(1),
                           Rat(1), 128);
  }));
  CHECK(throws_code(ErrorCode::MalformedInput, [] {
    composite_bound_ledger(1, Rat(1, 10), {{Int(0), Int(1), 1}}, Rat(1),
                           Rat(1), 128);
  }));
}
