#include "abelic/bounds.hpp"

#include <mpfr.h>

#include "abelic/errors.hpp"

namespace abelic {

static void check_precision(long precision) {
  if (precision < 2 || precision > (1 << 24))
    fail(ErrorCode::PrecisionTooLow, "working precision out of range");
}

static void check_positive(const Rat& x, const char* what) {
  if (x <= 0) fail(ErrorCode::MalformedInput, std::string(what) + " must be positive");
}

static long to_long_checked(const Int& x, const char* what) {
  if (!x.fits_slong_p())
    fail(ErrorCode::CapExceeded, std::string(what) + " does not fit a machine word");
  return x.get_si();
}

BoundResult power_product(const Rat& c,
                          const std::vector<std::pair<Rat, Rat>>& powers,
                          long precision) {
  check_precision(precision);
  check_positive(c, "constant");

  // Common root index: with q = lcm of the exponent denominators the product
  // is a single radical (prod base^(exp*q))^(1/q) over one rational radicand.
  Int q(1);
  for (const auto& [base, e] : powers) {
    check_positive(base, "base");
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), e.get_den().get_mpz_t());
  }
  long root = to_long_checked(q, "root index");

  Rat radicand(1);
  for (const auto& [base, e] : powers) {
    Int scaled = e.get_num() * (q / e.get_den());
    radicand *= pow_rat(base, to_long_checked(scaled, "exponent"));
  }

  BoundResult r;
  if (root == 1) {
    r.lower = r.upper = c * radicand;
    r.exact = true;
    return r;
  }

  // Rational radicals: both parts perfect root powers.
  Int num = radicand.get_num(), den = radicand.get_den();
  Int num_root, den_root;
  int num_exact = mpz_root(num_root.get_mpz_t(), num.get_mpz_t(),
                           static_cast<unsigned long>(root));
  int den_exact = mpz_root(den_root.get_mpz_t(), den.get_mpz_t(),
                           static_cast<unsigned long>(root));
  if (num_exact && den_exact) {
    r.lower = r.upper = c * Rat(num_root) / Rat(den_root);
    r.exact = true;
    return r;
  }

  // Directed rounding on the dyadic grid 2^-precision: floor the scaled
  // radicand and its root downward, ceil both upward.
  if (root * precision > (1 << 24))
    fail(ErrorCode::PrecisionTooLow, "root index times precision too large");
  Int scaled_num = num << static_cast<unsigned long>(root * precision);
  Int lo_in, hi_in;
  mpz_fdiv_q(lo_in.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
  mpz_cdiv_q(hi_in.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
  Int lo_root, hi_root;
  mpz_root(lo_root.get_mpz_t(), lo_in.get_mpz_t(),
           static_cast<unsigned long>(root));
  int hi_exact = mpz_root(hi_root.get_mpz_t(), hi_in.get_mpz_t(),
                          static_cast<unsigned long>(root));
  if (!hi_exact) hi_root += 1;

  Rat grid(Int(1) << static_cast<unsigned long>(precision));
  r.lower = c * Rat(lo_root) / grid;
  r.upper = c * Rat(hi_root) / grid;
  r.exact = false;
  return r;
}

Int galateau_lambda(int dim_b, int codim) {
  if (dim_b < 1 || codim < 1)
    fail(ErrorCode::BadDimension, "dimension and codimension must be >= 1");
  return pow_int(Int(5) * dim_b * (1 + codim),
                 static_cast<unsigned long>(1 + codim));
}

static Rat rat_of_mpfr(mpfr_srcptr x) {
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rat r(m);
  if (e >= 0)
    r *= Rat(Int(1) << static_cast<unsigned long>(e));
  else
    r /= Rat(Int(1) << static_cast<unsigned long>(-e));
  return r;
}

BoundResult galateau_bound(const Rat& c0, const Rat& omega, const Rat& deg_y,
                           const Int& lambda, long precision) {
  check_precision(precision);
  check_positive(c0, "leading constant");
  check_positive(omega, "obstruction degree");
  check_positive(deg_y, "degree");
  if (lambda < 1)
    fail(ErrorCode::MalformedInput, "log-power exponent must be positive");
  long lam = to_long_checked(lambda, "log-power exponent");

  Rat arg = 3 * deg_y;
  mpfr_t lo, hi;
  mpfr_init2(lo, static_cast<mpfr_prec_t>(precision));
  mpfr_init2(hi, static_cast<mpfr_prec_t>(precision));
  mpfr_set_q(lo, arg.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi, arg.get_mpq_t(), MPFR_RNDU);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_log(hi, hi, MPFR_RNDU);
  bool separated = mpfr_sgn(lo) > 0;
  Rat ln_lo = separated ? rat_of_mpfr(lo) : Rat(0);
  Rat ln_hi = separated ? rat_of_mpfr(hi) : Rat(0);
  mpfr_clear(lo);
  mpfr_clear(hi);
  if (!separated)
    fail(ErrorCode::PrecisionTooLow,
         "logarithm enclosure does not separate from zero");

  // x -> x^(-lambda) is decreasing, so the enclosure endpoints swap.
  BoundResult r;
  Rat scale = c0 / omega;
  r.lower = scale * pow_rat(ln_hi, -lam);
  r.upper = scale * pow_rat(ln_lo, -lam);
  r.exact = false;
  return r;
}

static void check_eta_codim(const Rat& eta, int codim) {
  if (eta <= 0) fail(ErrorCode::NonPositiveEta, "eta must be positive");
  if (codim < 1) fail(ErrorCode::BadDimension, "codimension must be >= 1");
}

BoundResult effective_bogomolov(const Rat& c, const Rat& deg_y, int codim,
                                const Rat& eta, long precision) {
  check_eta_codim(eta, codim);
  check_positive(deg_y, "degree");
  return power_product(c, {{deg_y, -Rat(1, codim) - eta}}, precision);
}

BoundResult main_bound(const BoundQuery& q, long precision) {
  check_eta_codim(q.eta, q.codim);
  check_positive(q.constant_c, "constant");
  if (q.deg_h < 1 || q.deg_y < 1)
    fail(ErrorCode::MalformedInput, "degrees must be at least 1");
  Rat e_h = Rat(1, q.codim) - q.eta;
  Rat e_y = -Rat(1, q.codim) - q.eta;
  BoundResult r =
      power_product(q.constant_c, {{q.deg_h, e_h}, {q.deg_y, e_y}}, precision);
  r.numerator_exponent_nonpositive = e_h <= 0;
  return r;
}

BoundResult isogeny_bound(const Rat& deg_pullback_b, const Rat& deg_pullback_y,
                          int codim, const Rat& eta, const Rat& c,
                          long precision) {
  check_eta_codim(eta, codim);
  check_positive(deg_pullback_b, "pulled-back ambient degree");
  check_positive(deg_pullback_y, "pulled-back subvariety degree");
  return power_product(c,
                       {{deg_pullback_b, Rat(1, codim) - eta},
                        {deg_pullback_y, -Rat(1, codim) - eta}},
                       precision);
}

TranslatedBound translate_theta(const Rat& c1, const Rat& deg_b,
                                const Rat& deg_y, int codim, const Rat& eta,
                                long precision) {
  BoundQuery q;
  q.deg_h = deg_b;
  q.deg_y = deg_y;
  q.codim = codim;
  q.eta = eta;
  q.constant_c = c1;
  TranslatedBound t;
  t.theta = main_bound(q, precision);
  t.quarter = t.theta;
  t.quarter.lower /= 4;
  t.quarter.upper /= 4;
  t.height_rule = "h(x - q) <= 2*h(x) + 2*h(q) <= theta";
  return t;
}

}  // namespace abelic
