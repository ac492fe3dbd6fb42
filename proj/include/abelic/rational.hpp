#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace abelic {

using Int = mpz_class;
using Rat = mpq_class;

// num/den reduced, den > 0.
Rat make_rat(const Int& num, const Int& den);

std::string to_string(const Int& z);
// "p" when integral, "p/q" otherwise.
std::string to_string(const Rat& q);

// Accepts an optional sign and decimal digits.
Int parse_int(const std::string& s);
// Accepts "p" or "p/q".
Rat parse_rat(const std::string& s);

bool is_integer(const Rat& q);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, long e);  // negative e inverts; base != 0 then
Int binomial(unsigned long n, unsigned long k);
Int factorial(unsigned long n);

// Trial division up to a fixed bound, then repeated perfect-power extraction.
// The last factor may be composite (too large to split); callers that need
// exactness detection treat it as an opaque base, which stays sound.
struct Factor {
  Int prime;  // or an unsplit composite residual
  long exponent;
  bool certified_prime;
};
std::vector<Factor> factorize(Int n);  // n >= 1

}  // namespace abelic
