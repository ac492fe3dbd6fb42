#include "abelic/rational.hpp"

#include "abelic/errors.hpp"

namespace abelic {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::BadConductor: return "BadConductor";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NonEuclideanOrder: return "NonEuclideanOrder";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::ZeroStabOrder: return "ZeroStabOrder";
    case ErrorCode::ModulusIncompatible: return "ModulusIncompatible";
    case ErrorCode::BadMultiplicity: return "BadMultiplicity";
    case ErrorCode::BadIndexRange: return "BadIndexRange";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::MinorVanished: return "MinorVanished";
    case ErrorCode::InconsistentSplit: return "InconsistentSplit";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptyFactorList: return "EmptyFactorList";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::NonPositiveEta: return "NonPositiveEta";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "UnknownError";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::MalformedInput, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int parse_int(const std::string& s) {
  if (s.empty()) fail(ErrorCode::MalformedInput, "empty integer literal");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(ErrorCode::MalformedInput, "bare sign: " + s);
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      fail(ErrorCode::MalformedInput, "bad integer literal: " + s);
  return Int(s);
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den <= 0) fail(ErrorCode::MalformedInput, "nonpositive denominator: " + s);
  return make_rat(num, den);
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0 && e < 0) fail(ErrorCode::SingularMatrix, "0 to negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rat r = make_rat(pow_int(base.get_num(), a), pow_int(base.get_den(), a));
  if (e < 0) r = 1 / r;
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::vector<Factor> factorize(Int n) {
  if (n < 1) fail(ErrorCode::MalformedInput, "factorize wants n >= 1");
  std::vector<Factor> out;
  auto push = [&](const Int& p, long e, bool cert) {
    out.push_back({p, e, cert});
  };
  const unsigned long bound = 1000000;
  for (unsigned long p = 2; Int(p) * p <= n && p <= bound; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      long e = 0;
      while (n % p == 0) { n /= p; ++e; }
      push(Int(p), e, true);
    }
  }
  if (n > 1) {
    // Peel perfect powers off the residual so that e.g. big squares still
    // expose a usable exponent.
    long e = 1;
    bool again = true;
    while (again) {
      again = false;
      for (unsigned long k = 2; k <= 64; ++k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1 && root < n) {
          n = root;
          e *= static_cast<long>(k);
          again = true;
          break;
        }
      }
    }
    bool prime = mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
    push(n, e, prime);
  }
  return out;
}

}  // namespace abelic
