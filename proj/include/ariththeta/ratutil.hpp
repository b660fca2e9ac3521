#ifndef ARITHTHETA_RATUTIL_HPP
#define ARITHTHETA_RATUTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ariththeta/errors.hpp"

namespace ariththeta {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; this does.
inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" or "p"; rationals travel as strings in all JSON formats.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

// Factor a positive integer by trial division (desk scale).  Throws Error if a
// cofactor above the trial bound survives.
std::map<long, long> factor_positive(const Int& n);

// prime -> exponent of |r| for a nonzero rational.
std::map<long, long> factor_rational(const Rat& r);

long valuation(const Int& n, long p);       // v_p(n), n != 0
long valuation(const Rat& r, long p);       // v_p(r), r != 0
bool is_prime(long p);
long kronecker(long a, long n);             // Kronecker symbol (a|n)
Int binomial(long n, long k);
Rat harmonic(long n);                       // H_n = sum_{k<=n} 1/k
Rat pow_rat(const Rat& base, long e);       // integer exponents, negative ok

// Round a rational toward -infinity / nearest.
Int floor_div(const Int& a, const Int& b);
long floor_long(const Rat& r);

}  // namespace ariththeta

#endif
