#include "ariththeta/ratutil.hpp"

#include <algorithm>

namespace ariththeta {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

std::map<long, long> factor_positive(const Int& n_in) {
    if (n_in <= 0) throw NonPositive("factor_positive");
    Int n = n_in;
    std::map<long, long> out;
    for (long p = 2; Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            out[p]++;
            n /= p;
        }
        if (p > 10000000L) break;
    }
    if (n > 1) {
        if (!n.fits_slong_p() || !is_prime(n.get_si()))
            throw Error("factor_positive: cofactor " + n.get_str() + " beyond trial bound");
        out[n.get_si()]++;
    }
    return out;
}

std::map<long, long> factor_rational(const Rat& r) {
    if (r == 0) throw NonPositive("factor_rational(0)");
    std::map<long, long> out = factor_positive(abs(r.get_num()));
    for (auto& [p, e] : factor_positive(abs(r.get_den()))) out[p] -= e;
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

long valuation(const Int& n_in, long p) {
    if (n_in == 0) throw Error("valuation of 0");
    Int n = abs(n_in);
    long v = 0;
    while (n % p == 0) {
        n /= p;
        v++;
    }
    return v;
}

long valuation(const Rat& r, long p) {
    if (r == 0) throw Error("valuation of 0");
    return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; q = (q == 2 ? 3 : q + 2))
        if (p % q == 0) return false;
    return true;
}

long kronecker(long a, long n) {
    Int aa(a), nn(n);
    return mpz_kronecker(aa.get_mpz_t(), nn.get_mpz_t());
}

Int binomial(long n, long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rat harmonic(long n) {
    Rat h(0);
    for (long k = 1; k <= n; ++k) h += Rat(1, k);
    return h;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw Error("pow_rat: 0^negative");
        return Rat(0);
    }
    Rat b = base;
    if (e < 0) {
        b = Rat(base.get_den(), base.get_num());
        b.canonicalize();  // restores the positive-denominator convention
    }
    long n = e > 0 ? e : -e;
    Rat r(1);
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    r.canonicalize();
    return r;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

long floor_long(const Rat& r) {
    return floor_div(r.get_num(), r.get_den()).get_si();
}

}  // namespace ariththeta
