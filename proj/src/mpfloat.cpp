#include "ariththeta/mpfloat.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace ariththeta {

MpFloat MpFloat::from_rat(const Rat& r, mpfr_prec_t prec) {
    MpFloat x(prec);
    mpfr_set_q(x.v_, r.get_mpq_t(), MPFR_RNDN);
    return x;
}

MpFloat MpFloat::from_long(long n, mpfr_prec_t prec) {
    MpFloat x(prec);
    mpfr_set_si(x.v_, n, MPFR_RNDN);
    return x;
}

MpFloat MpFloat::from_double(double d, mpfr_prec_t prec) {
    MpFloat x(prec);
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
}

MpFloat MpFloat::pi(mpfr_prec_t prec) {
    MpFloat x(prec);
    mpfr_const_pi(x.v_, MPFR_RNDN);
    return x;
}

MpFloat MpFloat::euler(mpfr_prec_t prec) {
    MpFloat x(prec);
    mpfr_const_euler(x.v_, MPFR_RNDN);
    return x;
}

mpfr_prec_t MpFloat::digits_to_bits(long digits) {
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 16);
}

static mpfr_prec_t joint(const MpFloat& a, const MpFloat& b) {
    return std::max(a.prec(), b.prec());
}

MpFloat MpFloat::operator+(const MpFloat& o) const {
    MpFloat r(joint(*this, o));
    mpfr_add(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::operator-(const MpFloat& o) const {
    MpFloat r(joint(*this, o));
    mpfr_sub(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::operator-() const {
    MpFloat r(prec());
    mpfr_neg(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::operator*(const MpFloat& o) const {
    MpFloat r(joint(*this, o));
    mpfr_mul(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::operator/(const MpFloat& o) const {
    MpFloat r(joint(*this, o));
    mpfr_div(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

MpFloat& MpFloat::operator+=(const MpFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MpFloat& MpFloat::operator-=(const MpFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MpFloat MpFloat::abs() const {
    MpFloat r(prec());
    mpfr_abs(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::sqrt() const {
    MpFloat r(prec());
    mpfr_sqrt(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::exp() const {
    MpFloat r(prec());
    mpfr_exp(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::log() const {
    MpFloat r(prec());
    mpfr_log(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::gamma() const {
    MpFloat r(prec());
    mpfr_gamma(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::lngamma() const {
    MpFloat r(prec());
    mpfr_lngamma(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::digamma() const {
    MpFloat r(prec());
    mpfr_digamma(r.raw(), v_, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::pow_long(long e) const {
    MpFloat r(prec());
    mpfr_pow_si(r.raw(), v_, e, MPFR_RNDN);
    return r;
}

MpFloat MpFloat::pow(const MpFloat& e) const {
    MpFloat r(joint(*this, e));
    mpfr_pow(r.raw(), v_, e.v_, MPFR_RNDN);
    return r;
}

std::string MpFloat::to_string(long digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    char* s = nullptr;
    int n = mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out = n >= 0 ? std::string(s) : std::string("?");
    mpfr_free_str(s);
    return out;
}

}  // namespace ariththeta
