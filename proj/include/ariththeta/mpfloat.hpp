#ifndef ARITHTHETA_MPFLOAT_HPP
#define ARITHTHETA_MPFLOAT_HPP

#include <mpfr.h>

#include <string>

#include "ariththeta/ratutil.hpp"

namespace ariththeta {

// Thin RAII wrapper around mpfr_t.  Results carry the larger of the operand
// precisions; precision is always explicit at construction.
class MpFloat {
  public:
    explicit MpFloat(mpfr_prec_t prec = 256) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    MpFloat(const MpFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpFloat(MpFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpFloat& operator=(const MpFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpFloat& operator=(MpFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(v_); }

    static MpFloat from_rat(const Rat& r, mpfr_prec_t prec);
    static MpFloat from_long(long n, mpfr_prec_t prec);
    static MpFloat from_double(double x, mpfr_prec_t prec);
    static MpFloat pi(mpfr_prec_t prec);
    static MpFloat euler(mpfr_prec_t prec);        // Euler-Mascheroni gamma
    static mpfr_prec_t digits_to_bits(long digits);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    MpFloat operator+(const MpFloat& o) const;
    MpFloat operator-(const MpFloat& o) const;
    MpFloat operator-() const;
    MpFloat operator*(const MpFloat& o) const;
    MpFloat operator/(const MpFloat& o) const;
    MpFloat& operator+=(const MpFloat& o);
    MpFloat& operator-=(const MpFloat& o);

    MpFloat abs() const;
    MpFloat sqrt() const;
    MpFloat exp() const;
    MpFloat log() const;
    MpFloat gamma() const;
    MpFloat lngamma() const;
    MpFloat digamma() const;
    MpFloat pow_long(long e) const;
    MpFloat pow(const MpFloat& e) const;

    int cmp(const MpFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const MpFloat& o) const { return cmp(o) < 0; }
    bool operator>(const MpFloat& o) const { return cmp(o) > 0; }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Fixed notation with the given number of significant decimal digits.
    std::string to_string(long digits = 20) const;

  private:
    mpfr_t v_;
};

}  // namespace ariththeta

#endif
