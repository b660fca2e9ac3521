#ifndef ARITHTHETA_CYCLOTOMIC_HPP
#define ARITHTHETA_CYCLOTOMIC_HPP

#include <map>

#include "ariththeta/ratutil.hpp"

namespace ariththeta {

// Exact element of Q(zeta_m) for m a prime power (m = 1 means Q).  Stored on
// the power basis {zeta^e : 0 <= e < phi(m)}, which is a Q-basis, so equality
// and rationality tests are coefficientwise.
class Cyc {
  public:
    Cyc() = default;
    explicit Cyc(const Rat& r) { set_rat(r); }
    explicit Cyc(long n) { set_rat(Rat(n)); }

    // zeta_m^e  (m = p^k or 1).
    static Cyc root_of_unity(long m, long e);

    long modulus() const { return m_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const;
    Rat rat_value() const;  // throws if not rational

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator-() const;
    Cyc operator*(const Cyc& o) const;
    Cyc scale(const Rat& q) const;
    Cyc conj() const;  // zeta -> zeta^{-1}
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    void set_rat(const Rat& r);
    void reduce();                       // into the power basis
    Cyc promoted(long m_new) const;      // m_ | m_new, same prime
    static long lcm_modulus(long a, long b);

    long m_ = 1;               // prime power (or 1)
    long p_ = 0;               // prime of m_, 0 when m_ == 1
    std::map<long, Rat> c_;    // exponent -> coefficient
};

Cyc operator*(const Rat& q, const Cyc& c);

}  // namespace ariththeta

#endif
