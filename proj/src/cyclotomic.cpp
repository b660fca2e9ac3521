#include "ariththeta/cyclotomic.hpp"

#include <sstream>

namespace ariththeta {

static long phi_prime_power(long m, long p) { return m == 1 ? 1 : m - m / p; }

static long prime_of(long m) {
    if (m == 1) return 0;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            long q = m;
            while (q % p == 0) q /= p;
            if (q != 1) throw Error("cyclotomic modulus must be a prime power");
            return p;
        }
    return m;  // m itself prime
}

void Cyc::set_rat(const Rat& r) {
    m_ = 1;
    p_ = 0;
    c_.clear();
    if (r != 0) c_[0] = r;
}

Cyc Cyc::root_of_unity(long m, long e) {
    Cyc z;
    z.m_ = m;
    z.p_ = prime_of(m);
    e %= m;
    if (e < 0) e += m;
    z.c_[e] = Rat(1);
    z.reduce();
    return z;
}

void Cyc::reduce() {
    if (m_ == 1) {
        if (!c_.empty() && c_.begin()->second == 0) c_.clear();
        return;
    }
    const long phi = phi_prime_power(m_, p_);
    const long step = m_ / p_;  // p^{k-1}
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = c_.begin(); it != c_.end();) {
            long e = it->first;
            if (e >= phi) {
                // zeta^{a + (p-1)p^{k-1}} = -sum_{j<p-1} zeta^{a + j p^{k-1}}
                Rat coef = it->second;
                long a = e - (p_ - 1) * step;
                it = c_.erase(it);
                for (long j = 0; j + 1 < p_; ++j) c_[a + j * step] -= coef;
                changed = true;
            } else {
                ++it;
            }
        }
    }
    for (auto it = c_.begin(); it != c_.end();)
        it = (it->second == 0) ? c_.erase(it) : std::next(it);
    if (c_.empty()) {
        m_ = 1;
        p_ = 0;
    }
}

Cyc Cyc::promoted(long m_new) const {
    if (m_new == m_) return *this;
    if (m_ == 1) {
        Cyc z = *this;
        z.m_ = m_new;
        z.p_ = prime_of(m_new);
        return z;
    }
    if (m_new % m_ != 0) throw Error("incompatible cyclotomic moduli");
    long f = m_new / m_;
    Cyc z;
    z.m_ = m_new;
    z.p_ = p_;
    for (auto& [e, c] : c_) z.c_[e * f] = c;
    z.reduce();
    return z;
}

long Cyc::lcm_modulus(long a, long b) {
    if (a == 1) return b;
    if (b == 1) return a;
    if (a % b == 0) return a;
    if (b % a == 0) return b;
    return 0;  // different primes or incomparable
}

Cyc Cyc::operator+(const Cyc& o) const {
    long m = lcm_modulus(m_, o.m_);
    if (m == 0) throw Error("incompatible cyclotomic moduli in +");
    Cyc a = promoted(m), b = o.promoted(m);
    for (auto& [e, c] : b.c_) a.c_[e] += c;
    a.reduce();
    return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator-() const { return scale(Rat(-1)); }

Cyc Cyc::scale(const Rat& q) const {
    Cyc z;
    if (q == 0) return z;
    z.m_ = m_;
    z.p_ = p_;
    for (auto& [e, c] : c_) z.c_[e] = c * q;
    return z;
}

Cyc Cyc::operator*(const Cyc& o) const {
    if (is_zero() || o.is_zero()) return Cyc();
    long m = lcm_modulus(m_, o.m_);
    if (m == 0) throw Error("incompatible cyclotomic moduli in *");
    Cyc a = promoted(m), b = o.promoted(m);
    Cyc z;
    z.m_ = m;
    z.p_ = a.p_ ? a.p_ : b.p_;
    for (auto& [e1, c1] : a.c_)
        for (auto& [e2, c2] : b.c_) z.c_[(e1 + e2) % (m == 1 ? 1 : m)] += c1 * c2;
    z.reduce();
    return z;
}

Cyc Cyc::conj() const {
    if (m_ == 1) return *this;
    Cyc z;
    z.m_ = m_;
    z.p_ = p_;
    for (auto& [e, c] : c_) {
        long e2 = (m_ - e) % m_;
        z.c_[e2] += c;
    }
    z.reduce();
    return z;
}

bool Cyc::operator==(const Cyc& o) const {
    long m = lcm_modulus(m_, o.m_);
    if (m == 0) return false;
    Cyc a = promoted(m), b = o.promoted(m);
    return a.c_ == b.c_;
}

bool Cyc::is_rational() const {
    for (auto& [e, c] : c_)
        if (e != 0 && c != 0) return false;
    return true;
}

Rat Cyc::rat_value() const {
    if (!is_rational()) throw Error("cyclotomic value is not rational: " + to_string());
    auto it = c_.find(0);
    return it == c_.end() ? Rat(0) : it->second;
}

std::string Cyc::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        if (e != 0) os << "*z" << m_ << "^" << e;
    }
    return os.str();
}

Cyc operator*(const Rat& q, const Cyc& c) { return c.scale(q); }

}  // namespace ariththeta
