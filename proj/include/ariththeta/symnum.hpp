#ifndef ARITHTHETA_SYMNUM_HPP
#define ARITHTHETA_SYMNUM_HPP

#include <map>
#include <mutex>
#include <set>
#include <string>

#include "ariththeta/mpfloat.hpp"
#include "ariththeta/ratutil.hpp"

namespace ariththeta {

class OpaqueRegistry;

// Exact element of  Q + Q*gamma + Q*log(pi) + sum_p Q*log(p) + opaque constants.
// gamma is Euler-Mascheroni.  Distinct log p are linearly independent, so the
// representation is canonical once zero coefficients are dropped.  Values are
// immutable after construction.
class SymNumber {
  public:
    SymNumber() = default;
    explicit SymNumber(const Rat& r) : rat_(r) { canonicalize(); }
    explicit SymNumber(long n) : rat_(n, 1) {}

    static SymNumber gamma(const Rat& c = Rat(1));
    static SymNumber log_pi(const Rat& c = Rat(1));
    static SymNumber log_prime(long p, const Rat& c = Rat(1));
    static SymNumber opaque(const std::string& tag, const Rat& c = Rat(1));

    const Rat& rat() const { return rat_; }
    Rat gamma_coeff() const;
    Rat logpi_coeff() const;
    Rat log_coeff(long p) const;
    Rat opaque_coeff(const std::string& tag) const;
    const std::map<long, Rat>& logs() const { return logs_; }
    const std::map<std::string, Rat>& opaques() const { return opaques_; }

    bool is_zero() const;
    bool is_rational() const;  // all non-rat components vanish

    SymNumber operator+(const SymNumber& o) const;
    SymNumber operator-(const SymNumber& o) const;
    SymNumber operator-() const;
    bool operator==(const SymNumber& o) const;
    bool operator!=(const SymNumber& o) const { return !(*this == o); }

    SymNumber scale(const Rat& q) const;
    // Product; at least one factor must be purely rational, else MixedProduct.
    SymNumber mul(const SymNumber& o) const;

    // Zero the log p coefficients for p in S.
    SymNumber reduce_mod_logs(const std::set<long>& S) const;

    // Numeric evaluation.  Opaque tags are resolved through the registry
    // (nullptr allowed when no opaque part is present).
    MpFloat shadow(const OpaqueRegistry* reg, long digits = 64) const;

    std::string to_string() const;  // e.g. "-1 - 2*log 2 + gamma"
    std::string to_json() const;
    static SymNumber from_json(const std::string& text);

  private:
    void canonicalize();

    Rat rat_ = Rat(0);
    Rat gamma_ = Rat(0);
    Rat logpi_ = Rat(0);
    std::map<long, Rat> logs_;
    std::map<std::string, Rat> opaques_;
};

SymNumber operator*(const Rat& q, const SymNumber& a);

// log of a positive rational, expanded over prime logs; log 1 = 0.
SymNumber log_of_rational(const Rat& r);

// digamma at a positive integer: psi(m) = -gamma + H_{m-1}.
SymNumber psi_integer(long m);

// Numeric values for opaque tags (FALTINGS, LLOGDERIV(d), ...).  Write-once:
// registering a tag twice with a different value is an error.  Safe to publish
// to other threads after the writes are done.
class OpaqueRegistry {
  public:
    void register_value(const std::string& tag, const MpFloat& value);
    bool has(const std::string& tag) const;
    MpFloat value(const std::string& tag) const;

  private:
    mutable std::mutex mu_;
    std::map<std::string, MpFloat> values_;
};

}  // namespace ariththeta

#endif
