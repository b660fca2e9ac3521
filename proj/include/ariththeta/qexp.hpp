#ifndef ARITHTHETA_QEXP_HPP
#define ARITHTHETA_QEXP_HPP

#include <map>
#include <string>

#include "ariththeta/symnum.hpp"

namespace ariththeta {

// Finite q-expansion: t -> coefficient for 0 <= t <= prec, absent means 0.
// Indices are nonnegative rationals.
class QExpansion {
  public:
    struct Meta {
        long weight = 0;
        long disc = 0;
        std::string normalization;
        bool incoherent = false;
        bool operator==(const Meta&) const = default;
    };

    QExpansion() = default;
    explicit QExpansion(const Rat& prec) : prec_(prec) {}

    const Rat& prec() const { return prec_; }
    Meta& meta() { return meta_; }
    const Meta& meta() const { return meta_; }

    void set(const Rat& t, const SymNumber& c);
    void add_to(const Rat& t, const SymNumber& c);
    SymNumber coeff(const Rat& t) const;
    const std::map<Rat, SymNumber>& coeffs() const { return coeffs_; }
    long nonzero_count() const;

    QExpansion operator+(const QExpansion& o) const;
    QExpansion cauchy_mul(const QExpansion& o) const;  // prec = min of operands
    QExpansion scale(const Rat& q) const;

    bool same_coeffs(const QExpansion& o) const;  // over the common precision

    std::string to_json() const;  // [[t, symnum], ...] plus meta
    static QExpansion from_json(const std::string& text);

  private:
    Rat prec_ = Rat(0);
    std::map<Rat, SymNumber> coeffs_;
    Meta meta_;
};

}  // namespace ariththeta

#endif
