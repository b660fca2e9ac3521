#ifndef ARITHTHETA_HLATTICE_HPP
#define ARITHTHETA_HLATTICE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "ariththeta/cmfield.hpp"
#include "ariththeta/qexp.hpp"

namespace ariththeta {

// Element x + y*sqrt(d) of an imaginary quadratic field, x, y rational.
struct EElem {
    Rat x = Rat(0), y = Rat(0);
    long d = 0;

    EElem() = default;
    EElem(Rat x_, Rat y_, long d_) : x(std::move(x_)), y(std::move(y_)), d(d_) {}
    static EElem from_rat(const Rat& r, long d) { return EElem(r, Rat(0), d); }
    static EElem sqrt_d(long d) { return EElem(Rat(0), Rat(1), d); }
    // theta = (1+sqrt d)/2 for odd d, sqrt(d)/2 for even d; O_E = Z[theta].
    static EElem theta_gen(long d);
    static EElem from_coords(const Rat& a, const Rat& b, long d);  // a + b*theta
    std::pair<Rat, Rat> to_coords() const;                         // inverse

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_rational() const { return y == 0; }
    bool is_integral() const;  // lies in O_E

    EElem conj() const { return EElem(x, -y, d); }
    Rat norm() const { return x * x - Rat(d) * y * y; }
    Rat trace() const { return 2 * x; }

    EElem operator+(const EElem& o) const;
    EElem operator-(const EElem& o) const;
    EElem operator-() const;
    EElem operator*(const EElem& o) const;
    EElem operator/(const EElem& o) const;
    bool operator==(const EElem& o) const;
};

using EVec = std::vector<EElem>;
using EMat = std::vector<EVec>;

EElem inner(const EVec& u, const EVec& v, const EMat& gram);  // <u, v>, conj-linear in v

// Valuation data for one prime p of Q in E; at split p, the first of the two
// places above p (fixed by a Hensel lift of sqrt(d)).
class LocalPlace {
  public:
    LocalPlace(long d, long p);
    long p() const { return p_; }
    PlaceKind kind() const { return kind_; }
    long ram_index() const { return kind_ == PlaceKind::ramified ? 2 : 1; }
    // v_pi(z) for z != 0 (pi a uniformizer above p).
    long val(const EElem& z) const;
    // Hensel-lifted sqrt(d) mod p^k (split only).
    Int split_root(long k) const;

  private:
    long d_, p_;
    PlaceKind kind_;
    mutable Int root_ = 0;
    mutable long root_prec_ = 0;
};

// Valuations of the invariant factors of a nonsingular matrix over the local
// ring at P, sorted ascending.
std::vector<long> smith_valuations(EMat m, const LocalPlace& P);

struct LatticeLocalType {
    long p = 0;
    enum class Kind { self_dual, almost_self_dual, pi_modular, almost_pi_modular, other } kind;
    long vertex_type = 0;  // colength of Lambda in Lambda* (sum of positive invariant valuations)
    std::vector<long> invariants;
};

// One indicator coset (c + scale * Lambda) with a rational weight; a Schwartz
// weight is a finite rational combination of these.
struct WeightTerm {
    EVec coset;      // representative, entries in E
    long scale = 1;  // positive integer
    Rat weight = Rat(1);
};

struct SchwartzWeight {
    std::vector<WeightTerm> terms;
    static SchwartzWeight lattice_indicator(int rank, long d);
    static SchwartzWeight zero() { return SchwartzWeight{}; }
    bool is_zero() const { return terms.empty(); }
};

// Positive-definite hermitian O_E-lattice presented by its Gram matrix on a
// free basis.  Conjugate symmetry and rational diagonal are enforced at
// construction; positivity is checked where enumeration requires it (the
// local classification functions accept isotropic Grams).
class HermitianLattice {
  public:
    HermitianLattice(long d, EMat gram);

    long d() const { return d_; }
    int rank() const { return rank_; }
    const EMat& gram() const { return gram_; }
    EElem det() const;
    bool is_positive_definite() const;

    // Gram of the dual lattice on the dual basis; involutive.
    HermitianLattice dual() const;

    LatticeLocalType local_type(long p) const;

    struct SplitResult {
        std::vector<HermitianLattice> blocks;  // rank 1 or 2
        EMat transform;                        // columns = new basis in old coordinates
    };
    // Orthogonal splitting over Z_p: unit-diagonal rank-1 blocks at unramified p
    // (requires self-duality there); rank-2 pi-modular blocks plus at most one
    // unit rank-1 block at odd ramified p.  Ramified p = 2 is rejected.
    SplitResult jacobowitz_split(long p) const;

    // Sublattice { x : <x, e0> = 0 } with induced Gram; requires q(e0) != 0 and
    // a free complement (throws NotFree otherwise).
    HermitianLattice orth_complement(const EVec& e0) const;

    // Rational Gram of the trace form on the Z-basis e_1, theta e_1, ...
    std::vector<std::vector<Rat>> trace_gram() const;

    std::string to_json() const;
    static HermitianLattice from_json(const std::string& text);

  private:
    long d_;
    int rank_;
    EMat gram_;
};

// Weighted count of x in the weighted cosets with q(x) = t (exact).
Rat enumerate_norm(const HermitianLattice& L, const Rat& t, const SchwartzWeight& w);

// Theta q-expansion up to prec; modular weight = rank.
QExpansion theta_qexp(const HermitianLattice& L, const SchwartzWeight& w, const Rat& prec);

// All weighted counts with q <= bound (the single enumeration behind both of
// the above; cached on disk when ARITHTHETA_CACHE is set).
std::map<Rat, Rat> norm_counts(const HermitianLattice& L, const SchwartzWeight& w, const Rat& bound);

// Default enumeration bound (norms above this raise PrecisionExceeded).
inline constexpr long kEnumerationBound = 200;

}  // namespace ariththeta

#endif
