#ifndef ARITHTHETA_WEILREP_HPP
#define ARITHTHETA_WEILREP_HPP

#include <vector>

#include "ariththeta/cyclotomic.hpp"
#include "ariththeta/hlattice.hpp"

namespace ariththeta {

// Additive character psi_p on Q_p/Z_p: psi_p(x) = e^{-2 pi i {x}_p}, the local
// component at p of the standard adelic character trivial on Q with
// psi_infty(x) = e^{2 pi i x}.  Returns an exact root of unity.
Cyc psi_p(long p, const Rat& x);

// Function on the finite quotient p^{-N} Lambda / p^N Lambda with exact
// cyclotomic values and a formal power of the Weil index gamma.  Requires
// Lambda self-dual at an unramified p, so that the pairing
// psi_p(Tr<x, y>) is perfect on the quotient.
class WeilModel {
  public:
    WeilModel(const HermitianLattice& L, long p, int N);

    long p() const { return p_; }
    int N() const { return N_; }
    long group_size() const { return size_; }
    int dim() const { return dim_; }

    struct Fn {
        std::vector<Cyc> values;  // indexed over (Z/p^{2N})^{2r}
        int gamma_pow = 0;        // formal multiplier gamma^k
        bool operator==(const Fn& o) const { return values == o.values && gamma_pow == o.gamma_pow; }
    };

    // Indicator of the coset (c + scale * Lambda) inside the model; the coset
    // must be p^{-N}-integral and the scale a p-power <= p^N.
    Fn coset_indicator(const EVec& coset, long scale) const;
    Fn from_weight(const SchwartzWeight& w) const;

    // x in the model from integer coordinates u: x = p^{-N} sum u_i b_i.
    Rat norm_at(const std::vector<long>& u) const;

    Fn apply_w(const Fn& f) const;                   // gamma * normalized Fourier transform
    Fn apply_n(const Fn& f, const Rat& b) const;     // multiply by psi(b q(x))
    Fn apply_m_unit(const Fn& f, const EElem& a) const;  // x -> x a, p-unit a (unramified chi = 1)
    Fn negate_argument(const Fn& f) const;           // x -> -x

    Fn scale_fn(const Fn& f, const Cyc& c) const;
    Fn add(const Fn& f, const Fn& g) const;
    bool is_zero(const Fn& f) const;

    // Convert a model function with rational values back to a Schwartz weight
    // on the finest cosets (c + p^N Lambda).
    SchwartzWeight to_weight(const Fn& f) const;

  private:
    std::vector<long> coords_of_index(long idx) const;
    long index_of_coords(const std::vector<long>& u) const;  // reduced mod p^{2N}

    HermitianLattice L_;
    long p_;
    int N_;
    int dim_;       // 2 * rank
    long m_;        // p^{2N}
    long size_;     // m^dim
    std::vector<std::vector<Rat>> T_;  // trace pairing Tr<b_i, b_j> on the Z-basis
};

}  // namespace ariththeta

#endif
