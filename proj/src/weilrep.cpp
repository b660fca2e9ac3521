#include "ariththeta/weilrep.hpp"

#include <cmath>
#include <numeric>

namespace ariththeta {

Cyc psi_p(long p, const Rat& x) {
    if (x == 0) return Cyc(Rat(1));
    long K = 0;
    {
        Int den = x.get_den();
        while (den % p == 0) {
            den /= p;
            ++K;
        }
    }
    if (K == 0) return Cyc(Rat(1));
    Int pK;
    mpz_ui_pow_ui(pK.get_mpz_t(), p, K);
    Int dprime = x.get_den() / pK;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), dprime.get_mpz_t(), pK.get_mpz_t()) == 0)
        throw Error("psi_p: inversion failed");
    Int a = ((x.get_num() * inv) % pK + pK) % pK;
    // psi_p(x) = zeta_{p^K}^{-a}
    return Cyc::root_of_unity(pK.get_si(), (-(a.get_si())) % pK.get_si());
}

WeilModel::WeilModel(const HermitianLattice& L, long p, int N) : L_(L), p_(p), N_(N) {
    LocalPlace P(L.d(), p);
    if (P.kind() == PlaceKind::ramified)
        throw UnsupportedPlace("finite Weil model needs an unramified place");
    auto lt = L.local_type(p);
    if (lt.kind != LatticeLocalType::Kind::self_dual)
        throw UnsupportedPlace("finite Weil model needs a self-dual lattice at p");
    if (N < 1) throw Error("WeilModel: N >= 1 required");
    dim_ = 2 * L.rank();
    m_ = 1;
    for (int i = 0; i < 2 * N; ++i) m_ *= p;
    double sz = std::pow(static_cast<double>(m_), dim_);
    if (sz > 5e6) throw SupportOverflow("finite model too large");
    size_ = 1;
    for (int i = 0; i < dim_; ++i) size_ *= m_;

    auto tg = L.trace_gram();  // entries Tr<b_i,b_j>/2
    T_.assign(dim_, std::vector<Rat>(dim_));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            T_[i][j] = 2 * tg[i][j];
            if (T_[i][j].get_den() != 1) throw Error("WeilModel: trace pairing not integral");
        }
}

std::vector<long> WeilModel::coords_of_index(long idx) const {
    std::vector<long> u(dim_);
    for (int i = 0; i < dim_; ++i) {
        u[i] = idx % m_;
        idx /= m_;
    }
    return u;
}

long WeilModel::index_of_coords(const std::vector<long>& u) const {
    long idx = 0;
    for (int i = dim_ - 1; i >= 0; --i) {
        long c = ((u[i] % m_) + m_) % m_;
        idx = idx * m_ + c;
    }
    return idx;
}

Rat WeilModel::norm_at(const std::vector<long>& u) const {
    Rat q(0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) q += T_[i][j] * Rat(u[i]) * Rat(u[j]);
    q /= 2;
    Rat scale = pow_rat(Rat(1, p_), 2 * N_);
    return q * scale;  // q(p^{-N} x) = p^{-2N} q(x)
}

WeilModel::Fn WeilModel::coset_indicator(const EVec& coset, long scale) const {
    // scale must be a p-power dividing p^N
    long s = scale;
    long pe = 1;
    while (s % p_ == 0) {
        s /= p_;
        pe *= p_;
    }
    if (s != 1) throw SupportOverflow("coset scale must be a p-power");
    long pN = 1;
    for (int i = 0; i < N_; ++i) pN *= p_;
    if (pN % scale != 0) throw SupportOverflow("coset scale exceeds model depth");

    std::vector<long> c(dim_);
    for (int i = 0; i < L_.rank(); ++i) {
        auto [a, b] = (i < static_cast<int>(coset.size()) ? coset[i] : EElem()).to_coords();
        Rat ca = a * pN, cb = b * pN;
        if (ca.get_den() != 1 || cb.get_den() != 1)
            throw SupportOverflow("coset not p^-N integral");
        c[2 * i] = ca.get_num().get_si();
        c[2 * i + 1] = cb.get_num().get_si();
    }
    long modulus = pN * scale;  // divides m_
    Fn f;
    f.values.assign(size_, Cyc());
    for (long idx = 0; idx < size_; ++idx) {
        auto u = coords_of_index(idx);
        bool in = true;
        for (int i = 0; i < dim_ && in; ++i)
            if (((u[i] - c[i]) % modulus + modulus) % modulus != 0) in = false;
        if (in) f.values[idx] = Cyc(Rat(1));
    }
    return f;
}

WeilModel::Fn WeilModel::from_weight(const SchwartzWeight& w) const {
    Fn f;
    f.values.assign(size_, Cyc());
    for (const auto& term : w.terms) {
        Fn g = coset_indicator(term.coset, term.scale);
        for (long i = 0; i < size_; ++i) f.values[i] = f.values[i] + g.values[i].scale(term.weight);
    }
    return f;
}

WeilModel::Fn WeilModel::apply_w(const Fn& f) const {
    Fn out;
    out.gamma_pow = f.gamma_pow + 1;
    out.values.assign(size_, Cyc());
    // normalization 1/sqrt(|A|) = p^{-2N r}
    Rat norm = pow_rat(Rat(1, p_), 2 * N_ * L_.rank());
    for (long iu = 0; iu < size_; ++iu) {
        auto u = coords_of_index(iu);
        Cyc acc;
        for (long iv = 0; iv < size_; ++iv) {
            if (f.values[iv].is_zero()) continue;
            auto v = coords_of_index(iv);
            long tuv = 0;
            for (int i = 0; i < dim_; ++i) {
                long row = 0;
                for (int j = 0; j < dim_; ++j)
                    row = (row + T_[i][j].get_num().get_si() % m_ * (v[j] % m_)) % m_;
                tuv = (tuv + u[i] % m_ * row) % m_;
            }
            // psi_p(p^{-2N} * t) = zeta_m^{-t}
            Cyc ch = Cyc::root_of_unity(m_, -(tuv % m_));
            acc = acc + f.values[iv] * ch;
        }
        out.values[iu] = acc.scale(norm);
    }
    return out;
}

WeilModel::Fn WeilModel::apply_n(const Fn& f, const Rat& b) const {
    Fn out;
    out.gamma_pow = f.gamma_pow;
    out.values.assign(size_, Cyc());
    for (long idx = 0; idx < size_; ++idx) {
        if (f.values[idx].is_zero()) continue;
        out.values[idx] = f.values[idx] * psi_p(p_, b * norm_at(coords_of_index(idx)));
    }
    return out;
}

WeilModel::Fn WeilModel::apply_m_unit(const Fn& f, const EElem& a) const {
    if (a.is_zero() || valuation(a.norm(), p_) != 0)
        throw Error("apply_m_unit: multiplier must be a p-unit");
    auto [al, be] = a.to_coords();
    if (al.get_den() != 1 || be.get_den() != 1) throw Error("apply_m_unit: multiplier not integral");
    EElem th = EElem::theta_gen(L_.d());
    Rat t = th.trace(), n = th.norm();
    // multiplication by a = al + be*theta on the block basis {e, theta e}:
    // a*e = al e + be (theta e);  a*(theta e) = -be*n e + (al + be*t)(theta e)
    long A = al.get_num().get_si() % m_, B = be.get_num().get_si() % m_;
    long Cn = Rat(-be * n).get_num().get_si() % m_;
    long Dn = Rat(al + be * t).get_num().get_si() % m_;
    Fn out;
    out.gamma_pow = f.gamma_pow;
    out.values.assign(size_, Cyc());
    for (long idx = 0; idx < size_; ++idx) {
        auto u = coords_of_index(idx);
        std::vector<long> v(dim_);
        for (int i = 0; i < L_.rank(); ++i) {
            v[2 * i] = (u[2 * i] * A + u[2 * i + 1] * Cn) % m_;
            v[2 * i + 1] = (u[2 * i] * B + u[2 * i + 1] * Dn) % m_;
        }
        out.values[idx] = f.values[index_of_coords(v)];
    }
    return out;
}

WeilModel::Fn WeilModel::negate_argument(const Fn& f) const {
    Fn out;
    out.gamma_pow = f.gamma_pow;
    out.values.assign(size_, Cyc());
    for (long idx = 0; idx < size_; ++idx) {
        auto u = coords_of_index(idx);
        for (auto& x : u) x = -x;
        out.values[index_of_coords(u)] = f.values[idx];
    }
    return out;
}

WeilModel::Fn WeilModel::scale_fn(const Fn& f, const Cyc& c) const {
    Fn out;
    out.gamma_pow = f.gamma_pow;
    out.values.reserve(f.values.size());
    for (auto& v : f.values) out.values.push_back(v * c);
    return out;
}

WeilModel::Fn WeilModel::add(const Fn& f, const Fn& g) const {
    if (f.gamma_pow != g.gamma_pow) throw Error("adding functions with different gamma powers");
    Fn out;
    out.gamma_pow = f.gamma_pow;
    out.values.reserve(f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i) out.values.push_back(f.values[i] + g.values[i]);
    return out;
}

bool WeilModel::is_zero(const Fn& f) const {
    for (auto& v : f.values)
        if (!v.is_zero()) return false;
    return true;
}

SchwartzWeight WeilModel::to_weight(const Fn& f) const {
    long pN = 1;
    for (int i = 0; i < N_; ++i) pN *= p_;
    SchwartzWeight w;
    for (long idx = 0; idx < size_; ++idx) {
        if (f.values[idx].is_zero()) continue;
        auto u = coords_of_index(idx);
        WeightTerm term;
        term.scale = pN;
        term.weight = f.values[idx].rat_value();
        term.coset.resize(L_.rank());
        for (int i = 0; i < L_.rank(); ++i)
            term.coset[i] =
                EElem::from_coords(make_rat(u[2 * i], pN), make_rat(u[2 * i + 1], pN), L_.d());
        w.terms.push_back(term);
    }
    return w;
}

}  // namespace ariththeta
