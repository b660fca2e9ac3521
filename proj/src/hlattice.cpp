#include "ariththeta/hlattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ariththeta/cache.hpp"
#include "json.hpp"

namespace ariththeta {

using nlohmann::json;

// ---------------------------------------------------------------------------
// EElem
// ---------------------------------------------------------------------------

EElem EElem::theta_gen(long d) {
    if (((d % 2) + 2) % 2 == 0) return EElem(Rat(0), Rat(1, 2), d);
    return EElem(Rat(1, 2), Rat(1, 2), d);
}

EElem EElem::from_coords(const Rat& a, const Rat& b, long d) {
    EElem th = theta_gen(d);
    return EElem(a + b * th.x, b * th.y, d);
}

std::pair<Rat, Rat> EElem::to_coords() const {
    EElem th = theta_gen(d);
    Rat b = y / th.y;
    Rat a = x - b * th.x;
    return {a, b};
}

bool EElem::is_integral() const {
    auto [a, b] = to_coords();
    return a.get_den() == 1 && b.get_den() == 1;
}

static void check_same_field(const EElem& a, const EElem& b) {
    if (!a.is_zero() && !b.is_zero() && a.d != b.d) throw Error("EElem field mismatch");
}

EElem EElem::operator+(const EElem& o) const {
    check_same_field(*this, o);
    return EElem(x + o.x, y + o.y, d ? d : o.d);
}

EElem EElem::operator-(const EElem& o) const { return *this + (-o); }

EElem EElem::operator-() const { return EElem(-x, -y, d); }

EElem EElem::operator*(const EElem& o) const {
    check_same_field(*this, o);
    long dd = d ? d : o.d;
    return EElem(x * o.x + Rat(dd) * y * o.y, x * o.y + y * o.x, dd);
}

EElem EElem::operator/(const EElem& o) const {
    if (o.is_zero()) throw Error("EElem division by zero");
    Rat n = o.norm();
    EElem num = *this * o.conj();
    return EElem(num.x / n, num.y / n, num.d ? num.d : d);
}

bool EElem::operator==(const EElem& o) const {
    if (is_zero() && o.is_zero()) return true;
    return d == o.d && x == o.x && y == o.y;
}

EElem inner(const EVec& u, const EVec& v, const EMat& gram) {
    size_t n = gram.size();
    if (u.size() != n || v.size() != n) throw Error("inner: dimension mismatch");
    EElem s;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s = s + u[i] * v[j].conj() * gram[i][j];
    return s;
}

// ---------------------------------------------------------------------------
// LocalPlace
// ---------------------------------------------------------------------------

LocalPlace::LocalPlace(long d, long p) : d_(d), p_(p) {
    long k = kronecker(d, p);
    kind_ = (k == 1) ? PlaceKind::split : (k == -1) ? PlaceKind::inert : PlaceKind::ramified;
}

Int LocalPlace::split_root(long k) const {
    if (kind_ != PlaceKind::split) throw Error("split_root at nonsplit place");
    if (root_prec_ >= k) return root_;
    Int mod = 1;
    long prec;
    Int s;
    if (p_ != 2) {
        long s0 = -1;
        for (long t = 0; t < p_; ++t)
            if (((t * t - d_) % p_ + p_) % p_ == 0) {
                s0 = t;
                break;
            }
        if (s0 < 0) throw Error("split_root: no square root mod p");
        s = s0;
        prec = 1;
        mod = p_;
        while (prec < k) {
            // Newton: s <- s - (s^2 - d) / (2 s)  mod p^{2 prec}
            prec = std::min(2 * prec, k);
            Int newmod;
            mpz_ui_pow_ui(newmod.get_mpz_t(), p_, prec);
            Int f = (s * s - d_) % newmod;
            Int inv;
            Int twos = (2 * s) % newmod;
            if (mpz_invert(inv.get_mpz_t(), twos.get_mpz_t(), newmod.get_mpz_t()) == 0)
                throw Error("split_root: lift failed");
            s = ((s - f * inv) % newmod + newmod) % newmod;
            mod = newmod;
        }
    } else {
        // d = 1 mod 8; lift bit by bit from s = 1
        s = 1;
        prec = 3;
        mod = 8;
        while (prec < k) {
            Int newmod = mod * 2;
            if ((s * s - d_) % newmod != 0) s += mod / 2;
            if ((s * s - d_) % newmod != 0) throw Error("split_root: 2-adic lift failed");
            mod = newmod;
            ++prec;
        }
    }
    root_ = s;
    root_prec_ = prec;
    return root_;
}

long LocalPlace::val(const EElem& z) const {
    if (z.is_zero()) throw Error("valuation of zero element");
    if (kind_ == PlaceKind::inert) {
        long v = valuation(z.norm(), p_);
        if (v % 2 != 0) throw Error("inert norm valuation must be even");
        return v / 2;
    }
    if (kind_ == PlaceKind::ramified) return valuation(z.norm(), p_);
    // split: v_P(x + y sqrt(d)) via the lifted root
    Int den = lcm(z.x.get_den(), z.y.get_den());
    Int X = z.x.get_num() * (den / z.x.get_den());
    Int Y = z.y.get_num() * (den / z.y.get_den());
    Rat nm = z.norm();
    long vden = valuation(Rat(den), p_);
    if (X == 0 && Y != 0) {
        // v_P(Y sqrt d): sqrt d is a unit at split p
        return valuation(Rat(Y), p_) - vden;
    }
    long vmax = valuation(nm, p_) + 2 * vden + 1;
    if (vmax < 1) vmax = 1;
    Int mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p_, vmax);
    Int s = split_root(vmax);
    Int t = ((X + Y * s) % mod + mod) % mod;
    if (t == 0) throw Error("split valuation: precision exhausted");
    return valuation(t, p_) - vden;
}

// ---------------------------------------------------------------------------
// Smith valuations over the local ring
// ---------------------------------------------------------------------------

std::vector<long> smith_valuations(EMat m, const LocalPlace& P) {
    const int n = static_cast<int>(m.size());
    std::vector<long> vals;
    for (int start = 0; start < n; ++start) {
        int bi = -1, bj = -1;
        long bv = 0;
        for (int i = start; i < n; ++i)
            for (int j = start; j < n; ++j) {
                if (m[i][j].is_zero()) continue;
                long v = P.val(m[i][j]);
                if (bi < 0 || v < bv) {
                    bi = i;
                    bj = j;
                    bv = v;
                }
            }
        if (bi < 0) throw SingularGram("smith_valuations");
        std::swap(m[bi], m[start]);
        for (int i = 0; i < n; ++i) std::swap(m[i][bj], m[i][start]);
        EElem pivot = m[start][start];
        for (int i = start + 1; i < n; ++i) {
            if (m[i][start].is_zero()) continue;
            EElem f = m[i][start] / pivot;
            for (int j = start; j < n; ++j) m[i][j] = m[i][j] - f * m[start][j];
        }
        for (int j = start + 1; j < n; ++j) {
            if (m[start][j].is_zero()) continue;
            EElem f = m[start][j] / pivot;
            for (int i = start; i < n; ++i) m[i][j] = m[i][j] - m[i][start] * f;
        }
        vals.push_back(bv);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

// ---------------------------------------------------------------------------
// HermitianLattice
// ---------------------------------------------------------------------------

HermitianLattice::HermitianLattice(long d, EMat gram) : d_(d), gram_(std::move(gram)) {
    rank_ = static_cast<int>(gram_.size());
    if (rank_ == 0) throw Error("empty Gram");
    for (auto& row : gram_)
        if (static_cast<int>(row.size()) != rank_) throw Error("Gram not square");
    for (int i = 0; i < rank_; ++i) {
        if (!(gram_[i][i].y == 0)) throw Error("Gram diagonal must be rational");
        for (int j = 0; j < rank_; ++j) {
            if (!gram_[i][j].is_zero() && gram_[i][j].d != d_) throw Error("Gram field mismatch");
            gram_[i][j].d = d_;
            if (!(gram_[j][i] == gram_[i][j].conj())) throw Error("Gram not conjugate-symmetric");
        }
    }
}

EElem HermitianLattice::det() const {
    EMat m = gram_;
    int n = rank_;
    EElem det = EElem::from_rat(Rat(1), d_);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return EElem::from_rat(Rat(0), d_);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        for (int i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            EElem f = m[i][col] / m[col][col];
            for (int j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
        }
    }
    return det;
}

static EMat invert(const EMat& a, long d) {
    int n = static_cast<int>(a.size());
    EMat m = a, inv(n, EVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = EElem::from_rat(Rat(i == j ? 1 : 0), d);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularGram("invert");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        EElem pv = m[col][col];
        for (int j = 0; j < n; ++j) {
            m[col][j] = m[col][j] / pv;
            inv[col][j] = inv[col][j] / pv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            EElem f = m[i][col];
            for (int j = 0; j < n; ++j) {
                m[i][j] = m[i][j] - f * m[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

HermitianLattice HermitianLattice::dual() const {
    if (det().is_zero()) throw SingularGram("dual");
    return HermitianLattice(d_, invert(gram_, d_));
}

std::vector<std::vector<Rat>> HermitianLattice::trace_gram() const {
    EElem th = EElem::theta_gen(d_);
    int m = 2 * rank_;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(m));
    auto basis_elem = [&](int alpha) {
        // pair (i, use_theta)
        return std::pair<int, bool>(alpha / 2, alpha % 2 == 1);
    };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            auto [i, ti] = basis_elem(a);
            auto [j, tj] = basis_elem(b);
            EElem v = gram_[i][j];
            if (ti) v = th * v;
            if (tj) v = v * th.conj();
            T[a][b] = v.x;  // real part = Tr/2
        }
    return T;
}

struct LDL {
    std::vector<Rat> D;
    std::vector<std::vector<Rat>> U;  // unit upper triangular
};

static LDL ldl_decompose(std::vector<std::vector<Rat>> A) {
    int n = static_cast<int>(A.size());
    LDL out;
    out.D.assign(n, Rat(0));
    out.U.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) out.U[i][i] = 1;
    for (int i = 0; i < n; ++i) {
        if (A[i][i] <= 0) throw NotPositiveDefinite("ldl pivot");
        out.D[i] = A[i][i];
        for (int j = i + 1; j < n; ++j) out.U[i][j] = A[i][j] / A[i][i];
        for (int r = i + 1; r < n; ++r)
            for (int c = i + 1; c < n; ++c) A[r][c] -= A[r][i] * A[i][c] / A[i][i];
    }
    return out;
}

bool HermitianLattice::is_positive_definite() const {
    try {
        ldl_decompose(trace_gram());
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

LatticeLocalType HermitianLattice::local_type(long p) const {
    LocalPlace P(d_, p);
    LatticeLocalType t;
    t.p = p;
    t.invariants = smith_valuations(gram_, P);
    const auto& v = t.invariants;
    long npos = 0;
    for (long x : v) t.vertex_type += std::max(x, 0L);
    for (long x : v) npos += (x != 0);
    bool all0 = npos == 0;
    bool all1 = std::all_of(v.begin(), v.end(), [](long x) { return x == 1; });
    bool zeros_then_one = npos == 1 && v.back() == 1;
    bool one_zero_then_ones =
        v.front() == 0 && std::all_of(v.begin() + 1, v.end(), [](long x) { return x == 1; });
    using K = LatticeLocalType::Kind;
    if (all0)
        t.kind = K::self_dual;
    else if (P.kind() == PlaceKind::ramified && all1)
        t.kind = K::pi_modular;
    else if (P.kind() == PlaceKind::ramified && v.size() > 1 && one_zero_then_ones)
        t.kind = K::almost_pi_modular;
    else if (zeros_then_one)
        t.kind = K::almost_self_dual;
    else
        t.kind = K::other;
    return t;
}

// ---------------------------------------------------------------------------
// Jacobowitz-style local orthogonal splitting
// ---------------------------------------------------------------------------

namespace {

EElem inner_vec(const EVec& u, const EVec& v, const EMat& g) { return inner(u, v, g); }

// rank over E of a list of coordinate vectors
size_t e_rank(std::vector<EVec> rows) {
    size_t rank = 0;
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c].is_zero()) continue;
            EElem f = rows[i][c] / rows[rank][c];
            for (size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Search a vector of p-unit norm in the span of `basis`; candidates are basis
// vectors and two-term combinations e_i + lambda e_j with lambda over O_E/p.
std::optional<EVec> find_unit_vector(const std::vector<EVec>& basis, const EMat& g,
                                     const LocalPlace& P) {
    for (const auto& b : basis) {
        EElem q = inner_vec(b, b, g);
        if (!q.is_zero() && P.val(q) == 0) return b;
    }
    long d = 0;
    for (const auto& row : g)
        for (const auto& e : row)
            if (!e.is_zero()) d = e.d;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            for (long a = 0; a < P.p(); ++a)
                for (long b = 0; b < P.p(); ++b) {
                    if (a == 0 && b == 0) continue;
                    EElem lam = EElem::from_coords(Rat(a), Rat(b), d);
                    EVec x(basis[i].size());
                    for (size_t k = 0; k < x.size(); ++k) x[k] = basis[i][k] + lam * basis[j][k];
                    EElem q = inner_vec(x, x, g);
                    if (!q.is_zero() && P.val(q) == 0) return x;
                }
        }
    return std::nullopt;
}

}  // namespace

HermitianLattice::SplitResult HermitianLattice::jacobowitz_split(long p) const {
    LocalPlace P(d_, p);
    if (P.kind() == PlaceKind::ramified && p == 2)
        throw UnsupportedPlace("jacobowitz_split at ramified p = 2");
    if (P.kind() != PlaceKind::ramified) {
        auto t = local_type(p);
        if (t.kind != LatticeLocalType::Kind::self_dual)
            throw UnsupportedPlace("jacobowitz_split at unramified p requires a self-dual lattice");
    }

    std::vector<EVec> cur;  // active basis, original coordinates
    for (int i = 0; i < rank_; ++i) {
        EVec e(rank_, EElem::from_rat(Rat(0), d_));
        e[i] = EElem::from_rat(Rat(1), d_);
        cur.push_back(e);
    }
    std::vector<HermitianLattice> blocks;
    EMat columns;  // accumulated new basis vectors

    auto project_out = [&](const std::vector<EVec>& span) {
        // replace cur by the orthogonal complement of span inside cur
        int k = static_cast<int>(span.size());
        EMat B(k, EVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) B[i][j] = inner_vec(span[i], span[j], gram_);
        EMat Binv = invert(B, d_);
        std::vector<EVec> next;
        for (const auto& v : cur) {
            // coefficients c = Binv * <v, span_i>
            std::vector<EElem> rhs(k);
            for (int i = 0; i < k; ++i) rhs[i] = inner_vec(v, span[i], gram_);
            EVec w = v;
            for (int i = 0; i < k; ++i) {
                EElem ci;
                for (int j = 0; j < k; ++j) ci = ci + Binv[i][j] * rhs[j];
                for (int m = 0; m < rank_; ++m) w[m] = w[m] - ci * span[i][m];
            }
            bool zero = std::all_of(w.begin(), w.end(), [](const EElem& e) { return e.is_zero(); });
            if (!zero) next.push_back(w);
        }
        // prune to an E-linearly independent set of the right size
        std::vector<EVec> indep;
        for (auto& w : next) {
            std::vector<EVec> test = indep;
            test.push_back(w);
            if (e_rank(test) == test.size()) indep = test;
            if (indep.size() == cur.size() - span.size()) break;
        }
        if (indep.size() != cur.size() - span.size()) throw Error("jacobowitz_split: projection failed");
        cur = indep;
    };

    while (!cur.empty()) {
        auto unit = find_unit_vector(cur, gram_, P);
        if (unit) {
            EVec x = *unit;
            EMat bg{{inner_vec(x, x, gram_)}};
            blocks.emplace_back(d_, bg);
            columns.push_back(x);
            if (cur.size() == 1) break;
            project_out({x});
            continue;
        }
        if (P.kind() != PlaceKind::ramified)
            throw Error("jacobowitz_split: no unit vector at unramified place");
        // rank-2 pi-modular block: pair with pairing valuation exactly 1
        bool found = false;
        for (size_t i = 0; i < cur.size() && !found; ++i)
            for (size_t j = i + 1; j < cur.size() && !found; ++j) {
                EElem pr = inner_vec(cur[i], cur[j], gram_);
                if (pr.is_zero() || P.val(pr) != 1) continue;
                EElem qi = inner_vec(cur[i], cur[i], gram_);
                EElem qj = inner_vec(cur[j], cur[j], gram_);
                EElem dt = qi * qj - pr * pr.conj();
                if (dt.is_zero() || P.val(dt) != 2) continue;
                EVec x = cur[i], y = cur[j];
                EMat bg{{qi, pr}, {pr.conj(), qj}};
                blocks.emplace_back(d_, bg);
                columns.push_back(x);
                columns.push_back(y);
                if (cur.size() == 2) {
                    cur.clear();
                } else {
                    project_out({x, y});
                }
                found = true;
            }
        if (!found) throw Error("jacobowitz_split: unsupported local structure");
        if (cur.size() == 0) break;
    }

    SplitResult r;
    r.blocks = std::move(blocks);
    // transform columns: r.transform[i][j] = coordinate i of new basis vector j
    r.transform.assign(rank_, EVec(columns.size(), EElem::from_rat(Rat(0), d_)));
    for (size_t j = 0; j < columns.size(); ++j)
        for (int i = 0; i < rank_; ++i) r.transform[i][j] = columns[j][i];
    return r;
}

// ---------------------------------------------------------------------------
// Orthogonal complement with free-basis extraction
// ---------------------------------------------------------------------------

namespace {

// Kernel of an integral matrix (rows x cols) as a basis of column vectors.
std::vector<std::vector<Int>> integer_kernel(std::vector<std::vector<Int>> C, int cols) {
    int rows = static_cast<int>(C.size());
    std::vector<std::vector<Int>> U(cols, std::vector<Int>(cols, 0));
    for (int i = 0; i < cols; ++i) U[i][i] = 1;
    std::vector<bool> active(cols, true);
    for (int r = 0; r < rows; ++r) {
        // Euclidean column reduction on row r over the active columns
        while (true) {
            int jmin = -1;
            for (int j = 0; j < cols; ++j)
                if (active[j] && C[r][j] != 0 && (jmin < 0 || abs(C[r][j]) < abs(C[r][jmin]))) jmin = j;
            if (jmin < 0) break;
            bool others = false;
            for (int j = 0; j < cols; ++j) {
                if (j == jmin || !active[j] || C[r][j] == 0) continue;
                others = true;
                Int q = floor_div(C[r][j], C[r][jmin]);
                for (int i = 0; i < rows; ++i) C[i][j] -= q * C[i][jmin];
                for (int i = 0; i < cols; ++i) U[i][j] -= q * U[i][jmin];
            }
            if (!others) {
                active[jmin] = false;  // pivot column retired
                break;
            }
        }
    }
    std::vector<std::vector<Int>> kernel;
    for (int j = 0; j < cols; ++j)
        if (active[j]) {
            std::vector<Int> col(cols);
            for (int i = 0; i < cols; ++i) col[i] = U[i][j];
            kernel.push_back(col);
        }
    return kernel;
}

// determinant of a rational square matrix
Rat rational_det(std::vector<std::vector<Rat>> m) {
    int n = static_cast<int>(m.size());
    Rat det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace

HermitianLattice HermitianLattice::orth_complement(const EVec& e0) const {
    EElem q0 = inner(e0, e0, gram_);
    if (q0.is_zero()) throw IsotropicVector("orth_complement");
    const int r = rank_;
    // <x, e0> = sum_i x_i w_i with w_i = <e_i, e0>
    EVec w(r);
    for (int i = 0; i < r; ++i) {
        EVec ei(r, EElem::from_rat(Rat(0), d_));
        ei[i] = EElem::from_rat(Rat(1), d_);
        w[i] = inner(ei, e0, gram_);
    }
    // Z-coordinates: x_i = a_i + b_i theta.  Two rational constraint rows
    // (components of sum x_i w_i on the basis {1, sqrt d}); integerize.
    EElem th = EElem::theta_gen(d_);
    std::vector<std::vector<Rat>> Cq(2, std::vector<Rat>(2 * r));
    for (int i = 0; i < r; ++i) {
        EElem c1 = w[i];
        EElem c2 = th * w[i];
        Cq[0][2 * i] = c1.x;
        Cq[1][2 * i] = c1.y;
        Cq[0][2 * i + 1] = c2.x;
        Cq[1][2 * i + 1] = c2.y;
    }
    Int den = 1;
    for (auto& row : Cq)
        for (auto& v : row) den = lcm(den, v.get_den());
    std::vector<std::vector<Int>> C(2, std::vector<Int>(2 * r));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2 * r; ++j) C[i][j] = Rat(Cq[i][j] * den).get_num();
    auto kernel = integer_kernel(C, 2 * r);
    if (kernel.size() != static_cast<size_t>(2 * (r - 1)))
        throw Error("orth_complement: unexpected kernel rank");

    auto to_evec = [&](const std::vector<Int>& col) {
        EVec v(r);
        for (int i = 0; i < r; ++i) v[i] = EElem::from_coords(Rat(col[2 * i]), Rat(col[2 * i + 1]), d_);
        return v;
    };
    auto coords_of = [&](const EVec& v) {
        std::vector<Rat> out(2 * r);
        for (int i = 0; i < r; ++i) {
            auto [a, b] = v[i].to_coords();
            out[2 * i] = a;
            out[2 * i + 1] = b;
        }
        return out;
    };

    // candidate generators: kernel basis vectors and pairwise sums
    std::vector<EVec> cands;
    for (auto& col : kernel) cands.push_back(to_evec(col));
    size_t nb = cands.size();
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = i + 1; j < nb; ++j) {
            EVec s(r);
            for (int k = 0; k < r; ++k) s[k] = cands[i][k] + cands[j][k];
            cands.push_back(s);
        }

    // choose r-1 candidates E-independent whose O_E-span equals the kernel
    std::vector<std::vector<Rat>> KB;  // 2r x 2(r-1), columns = kernel basis
    KB.assign(2 * r, std::vector<Rat>(kernel.size()));
    for (size_t j = 0; j < kernel.size(); ++j)
        for (int i = 0; i < 2 * r; ++i) KB[i][j] = Rat(kernel[j][i]);

    auto index_vs_kernel = [&](const std::vector<EVec>& gens) -> std::optional<Rat> {
        // columns: gens and theta*gens in Z-coordinates; solve KB * X = GB
        size_t k = 2 * gens.size();
        std::vector<std::vector<Rat>> GB(2 * r, std::vector<Rat>(k));
        for (size_t g = 0; g < gens.size(); ++g) {
            EVec tg(r);
            for (int i = 0; i < r; ++i) tg[i] = th * gens[g][i];
            auto c1 = coords_of(gens[g]), c2 = coords_of(tg);
            for (int i = 0; i < 2 * r; ++i) {
                GB[i][2 * g] = c1[i];
                GB[i][2 * g + 1] = c2[i];
            }
        }
        // find k independent rows of KB, invert, apply
        std::vector<int> rows;
        {
            std::vector<std::vector<Rat>> m = KB;
            std::vector<int> rowidx(2 * r);
            for (int i = 0; i < 2 * r; ++i) rowidx[i] = i;
            size_t rank = 0;
            for (size_t c = 0; c < k && rank < k; ++c) {
                int piv = -1;
                for (int i = static_cast<int>(rank); i < 2 * r; ++i)
                    if (m[i][c] != 0) {
                        piv = i;
                        break;
                    }
                if (piv < 0) continue;
                std::swap(m[piv], m[rank]);
                std::swap(rowidx[piv], rowidx[rank]);
                for (int i = 0; i < 2 * r; ++i) {
                    if (i == static_cast<int>(rank) || m[i][c] == 0) continue;
                    Rat f = m[i][c] / m[rank][c];
                    for (size_t j = 0; j < k; ++j) m[i][j] -= f * m[rank][j];
                }
                rows.push_back(rowidx[rank]);
                ++rank;
            }
            if (rank < k) return std::nullopt;
        }
        std::vector<std::vector<Rat>> A(k, std::vector<Rat>(k)), B(k, std::vector<Rat>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) {
                A[i][j] = KB[rows[i]][j];
                B[i][j] = GB[rows[i]][j];
            }
        Rat da = rational_det(A);
        Rat db = rational_det(B);
        if (da == 0) return std::nullopt;
        Rat idx = db / da;
        if (idx < 0) idx = -idx;
        return idx;
    };

    // greedy search over candidate subsets
    std::function<std::optional<std::vector<EVec>>(std::vector<EVec>, size_t)> pick =
        [&](std::vector<EVec> chosen, size_t from) -> std::optional<std::vector<EVec>> {
        if (chosen.size() == static_cast<size_t>(r - 1)) {
            auto idx = index_vs_kernel(chosen);
            if (idx && *idx == 1) return chosen;
            return std::nullopt;
        }
        for (size_t i = from; i < cands.size(); ++i) {
            chosen.push_back(cands[i]);
            if (e_rank(chosen) == chosen.size()) {
                auto res = pick(chosen, i + 1);
                if (res) return res;
            }
            chosen.pop_back();
        }
        return std::nullopt;
    };
    auto basis = pick({}, 0);
    if (!basis) throw NotFree("orth_complement: no free O_E-basis found");
    EMat G(r - 1, EVec(r - 1));
    for (int i = 0; i < r - 1; ++i)
        for (int j = 0; j < r - 1; ++j) G[i][j] = inner((*basis)[i], (*basis)[j], gram_);
    return HermitianLattice(d_, G);
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

void enumerate_rec(const LDL& ldl, const std::vector<Rat>& center, int level, std::vector<long>& x,
                   const Rat& remaining, const Rat& acc,
                   const std::function<void(const std::vector<long>&, const Rat&)>& emit) {
    if (level < 0) {
        emit(x, acc);
        return;
    }
    // t = center_i + sum_{j>i} U_ij (x_j + center_j)
    Rat t = center[level];
    for (size_t j = level + 1; j < x.size(); ++j)
        t += ldl.U[level][j] * (Rat(x[j]) + center[j]);
    double s = std::sqrt(std::max(0.0, remaining.get_d() / ldl.D[level].get_d())) + 1e-9;
    long lo = static_cast<long>(std::floor(-t.get_d() - s)) - 1;
    long hi = static_cast<long>(std::ceil(-t.get_d() + s)) + 1;
    for (long xi = lo; xi <= hi; ++xi) {
        Rat y = Rat(xi) + t;
        Rat term = ldl.D[level] * y * y;
        if (term > remaining) continue;
        x[level] = xi;
        enumerate_rec(ldl, center, level - 1, x, remaining - term, acc + term, emit);
    }
    x[level] = 0;
}

std::string lattice_key(const HermitianLattice& L) {
    std::ostringstream os;
    os << L.d() << "|";
    for (const auto& row : L.gram())
        for (const auto& e : row) os << rat_str(e.x) << "," << rat_str(e.y) << ";";
    return os.str();
}

std::map<Rat, Rat> coset_counts(const HermitianLattice& L, const WeightTerm& term, const Rat& bound) {
    std::ostringstream key;
    key << lattice_key(L) << "|scale=" << term.scale << "|coset=";
    for (const auto& e : term.coset) key << rat_str(e.x) << "," << rat_str(e.y) << ";";
    key << "|bound=" << rat_str(bound);

    auto& cache = EnumerationCache::instance();
    if (auto hit = cache.load(key.str())) return *hit;

    auto T = L.trace_gram();
    int m = 2 * L.rank();
    // Q(c + s*v) with integer v: Gram s^2*T, center coords(c)/s
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A[i][j] = Rat(term.scale) * Rat(term.scale) * T[i][j];
    LDL ldl = ldl_decompose(A);
    std::vector<Rat> center(m, Rat(0));
    for (int i = 0; i < L.rank(); ++i) {
        auto [a, b] = term.coset.size() ? term.coset[i].to_coords() : std::pair<Rat, Rat>{Rat(0), Rat(0)};
        center[2 * i] = a / term.scale;
        center[2 * i + 1] = b / term.scale;
    }
    std::map<Rat, Rat> counts;
    std::vector<long> x(m, 0);
    enumerate_rec(ldl, center, m - 1, x, bound, Rat(0),
                  [&](const std::vector<long>&, const Rat& q) { counts[q] += 1; });
    cache.store(key.str(), counts);
    return counts;
}

}  // namespace

std::map<Rat, Rat> norm_counts(const HermitianLattice& L, const SchwartzWeight& w, const Rat& bound) {
    if (bound > kEnumerationBound) throw PrecisionExceeded("norm bound " + rat_str(bound));
    if (!L.is_positive_definite()) throw NotPositiveDefinite("norm_counts");
    std::map<Rat, Rat> out;
    for (const auto& term : w.terms) {
        if (term.weight == 0) continue;
        for (auto& [t, c] : coset_counts(L, term, bound)) {
            out[t] += term.weight * c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

Rat enumerate_norm(const HermitianLattice& L, const Rat& t, const SchwartzWeight& w) {
    if (t < 0) return Rat(0);
    auto counts = norm_counts(L, w, t);
    auto it = counts.find(t);
    return it == counts.end() ? Rat(0) : it->second;
}

QExpansion theta_qexp(const HermitianLattice& L, const SchwartzWeight& w, const Rat& prec) {
    QExpansion q(prec);
    q.meta().weight = L.rank();
    q.meta().disc = L.d();
    q.meta().normalization = "theta";
    for (auto& [t, c] : norm_counts(L, w, prec)) q.set(t, SymNumber(c));
    return q;
}

SchwartzWeight SchwartzWeight::lattice_indicator(int rank, long d) {
    SchwartzWeight w;
    WeightTerm t;
    t.coset.assign(rank, EElem::from_rat(Rat(0), d));
    t.scale = 1;
    t.weight = Rat(1);
    w.terms.push_back(t);
    return w;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string HermitianLattice::to_json() const {
    json j;
    j["d"] = d_;
    j["rank"] = rank_;
    json rows = json::array();
    for (const auto& row : gram_) {
        json r = json::array();
        for (const auto& e : row) r.push_back({rat_str(e.x), rat_str(e.y)});
        rows.push_back(r);
    }
    j["gram"] = rows;
    return j.dump();
}

HermitianLattice HermitianLattice::from_json(const std::string& text) {
    json j = json::parse(text);
    long d = j.at("d").get<long>();
    EMat gram;
    for (auto& row : j.at("gram")) {
        EVec r;
        for (auto& e : row) {
            if (e.is_array())
                r.push_back(EElem(parse_rat(e[0].get<std::string>()), parse_rat(e[1].get<std::string>()), d));
            else if (e.is_number())
                r.push_back(EElem::from_rat(Rat(e.get<long>()), d));
            else
                r.push_back(EElem(parse_rat(e.get<std::string>()), Rat(0), d));
        }
        gram.push_back(r);
    }
    return HermitianLattice(d, gram);
}

}  // namespace ariththeta
