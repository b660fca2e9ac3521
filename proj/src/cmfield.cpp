#include "ariththeta/cmfield.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ariththeta/errors.hpp"

namespace ariththeta {

bool is_fundamental_discriminant(long d) {
    if (d >= 0) return false;
    auto squarefree = [](long n) {
        n = std::abs(n);
        for (long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    long m = ((d % 4) + 4) % 4;
    if (m == 1) return squarefree(d);
    if (m == 0) {
        long q = d / 4;
        long qm = ((q % 4) + 4) % 4;
        return (qm == 2 || qm == 3) && squarefree(q);
    }
    return false;
}

CMField::CMField(long d) : d_(d) {
    if (!is_fundamental_discriminant(d))
        throw NotFundamental(std::to_string(d));
    if (-d > 1000000L) throw Error("discriminant too large");
    w_ = (d == -3) ? 6 : (d == -4) ? 4 : 2;

    long amax = static_cast<long>(std::sqrt(static_cast<double>(-d) / 3.0)) + 1;
    for (long a = 1; a <= amax; ++a) {
        for (long b = -a; b <= a; ++b) {
            if (((b - d) % 2 + 2) % 2 != 0) continue;
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((std::labs(b) == a || a == c) && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            class_reps_.push_back(QuadForm{a, b, c});
        }
    }
}

QuadForm CMField::principal_form() const {
    if (((d_ % 2) + 2) % 2 == 0) return QuadForm{1, 0, -d_ / 4};
    return QuadForm{1, 1, (1 - d_) / 4};
}

PlaceType CMField::splitting_type(long p) const {
    if (!is_prime(p)) throw Error("splitting_type: not a prime");
    long k = kronecker(d_, p);
    PlaceType t;
    t.p = p;
    t.kind = (k == 1) ? PlaceKind::split : (k == -1) ? PlaceKind::inert : PlaceKind::ramified;
    return t;
}

// Prime discriminant factors of d; the attached Kronecker symbols are the
// genus characters (their product over all factors is the principal character
// on represented values).
static std::vector<long> prime_discriminant_factors(long d) {
    std::vector<long> out;
    long rest = d;
    for (auto& [p, e] : factor_positive(Int(-d))) {
        if (p == 2) continue;
        long pstar = (p % 4 == 1) ? p : -p;
        out.push_back(pstar);
        rest /= pstar;
    }
    if (rest != 1) out.push_back(rest);  // one of -4, 8, -8
    return out;
}

static long represented_value_coprime_to(const QuadForm& f, long m) {
    for (long x = 0; x <= 12; ++x)
        for (long y = -12; y <= 12; ++y) {
            long v = f.a * x * x + f.b * x * y + f.c * y * y;
            if (v > 0 && std::gcd(v, m) == 1) return v;
        }
    throw Error("no represented value coprime to modulus");
}

std::vector<QuadForm> CMField::principal_genus_reps() const {
    std::vector<long> chars = prime_discriminant_factors(d_);
    std::vector<QuadForm> out;
    for (const auto& f : class_reps_) {
        long n = represented_value_coprime_to(f, 2 * std::labs(d_));
        bool principal = true;
        for (long di : chars)
            if (kronecker(di, n) != 1) {
                principal = false;
                break;
            }
        if (principal) out.push_back(f);
    }
    return out;
}

std::string CMField::to_csv_row() const {
    std::ostringstream os;
    os << d_ << "," << class_number() << "," << w_ << ",";
    for (size_t i = 0; i < class_reps_.size(); ++i) {
        if (i) os << ";";
        os << class_reps_[i].a << ":" << class_reps_[i].b << ":" << class_reps_[i].c;
    }
    return os.str();
}

long form_representation_count(const QuadForm& f, const Rat& t) {
    if (f.disc() >= 0 || f.a <= 0) throw NotPositiveDefinite("form_representation_count");
    if (t < 0) return 0;
    if (t.get_den() != 1) return 0;
    if (t == 0) return 1;
    Int tt = t.get_num();
    if (!tt.fits_slong_p()) throw PrecisionExceeded("form count target too large");
    long n = tt.get_si();
    long absd = -f.disc();
    long count = 0;
    long ymax = static_cast<long>(std::sqrt(4.0 * f.a * n / absd)) + 1;
    for (long y = -ymax; y <= ymax; ++y) {
        // solve a x^2 + (b y) x + (c y^2 - n) = 0 over Z
        Int delta = Int(f.disc()) * y * y + Int(4) * f.a * n;
        if (delta < 0) continue;
        Int r = sqrt(delta);
        if (r * r != delta) continue;
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            Int num = -Int(f.b) * y + (sgn == 0 ? r : -r);
            if (num % (2 * f.a) != 0) continue;
            ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Dirichlet L-values at s = 0.
// ---------------------------------------------------------------------------

Rat dirichlet_L0_exact(long d) {
    if (!is_fundamental_discriminant(d)) throw NotFundamental(std::to_string(d));
    long q = -d;
    Rat s(0);
    for (long a = 1; a < q; ++a) s += Rat(kronecker(d, a)) * Rat(a);
    return -s / Rat(q);
}

static const std::vector<Rat>& bernoulli_table(size_t count) {
    static std::vector<Rat> tbl;  // B_0, B_1, B_2, ...
    if (tbl.size() < count) {
        tbl.assign(count, Rat(0));
        tbl[0] = 1;
        for (size_t m = 1; m < count; ++m) {
            Rat s(0);
            for (size_t j = 0; j < m; ++j)
                s += Rat(binomial(static_cast<long>(m) + 1, static_cast<long>(j))) * tbl[j];
            tbl[m] = -s / Rat(static_cast<long>(m) + 1);
        }
    }
    return tbl;
}

// d/ds Hurwitz zeta(s, x) at s = 0, by Euler-Maclaurin.  0 < x <= 1.
static MpFloat hurwitz_zeta_ds0(const Rat& x, mpfr_prec_t prec) {
    const long N = static_cast<long>(prec / 4) + 12;
    const size_t M = 30;
    const auto& B = bernoulli_table(2 * M + 2);
    MpFloat s(prec);
    for (long k = 0; k < N; ++k)
        s -= MpFloat::from_rat(x + k, prec).log();
    MpFloat xn = MpFloat::from_rat(x + N, prec);
    MpFloat lxn = xn.log();
    s += xn * lxn - xn;
    s -= MpFloat::from_rat(Rat(1, 2), prec) * lxn;
    for (size_t j = 1; j <= M; ++j) {
        Rat coef = B[2 * j] / (Rat(2 * static_cast<long>(j)) * Rat(2 * static_cast<long>(j) - 1));
        s += MpFloat::from_rat(coef, prec) * xn.pow_long(1 - 2 * static_cast<long>(j));
    }
    return s;
}

static MpFloat dirichlet_L_deriv0(long d, mpfr_prec_t prec) {
    long q = -d;
    MpFloat s(prec);
    for (long a = 1; a < q; ++a) {
        long chi = kronecker(d, a);
        if (chi == 0) continue;
        MpFloat term = hurwitz_zeta_ds0(make_rat(a, q), prec);
        if (chi > 0)
            s += term;
        else
            s -= term;
    }
    // L(s) = q^{-s} sum_a chi(a) zeta(s, a/q):  L'(0) = -log(q) L(0) + sum chi zeta'(0, a/q)
    MpFloat l0 = MpFloat::from_rat(dirichlet_L0_exact(d), prec);
    return s - MpFloat::from_long(q, prec).log() * l0;
}

MpFloat dirichlet_L(long d, LOrder order, long digits) {
    if (!is_fundamental_discriminant(d)) throw NotFundamental(std::to_string(d));
    mpfr_prec_t prec = MpFloat::digits_to_bits(digits);
    if (order == LOrder::value0) return MpFloat::from_rat(dirichlet_L0_exact(d), prec);
    MpFloat lo = dirichlet_L_deriv0(d, prec + 32);
    MpFloat hi = dirichlet_L_deriv0(d, prec + 96);
    MpFloat diff = (lo - hi).abs();
    MpFloat tol = MpFloat::from_rat(Rat(1), prec) / MpFloat::from_long(10, prec).pow_long(digits - 4);
    if (diff > tol)
        throw PrecisionUnreachable("dirichlet_L deriv0 at d=" + std::to_string(d));
    return hi;
}

std::string discriminant_table_csv(long max_abs_d) {
    std::ostringstream os;
    os << "d,h,w,forms\n";
    for (long d = -3; d >= -max_abs_d; --d)
        if (is_fundamental_discriminant(d)) os << CMField(d).to_csv_row() << "\n";
    return os.str();
}

std::vector<DiscRow> load_discriminant_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<DiscRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        DiscRow row;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, field, ',');
        row.d = std::stol(field);
        std::getline(ls, field, ',');
        row.h = std::stol(field);
        std::getline(ls, field, ',');
        row.w = std::stol(field);
        std::getline(ls, field);
        std::istringstream fs(field);
        std::string item;
        while (std::getline(fs, item, ';')) {
            QuadForm f;
            if (sscanf(item.c_str(), "%ld:%ld:%ld", &f.a, &f.b, &f.c) != 3)
                throw ParseError("bad form entry '" + item + "'");
            row.forms.push_back(f);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ariththeta
