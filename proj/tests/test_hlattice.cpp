#include <random>

#include "ariththeta/hlattice.hpp"
#include "doctest.h"

using namespace ariththeta;

namespace {

HermitianLattice diag_lattice(long d, std::vector<Rat> diag) {
    int n = static_cast<int>(diag.size());
    EMat g(n, EVec(n, EElem::from_rat(Rat(0), d)));
    for (int i = 0; i < n; ++i) g[i][i] = EElem::from_rat(diag[i], d);
    return HermitianLattice(d, g);
}

// rank-2 lattice with isotropic basis X, Y and <X,Y> = sqrt(d) (pi-modular at
// the odd ramified primes of d)
HermitianLattice pi_modular_plane(long d) {
    EElem z = EElem::from_rat(Rat(0), d);
    EElem pi = EElem::sqrt_d(d);
    EMat g{{z, pi}, {pi.conj(), z}};
    return HermitianLattice(d, g);
}

}  // namespace

TEST_CASE("EElem arithmetic and coordinates") {
    EElem a(Rat(1), Rat(2), -4);  // 1 + 2 sqrt(-4)
    CHECK(a.norm() == Rat(17));   // 1 + 4*4
    CHECK(a.conj().y == Rat(-2));
    CHECK((a / a) == EElem::from_rat(Rat(1), -4));
    for (long d : {-3L, -4L, -7L, -8L, -20L}) {
        EElem th = EElem::theta_gen(d);
        CHECK(th.is_integral());
        // theta satisfies a monic integral quadratic: theta^2 - Tr*theta + Nm = 0
        EElem zero = th * th - EElem::from_rat(th.trace(), d) * th + EElem::from_rat(th.norm(), d);
        CHECK(zero.is_zero());
        EElem b = EElem::from_coords(Rat(3), Rat(-5), d);
        auto [x, y] = b.to_coords();
        CHECK(x == Rat(3));
        CHECK(y == Rat(-5));
    }
}

TEST_CASE("dual lattice") {
    CHECK(diag_lattice(-4, {Rat(1)}).dual().gram()[0][0] == EElem::from_rat(Rat(1), -4));
    CHECK(diag_lattice(-4, {Rat(2)}).dual().gram()[0][0] == EElem::from_rat(Rat(1, 2), -4));
    // pi-modular rank 2 at d=-4 with pairing 1+i: dual = pi^{-1} * lattice
    EElem z = EElem::from_rat(Rat(0), -4);
    EElem w(Rat(1), Rat(1, 2), -4);  // 1 + i = 1 + (1/2) sqrt(-4)
    HermitianLattice L(-4, {{z, w}, {w.conj(), z}});
    HermitianLattice D = L.dual();
    // gram of pi^{-1} L is gram / Nm(pi) = gram / 2
    CHECK(D.gram()[0][1] == EElem(Rat(1, 2), Rat(1, 4), -4));
    CHECK(D.gram()[0][0].is_zero());
    // involution
    CHECK(D.dual().gram()[0][1] == L.gram()[0][1]);
}

TEST_CASE("dual is an involution (random grams)") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        long d = (iter % 2) ? -4 : -7;
        EElem z01 = EElem::from_coords(Rat(c(rng)), Rat(c(rng)), d);
        EMat g{{EElem::from_rat(Rat(c(rng) + 5), d), z01},
               {z01.conj(), EElem::from_rat(Rat(c(rng) + 5), d)}};
        HermitianLattice L(d, g);
        if (L.det().is_zero()) continue;
        HermitianLattice DD = L.dual().dual();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(DD.gram()[i][j] == L.gram()[i][j]);
    }
}

TEST_CASE("local types") {
    CHECK(diag_lattice(-4, {Rat(1)}).local_type(3).kind == LatticeLocalType::Kind::self_dual);
    CHECK(diag_lattice(-4, {Rat(1), Rat(1)}).local_type(5).kind ==
          LatticeLocalType::Kind::self_dual);
    CHECK(diag_lattice(-4, {Rat(1), Rat(3)}).local_type(3).kind ==
          LatticeLocalType::Kind::almost_self_dual);

    auto M = pi_modular_plane(-3);
    auto t = M.local_type(3);
    CHECK(t.kind == LatticeLocalType::Kind::pi_modular);
    CHECK(t.invariants == std::vector<long>{1, 1});
    CHECK(M.local_type(5).kind == LatticeLocalType::Kind::self_dual);

    // M + unit rank-1 block: almost pi-modular, vertex type 2
    EElem z = EElem::from_rat(Rat(0), -3);
    EElem pi = EElem::sqrt_d(-3);
    EElem one = EElem::from_rat(Rat(1), -3);
    EMat g{{z, pi, z}, {pi.conj(), z, z}, {z, z, one}};
    auto t3 = HermitianLattice(-3, g).local_type(3);
    CHECK(t3.kind == LatticeLocalType::Kind::almost_pi_modular);
    CHECK(t3.vertex_type == 2);
}

TEST_CASE("jacobowitz split") {
    // identity gram at inert p: two unit blocks
    auto r = diag_lattice(-4, {Rat(1), Rat(1)}).jacobowitz_split(3);
    REQUIRE(r.blocks.size() == 2);
    for (auto& b : r.blocks) {
        CHECK(b.rank() == 1);
        CHECK(valuation(b.gram()[0][0].x, 3) == 0);
    }

    // pi-modular rank 2 at odd ramified p: a single M block
    auto rm = pi_modular_plane(-3).jacobowitz_split(3);
    REQUIRE(rm.blocks.size() == 1);
    CHECK(rm.blocks[0].rank() == 2);
    CHECK(rm.blocks[0].local_type(3).kind == LatticeLocalType::Kind::pi_modular);

    // rank 3 = M + unit at odd ramified p
    EElem z = EElem::from_rat(Rat(0), -3);
    EElem pi = EElem::sqrt_d(-3);
    EElem one = EElem::from_rat(Rat(1), -3);
    EMat g{{one, z, z}, {z, z, pi}, {z, pi.conj(), z}};
    auto r3 = HermitianLattice(-3, g).jacobowitz_split(3);
    REQUIRE(r3.blocks.size() == 2);
    bool unit_seen = false, m_seen = false;
    for (auto& b : r3.blocks) {
        if (b.rank() == 1) {
            unit_seen = true;
            CHECK(valuation(b.gram()[0][0].x, 3) == 0);
        } else {
            m_seen = true;
            CHECK(b.local_type(3).kind == LatticeLocalType::Kind::pi_modular);
        }
    }
    CHECK(unit_seen);
    CHECK(m_seen);

    CHECK_THROWS_AS(pi_modular_plane(-4).jacobowitz_split(2), UnsupportedPlace);
}

TEST_CASE("orthogonal complement") {
    long d = -4;
    auto L = diag_lattice(d, {Rat(1), Rat(1)});
    EVec e0{EElem::from_rat(Rat(1), d), EElem::from_rat(Rat(0), d)};
    auto C = L.orth_complement(e0);
    CHECK(C.rank() == 1);
    CHECK(C.gram()[0][0] == EElem::from_rat(Rat(1), d));

    auto L2 = diag_lattice(d, {Rat(1), Rat(2)});
    EVec e1{EElem::from_rat(Rat(0), d), EElem::from_rat(Rat(1), d)};
    CHECK(L2.orth_complement(e1).gram()[0][0] == EElem::from_rat(Rat(1), d));

    // complement of a unit-norm vector in an M block: rank 1 with unit determinant
    auto M = pi_modular_plane(-3);
    // e0 = X/pi + Y: q(e0) = Tr(<X,Y>/pi) = Tr(1) = 2, a 3-adic unit
    EElem pi = EElem::sqrt_d(-3);
    EVec e0m{EElem::from_rat(Rat(1), -3) / pi, EElem::from_rat(Rat(1), -3)};
    EElem q0 = inner(e0m, e0m, M.gram());
    REQUIRE(!q0.is_zero());
    REQUIRE(valuation(q0.x, 3) == 0);
    auto CM = M.orth_complement(e0m);
    CHECK(CM.rank() == 1);
    CHECK(valuation(CM.gram()[0][0].x, 3) == 0);

    // isotropic vector is rejected
    EVec iso{EElem::from_rat(Rat(1), -3), EElem::from_rat(Rat(0), -3)};
    CHECK_THROWS_AS(M.orth_complement(iso), IsotropicVector);
}

TEST_CASE("theta q-expansion of Z[i]") {
    auto L = diag_lattice(-4, {Rat(1)});
    auto w = SchwartzWeight::lattice_indicator(1, -4);
    auto q = theta_qexp(L, w, Rat(10));
    // sum of two squares: 1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8
    std::vector<long> expect{1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8};
    for (long t = 0; t <= 10; ++t) CHECK(q.coeff(Rat(t)).rat() == Rat(expect[t]));
    CHECK(q.meta().weight == 1);

    CHECK(enumerate_norm(L, Rat(1), w) == Rat(4));
    CHECK(enumerate_norm(L, Rat(3), w) == Rat(0));
    CHECK(enumerate_norm(L, Rat(0), w) == Rat(1));
    CHECK(theta_qexp(L, SchwartzWeight::zero(), Rat(5)).nonzero_count() == 0);
}

TEST_CASE("theta of direct sum is the Cauchy product") {
    auto L1 = diag_lattice(-4, {Rat(1)});
    auto L2 = diag_lattice(-4, {Rat(1), Rat(1)});
    auto w1 = SchwartzWeight::lattice_indicator(1, -4);
    auto w2 = SchwartzWeight::lattice_indicator(2, -4);
    auto t1 = theta_qexp(L1, w1, Rat(30));
    auto t2 = theta_qexp(L2, w2, Rat(30));
    auto prod = t1.cauchy_mul(t1);
    CHECK(prod.same_coeffs(t2));
    // and with different summands
    auto L3 = diag_lattice(-4, {Rat(2)});
    auto L13 = diag_lattice(-4, {Rat(1), Rat(2)});
    CHECK(theta_qexp(L1, w1, Rat(25))
              .cauchy_mul(theta_qexp(L3, w1, Rat(25)))
              .same_coeffs(theta_qexp(L13, w2, Rat(25))));
}

TEST_CASE("coset weights in theta count") {
    // indicator of (1 + 2 Z[i]): vectors x = 1 + 2(a+bi), q = (1+2a)^2 + 4b^2
    auto L = diag_lattice(-4, {Rat(1)});
    SchwartzWeight w;
    WeightTerm term;
    term.coset = {EElem::from_rat(Rat(1), -4)};
    term.scale = 2;
    term.weight = Rat(1);
    w.terms.push_back(term);
    auto q = theta_qexp(L, w, Rat(20));
    for (long t = 0; t <= 20; ++t) {
        long direct = 0;
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b)
                if ((1 + 2 * a) * (1 + 2 * a) + 4 * b * b == t) ++direct;
        CHECK(q.coeff(Rat(t)).rat() == Rat(direct));
    }
}

TEST_CASE("counts invariant under unimodular basis change") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> c(-2, 2);
    long d = -4;
    auto L = diag_lattice(d, {Rat(1), Rat(3)});
    auto w = SchwartzWeight::lattice_indicator(2, d);
    auto base = theta_qexp(L, w, Rat(20));
    for (int iter = 0; iter < 5; ++iter) {
        // random unimodular T over O_E: elementary operations
        EMat T{{EElem::from_rat(Rat(1), d), EElem::from_coords(Rat(c(rng)), Rat(c(rng)), d)},
               {EElem::from_rat(Rat(0), d), EElem::from_rat(Rat(1), d)}};
        if (iter % 2) std::swap(T[0], T[1]);
        // G' = T^t G conj(T)
        const auto& G = L.gram();
        EMat Gp(2, EVec(2));
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                EElem s;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) s = s + T[i][k] * G[i][j] * T[j][l].conj();
                Gp[k][l] = s;
            }
        HermitianLattice Lp(d, Gp);
        CHECK(theta_qexp(Lp, w, Rat(20)).same_coeffs(base));
    }
}

TEST_CASE("lattice json io") {
    auto M = pi_modular_plane(-3);
    auto M2 = HermitianLattice::from_json(M.to_json());
    CHECK(M2.d() == -3);
    CHECK(M2.gram()[0][1] == M.gram()[0][1]);
    CHECK_THROWS(HermitianLattice::from_json(
        "{\"d\": -4, \"rank\": 1, \"gram\": [[[\"1\",\"0\"],[\"0\",\"1\"]]]}"));
}
