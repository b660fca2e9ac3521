#include <random>

#include "ariththeta/symnum.hpp"
#include "doctest.h"

using namespace ariththeta;

TEST_CASE("add with cancellation") {
    // (1/2 + log 2) + (1/2 - log 2) = 1
    SymNumber a = SymNumber(Rat(1, 2)) + SymNumber::log_prime(2);
    SymNumber b = SymNumber(Rat(1, 2)) + SymNumber::log_prime(2, Rat(-1));
    CHECK(a + b == SymNumber(Rat(1)));
    CHECK((a + b).is_rational());

    CHECK(SymNumber::log_prime(2) + SymNumber::log_prime(2) == SymNumber::log_prime(2, Rat(2)));

    SymNumber c = SymNumber::gamma() + SymNumber::log_pi();
    CHECK(c + SymNumber() == c);
}

TEST_CASE("scale") {
    SymNumber a = SymNumber(Rat(-1)) + SymNumber::log_prime(2, Rat(-2));
    SymNumber exp = SymNumber(Rat(-2)) + SymNumber::log_prime(2, Rat(-4));
    CHECK(a.scale(Rat(2)) == exp);
    CHECK(SymNumber::gamma().scale(Rat(0)).is_zero());
    CHECK(SymNumber::log_prime(5, Rat(3)).scale(Rat(1, 3)) == SymNumber::log_prime(5));
}

TEST_CASE("mul contract") {
    SymNumber a = SymNumber::log_prime(2) + SymNumber::gamma();
    CHECK(SymNumber(Rat(3)).mul(a) == a.scale(Rat(3)));
    CHECK_THROWS_AS(SymNumber::log_prime(2).mul(SymNumber::log_prime(3)), MixedProduct);
    // (-1) * (-(1 + log 4)) = 1 + 2 log 2
    SymNumber b = SymNumber(Rat(-1)) + SymNumber::log_prime(2, Rat(-2));
    CHECK(SymNumber(Rat(-1)).mul(b) == SymNumber(Rat(1)) + SymNumber::log_prime(2, Rat(2)));
}

TEST_CASE("log_of_rational") {
    CHECK(log_of_rational(Rat(4)) == SymNumber::log_prime(2, Rat(2)));
    CHECK(log_of_rational(Rat(1)).is_zero());
    CHECK(log_of_rational(Rat(9, 5)) ==
          SymNumber::log_prime(3, Rat(2)) + SymNumber::log_prime(5, Rat(-1)));
    CHECK_THROWS_AS(log_of_rational(Rat(-2)), NonPositive);
}

TEST_CASE("log multiplicativity property") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(1, 400);
    for (int i = 0; i < 100; ++i) {
        Rat a(num(rng), num(rng)), b(num(rng), num(rng));
        a.canonicalize();
        b.canonicalize();
        CHECK(log_of_rational(a * b) == log_of_rational(a) + log_of_rational(b));
    }
}

TEST_CASE("reduce_mod_logs") {
    SymNumber a = SymNumber(Rat(1)) + SymNumber::log_prime(2) + SymNumber::log_prime(3);
    CHECK(a.reduce_mod_logs({2}) == SymNumber(Rat(1)) + SymNumber::log_prime(3));
    CHECK(SymNumber::log_prime(5).reduce_mod_logs({5}).is_zero());
    CHECK(SymNumber::gamma().reduce_mod_logs({2, 3}) == SymNumber::gamma());
}

TEST_CASE("vector space laws (random)") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coef(-20, 20);
    auto rnd = [&] {
        SymNumber s = SymNumber(make_rat(coef(rng), 7)) + SymNumber::gamma(Rat(coef(rng))) +
                      SymNumber::log_prime(2, make_rat(coef(rng), 3)) +
                      SymNumber::log_prime(7, Rat(coef(rng)));
        return s;
    };
    for (int i = 0; i < 50; ++i) {
        SymNumber a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        Rat q = make_rat(coef(rng), 5), r = make_rat(coef(rng) == 0 ? 1 : coef(rng), 3);
        CHECK((a + b).scale(q) == a.scale(q) + b.scale(q));
        CHECK(a.scale(q * r) == a.scale(q).scale(r));
    }
}

TEST_CASE("shadow consistency") {
    // equality of SymNumbers implies shadows agree
    SymNumber a = SymNumber(Rat(2, 3)) + SymNumber::log_prime(5, Rat(-1, 2)) + SymNumber::gamma();
    SymNumber b = (SymNumber(Rat(4, 3)) + SymNumber::log_prime(5, Rat(-1)) +
                   SymNumber::gamma(Rat(2)))
                      .scale(Rat(1, 2));
    REQUIRE(a == b);
    MpFloat diff = a.shadow(nullptr, 64) - b.shadow(nullptr, 64);
    CHECK(diff.abs() < MpFloat::from_rat(Rat(1, 1000000000000000000L), 64));
    // numeric sanity: 1 + log 2 ~ 1.6931
    MpFloat v = (SymNumber(Rat(1)) + SymNumber::log_prime(2)).shadow(nullptr, 40);
    CHECK(std::abs(v.to_double() - 1.6931471805599453) < 1e-12);
}

TEST_CASE("opaque registry is write-once") {
    OpaqueRegistry reg;
    reg.register_value("FALTINGS", MpFloat::from_double(1.5, 128));
    reg.register_value("FALTINGS", MpFloat::from_double(1.5, 128));  // same value ok
    CHECK_THROWS_AS(reg.register_value("FALTINGS", MpFloat::from_double(2.5, 128)), Error);
    SymNumber s = SymNumber::opaque("FALTINGS", Rat(2));
    CHECK(std::abs(s.shadow(&reg, 32).to_double() - 3.0) < 1e-12);
    CHECK_THROWS_AS(SymNumber::opaque("MISSING").shadow(&reg, 32), Error);
}

TEST_CASE("json round trip") {
    SymNumber a = SymNumber(Rat(-7, 3)) + SymNumber::gamma(Rat(1, 2)) + SymNumber::log_pi(Rat(4)) +
                  SymNumber::log_prime(3, Rat(5, 7)) + SymNumber::opaque("LLOGDERIV(-4)", Rat(2));
    CHECK(SymNumber::from_json(a.to_json()) == a);
    // coefficient extraction after add/scale round-trips exactly
    SymNumber b = a + a.scale(Rat(3, 2));
    CHECK(b.log_coeff(3) == Rat(5, 7) * Rat(5, 2));
    CHECK(SymNumber::from_json(b.to_json()) == b);
}

TEST_CASE("psi at integers") {
    CHECK(psi_integer(1) == SymNumber::gamma(Rat(-1)));
    CHECK(psi_integer(2) == SymNumber::gamma(Rat(-1)) + SymNumber(Rat(1)));
    CHECK(psi_integer(3) == SymNumber::gamma(Rat(-1)) + SymNumber(Rat(3, 2)));
}
