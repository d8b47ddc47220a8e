#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <random>

#include "loopfix/cyclotomic.hpp"

using namespace loopfix;

namespace {

std::mt19937 rng(20240811);

long random_order() {
    static const long orders[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 24, 30};
    return orders[rng() % std::size(orders)];
}

Cyclotomic random_cyclotomic(long n) {
    Cyclotomic c = Cyclotomic::zero();
    for (int i = 0; i < 4; ++i) {
        long long k = (long long)(rng() % (unsigned)n);
        long long num = (long long)(rng() % 9) - 4;
        c += rat(num, 1 + (long long)(rng() % 3)) * Cyclotomic::root_of_unity(n, k);
    }
    return c;
}

double dist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("roots of unity basics") {
    CHECK(Cyclotomic::root_of_unity(1, 0) == Cyclotomic::one());
    auto i4 = Cyclotomic::root_of_unity(4, 1);
    CHECK(i4 * i4 == Cyclotomic::root_of_unity(4, 2));
    CHECK(i4 * i4 == -Cyclotomic::one());
    for (int trial = 0; trial < 20; ++trial) {
        long n = random_order();
        long long k = (long long)(rng() % (unsigned)n);
        auto a = Cyclotomic::root_of_unity(n, k);
        auto b = Cyclotomic::root_of_unity(n, n - k);
        CHECK(a * b == Cyclotomic::one());
    }
}

TEST_CASE("embedding accuracy up to order 10^4") {
    const double pi = std::numbers::pi;
    struct Probe {
        long n;
        long long k;
    } probes[] = {{5, 3}, {24, 17}, {360, 300}, {9973, 1234}, {10000, 123}, {10000, 3999}};
    for (auto [n, k] : probes) {
        auto z = Cyclotomic::root_of_unity(n, k);
        std::complex<double> expect = std::polar(1.0, 2.0 * pi * double(k) / double(n));
        CHECK(dist(z.shadow(), expect) < 1e-9);
        CHECK(dist(z.embed(), expect) < 1e-9);
    }
}

TEST_CASE("phi reduction identities") {
    // zeta_3 + zeta_3^2 = -1, by reduction modulo x^2 + x + 1
    auto z3 = Cyclotomic::root_of_unity(3, 1);
    CHECK(z3 + z3 * z3 == Cyclotomic(-1));
    // conj(zeta_8) = zeta_8^7
    auto z8 = Cyclotomic::root_of_unity(8, 1);
    CHECK(z8.conj() == Cyclotomic::root_of_unity(8, 7));
}

TEST_CASE("to_rational") {
    CHECK(Cyclotomic::one().to_rational() == Rational(1));
    CHECK(Cyclotomic(rat(7, 3)).to_rational() == rat(7, 3));
    CHECK(!Cyclotomic::root_of_unity(5, 1).to_rational().has_value());
    // zeta_8 + zeta_8^7 = sqrt(2) is irrational
    auto z8 = Cyclotomic::root_of_unity(8, 1);
    auto sqrt2 = z8 + Cyclotomic::root_of_unity(8, 7);
    CHECK(!sqrt2.to_rational().has_value());
    CHECK(std::abs(sqrt2.embed().real() - std::sqrt(2.0)) < 1e-12);
    CHECK_THROWS_AS(sqrt2.require_rational("test"), error);
    // but sqrt(2)^2 = 2 is rational again
    CHECK((sqrt2 * sqrt2).to_rational() == Rational(2));
}

TEST_CASE("field axioms on random elements") {
    for (int trial = 0; trial < 25; ++trial) {
        long n1 = random_order(), n2 = random_order();
        auto a = random_cyclotomic(n1);
        auto b = random_cyclotomic(n2);
        auto c = random_cyclotomic(n1);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Cyclotomic::zero());
        CHECK(dist((a * b).embed(), a.embed() * b.embed()) < 1e-9);
        if (!a.is_zero()) {
            CHECK(a.inv() * a == Cyclotomic::one());
            CHECK(a / a == Cyclotomic::one());
        }
    }
    CHECK_THROWS_AS(Cyclotomic::zero().inv(), error);
}

TEST_CASE("conjugation is an involutive ring homomorphism") {
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_cyclotomic(random_order());
        auto b = random_cyclotomic(random_order());
        CHECK(a.conj().conj() == a);
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK((a * b).conj() == a.conj() * b.conj());
        // |a|^2 is real: invariant under conjugation
        auto norm = a * a.conj();
        CHECK(norm.conj() == norm);
        CHECK(std::abs(norm.embed().imag()) < 1e-9);
    }
}

TEST_CASE("promotion commutes with arithmetic") {
    for (int trial = 0; trial < 25; ++trial) {
        long n = random_order();
        long m = n * (1 + (long)(rng() % 4));
        auto a = random_cyclotomic(n);
        auto b = random_cyclotomic(n);
        CHECK(a.promoted(m) + b.promoted(m) == (a + b).promoted(m));
        CHECK(a.promoted(m) * b.promoted(m) == (a * b).promoted(m));
        CHECK(a.promoted(m).conj() == a.conj().promoted(m));
        CHECK(a.promoted(m) == a);  // equality is promotion-invariant
        if (!a.is_zero()) CHECK(a.promoted(m).inv() == a.inv().promoted(m));
    }
}

TEST_CASE("unit phase") {
    CHECK(Cyclotomic::unit_phase(rat(1, 4)) == Cyclotomic::root_of_unity(4, 1));
    CHECK(Cyclotomic::unit_phase(rat(-1, 4)) == Cyclotomic::root_of_unity(4, 3));
    CHECK(Cyclotomic::unit_phase(rat(7, 1)) == Cyclotomic::one());
    CHECK(Cyclotomic::unit_phase(rat(3, 2)) == -Cyclotomic::one());
}
