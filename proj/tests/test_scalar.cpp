#include <catch2/catch_amalgamated.hpp>

#include "mhcq/scalar.hpp"

#include <random>

using namespace mhcq::exactalg;

namespace {

Scalar random_scalar(std::mt19937_64& rng, bool complex_part = true) {
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 6);
    Scalar s(Rat(num(rng), den(rng)));
    if (complex_part) s.im = Rat(num(rng), den(rng));
    return s;
}

} // namespace

TEST_CASE("gaussian rational field arithmetic is exact") {
    Scalar i = Scalar::iunit();
    CHECK(i * i == Scalar(-1));
    CHECK(Scalar::frac(1, 3) + Scalar::frac(1, 6) == Scalar::frac(1, 2));

    Scalar a(Rat(3, 4), Rat(-2, 5));
    CHECK(a * a.inv() == Scalar::one());
    CHECK(a / a == Scalar::one());
    CHECK_THROWS_AS(a / Scalar::zero(), std::domain_error);
}

TEST_CASE("conjugation is an involutive field automorphism fixing rationals") {
    std::mt19937_64 rng(20240801);
    for (int it = 0; it < 200; ++it) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        CHECK(a.conj().conj() == a);
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
    Scalar r = Scalar::frac(-7, 3);
    CHECK(r.conj() == r);
}

TEST_CASE("canonical serialization and parsing") {
    CHECK(to_string(Scalar::frac(1, 2)) == "1/2");
    CHECK(to_string(Scalar(-3)) == "-3/1");
    CHECK(to_string(Scalar::iunit()) == "0/1+1/1i");
    CHECK(to_string(Scalar(Rat(0), Rat(-1))) == "0/1-1/1i");
    CHECK(to_string(Scalar(Rat(2, 3), Rat(5, 7))) == "2/3+5/7i");

    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        Scalar s = random_scalar(rng);
        CHECK(parse_scalar(to_string(s)) == s);
    }
    CHECK(parse_scalar("3") == Scalar(3));
    CHECK(parse_scalar("-1/2") == Scalar::frac(-1, 2));
    CHECK(parse_scalar("i") == Scalar::iunit());
    CHECK(parse_scalar("1+i") == Scalar(Rat(1), Rat(1)));
    CHECK(parse_scalar("2i") == Scalar(Rat(0), Rat(2)));
    CHECK_THROWS_AS(parse_scalar("1//2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1+2"), std::invalid_argument);
}
