#include <catch_amalgamated.hpp>

#include <random>

#include "curvecert/scalar.hpp"

using namespace curvecert;

TEST_CASE("integer construction and printing") {
    REQUIRE(LocScalar(0).str() == "0");
    REQUIRE(LocScalar(7).str() == "7");
    REQUIRE(LocScalar(-13).str() == "-13");
    REQUIRE(LocScalar(BigInt("123456789123456789")).str() == "123456789123456789");
}

TEST_CASE("fractions normalize and carry smooth denominators only") {
    REQUIRE(LocScalar(1, 2).str() == "1/2");
    REQUIRE(LocScalar(2, 4).str() == "1/2");
    REQUIRE(LocScalar(-3, 6).str() == "-1/2");
    REQUIRE(LocScalar(3, -6).str() == "-1/2"); // denominator kept positive
    REQUIRE(LocScalar(6, 3).str() == "2");
    REQUIRE(LocScalar(0, 48).str() == "0");
    REQUIRE(LocScalar(5, 210).str() == "1/42");

    // 11 survives reduction, so the value leaves Z[1/210]
    REQUIRE_THROWS_AS(LocScalar(1, 11), IllegalDivisorError);
    REQUIRE_THROWS_AS(LocScalar(3, 33), IllegalDivisorError);
    REQUIRE_NOTHROW(LocScalar(11, 22)); // reduces to 1/2 first
    REQUIRE_THROWS_AS(LocScalar(1, 0), IllegalDivisorError);
}

TEST_CASE("arithmetic matches rational arithmetic") {
    LocScalar a(3, 4), b(-5, 6);
    REQUIRE((a + b).str() == "-1/12");
    REQUIRE((a - b).str() == "19/12");
    REQUIRE((a * b).str() == "-5/8");
    REQUIRE((-a).str() == "-3/4");
    REQUIRE(a.mul_int(8).str() == "6");
    REQUIRE(a == LocScalar(6, 8));
    REQUIRE(a != b);
}

TEST_CASE("exact integer division") {
    REQUIRE(LocScalar(6).div_exact_int(3).str() == "2");
    REQUIRE(LocScalar(1, 2).div_exact_int(7).str() == "1/14");
    REQUIRE(LocScalar(5).div_exact_int(-5).str() == "-1");
    // divisors are vetted up front: only {2,3,5,7}-smooth integers are legal,
    // whether or not they would happen to cancel
    REQUIRE_THROWS_AS(LocScalar(1).div_exact_int(11), IllegalDivisorError);
    REQUIRE_THROWS_AS(LocScalar(22).div_exact_int(11), IllegalDivisorError);
    REQUIRE_THROWS_AS(LocScalar(1).div_exact_int(0), IllegalDivisorError);
}

TEST_CASE("ring axioms on random smooth rationals") {
    std::mt19937 rng(20240816);
    std::uniform_int_distribution<long> num(-40, 40);
    const long dens[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 35, 48, 210};
    std::uniform_int_distribution<std::size_t> den(0, std::size(dens) - 1);
    auto draw = [&]() { return LocScalar(num(rng), dens[den(rng)]); };

    for (int i = 0; i < 300; ++i) {
        LocScalar a = draw(), b = draw(), c = draw();
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + LocScalar(0) == a);
        REQUIRE(a * LocScalar(1) == a);
        REQUIRE(a - a == LocScalar(0));
        REQUIRE(a.mul_int(6).div_exact_int(6) == a);
    }
}

TEST_CASE("static divisor admissibility check") {
    REQUIRE_NOTHROW(LocScalar::check_int_divisor(48));
    REQUIRE_NOTHROW(LocScalar::check_int_divisor(-17280));
    REQUIRE_THROWS_AS(LocScalar::check_int_divisor(0), IllegalDivisorError);
    REQUIRE_THROWS_AS(LocScalar::check_int_divisor(11), IllegalDivisorError);
    REQUIRE_THROWS_AS(LocScalar::check_int_divisor(97), IllegalDivisorError);
}
