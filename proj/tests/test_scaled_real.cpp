#include <catch2/catch_amalgamated.hpp>

#include "qasym/scaled_real.hpp"

using qasym::BigInt;
using qasym::ScaledReal;

TEST_CASE("representation: sign, exponent2, mantissa in [1,2)") {
    ScaledReal v = ScaledReal::from_si(6, 128);
    CHECK(v.sign() == 1);
    CHECK(v.exponent2() == 2);
    CHECK(v.mantissa().to_double() == 1.5);

    ScaledReal w = ScaledReal::from_si(-6, 128);
    CHECK(w.sign() == -1);
    CHECK(w.exponent2() == 2);
    CHECK(w.mantissa().to_double() == 1.5);

    ScaledReal z(128);
    CHECK(z.sign() == 0);
    CHECK(z.is_zero());
}

TEST_CASE("decimal serialization format") {
    CHECK(ScaledReal(64).to_decimal() == "0e0");
    CHECK(ScaledReal::from_si(1, 64).to_decimal(3) == "1.00e0");
    CHECK(ScaledReal::from_si(-6, 64).to_decimal(3) == "-6.00e0");
    CHECK(ScaledReal::from_decimal("0.0025", 64).to_decimal(2) == "2.5e-3");
    CHECK(ScaledReal::from_decimal("1250", 64).to_decimal(3) == "1.25e3");
}

TEST_CASE("decimal round trip keeps n-1 digits") {
    ScaledReal v = ScaledReal::from_decimal("0.1", 256) / ScaledReal::from_si(3, 256);
    for (size_t digits : {10, 20, 40}) {
        std::string s = v.to_decimal(digits);
        ScaledReal back = ScaledReal::from_decimal(s, 256);
        CHECK(qasym::agreed_digits(v, back, 70) >= static_cast<long>(digits) - 1);
    }
}

TEST_CASE("malformed literals rejected") {
    CHECK_THROWS_AS(ScaledReal::from_decimal("", 64), std::invalid_argument);
    CHECK_THROWS_AS(ScaledReal::from_decimal("abc", 64), std::invalid_argument);
    CHECK_THROWS_AS(ScaledReal::from_decimal("1.5x", 64), std::invalid_argument);
    CHECK_THROWS_AS(ScaledReal::from_decimal("1.5e", 64), std::invalid_argument);
}

TEST_CASE("arithmetic joins precision and rounds to nearest") {
    ScaledReal a = ScaledReal::from_si(1, 64);
    ScaledReal b = ScaledReal::from_si(3, 256);
    ScaledReal r = a / b;
    CHECK(r.precision() == 256);
    ScaledReal back = r * b;
    CHECK(qasym::agreed_digits(back, ScaledReal::from_si(1, 256), 77) >= 75);
}

TEST_CASE("huge exponents survive multiplication") {
    ScaledReal half = ScaledReal::from_decimal("0.5", 128);
    ScaledReal big = half.pow_si(-1000000);
    ScaledReal small = half.pow_si(1000000);
    CHECK(big.is_finite());
    CHECK(big.exponent2() == 1000000);
    ScaledReal prod = big * small;
    CHECK(qasym::agreed_digits(prod, ScaledReal::from_si(1, 128), 38) >= 36);
}

TEST_CASE("comparisons and abs") {
    ScaledReal a = ScaledReal::from_decimal("-2.5", 64);
    ScaledReal b = ScaledReal::from_decimal("1.25", 64);
    CHECK(a < b);
    CHECK(a.abs() > b);
    CHECK(a.abs() == ScaledReal::from_decimal("2.5", 64));
    CHECK((-a) == a.abs());
}

TEST_CASE("elementary functions") {
    ScaledReal four = ScaledReal::from_si(4, 128);
    CHECK(four.sqrt() == ScaledReal::from_si(2, 128));
    CHECK_THROWS_AS(ScaledReal::from_si(-1, 64).sqrt(), std::invalid_argument);
    CHECK_THROWS_AS(ScaledReal(64).log(), std::invalid_argument);
    ScaledReal e1 = ScaledReal::from_si(1, 128).exp();
    CHECK(qasym::agreed_digits(e1.log(), ScaledReal::from_si(1, 128), 38) >= 36);
    CHECK(four.mul_2si(-2) == ScaledReal::from_si(1, 128));
}

TEST_CASE("BigInt exact combinatorial weights") {
    CHECK(BigInt::factorial(0).to_string() == "1");
    CHECK(BigInt::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigInt::rising(-5, 3).to_string() == "-60");
    CHECK(BigInt::rising(-5, 0).to_string() == "1");
    CHECK(BigInt::rising(-2, 3).to_string() == "0");
    CHECK(BigInt::rising(3, 4).to_string() == "360");
    ScaledReal v = ScaledReal::from_si(1, 64).mul_bigint(BigInt::rising(-4, 2));
    CHECK(v == ScaledReal::from_si(12, 64));
}

TEST_CASE("agreed_digits measures shared significant digits") {
    ScaledReal one = ScaledReal::from_si(1, 256);
    ScaledReal close = one + ScaledReal::from_decimal("1e-20", 256);
    long d = qasym::agreed_digits(one, close, 77);
    CHECK(d >= 19);
    CHECK(d <= 21);
    CHECK(qasym::agreed_digits(one, one, 77) == 77);
}
