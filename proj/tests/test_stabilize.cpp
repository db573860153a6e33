#include <catch2/catch_amalgamated.hpp>

#include "qasym/stabilize.hpp"

using qasym::make_context;
using qasym::QContext;
using qasym::ScaledReal;
using qasym::StabilizedValue;

TEST_CASE("constant computation stabilizes immediately") {
    QContext ctx = make_context("0.5", 256, 1e-40);
    StabilizedValue sv = qasym::stabilize([](const QContext& c) { return c.one(); }, ctx, 30);
    CHECK(sv.escalations == 0);
    CHECK(sv.verified_digits >= 30);
    CHECK(sv.value == ctx.one());
}

TEST_CASE("catastrophic 2x2 determinant cancellation escalates") {
    /* det [[a, a], [a, a(1+1e-60)]] = a^2 * 1e-60: invisible at 128 bits. */
    auto det = [](const QContext& c) {
        ScaledReal a = c.one();
        ScaledReal tiny = c.parse("1e-60");
        return a * (a + a * tiny) - a * a;
    };
    QContext ctx = make_context("0.5", 128, 1e-40);
    StabilizedValue sv = qasym::stabilize(det, ctx, 30);
    CHECK(sv.escalations >= 1);
    CHECK(sv.verified_digits >= 30);
    CHECK(qasym::agreed_digits(sv.value, ctx.parse("1e-60"), 77) >= 30);
}

TEST_CASE("non-converging computation fails after six escalations") {
    auto jitter = [](const QContext& c) { return c.integer(c.mantissa_bits()); };
    QContext ctx = make_context("0.5", 64, 1e-40);
    CHECK_THROWS_AS(qasym::stabilize(jitter, ctx, 10), qasym::numeric_error);
}

TEST_CASE("stabilize is idempotent") {
    auto theta_like = [](const QContext& c) {
        ScaledReal s = c.zero();
        for (int k = -12; k <= 12; ++k) s += c.q_power(static_cast<long>(k) * k);
        return s;
    };
    QContext ctx = make_context("0.5", 256, 1e-40);
    StabilizedValue a = qasym::stabilize(theta_like, ctx, 30);
    StabilizedValue b = qasym::stabilize(theta_like, ctx, 30);
    CHECK(a.value == b.value);
    CHECK(a.escalations == 0);
    CHECK(qasym::agreed_digits(a.value, ctx.parse("2.128936827211877158669459"), 77) >= 24);
}
