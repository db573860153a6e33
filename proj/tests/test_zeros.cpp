#include <catch2/catch_amalgamated.hpp>

#include "qasym/context.hpp"
#include "qasym/qpoly.hpp"
#include "qasym/zeros.hpp"

using namespace qasym;

namespace {

const QContext& ctx_half() {
    static QContext ctx = make_context("0.5");
    return ctx;
}

double rel_to(const ScaledReal& got, const std::string& want_literal, const QContext& ctx) {
    ScaledReal want = ctx.parse(want_literal);
    if (want.is_zero()) return got.abs().to_double();
    return ((got - want) / want).abs().to_double();
}

ScaledReal laguerre_exponent(const QContext& ctx, long n, const std::string& alpha_literal) {
    return ctx.integer(2 * n) + ctx.integer(2) * ctx.parse(alpha_literal);
}

}  // namespace

TEST_CASE("single linear zero", "[zeros]") {
    const QContext& ctx = ctx_half();
    ZeroSet zs = find_positive_zeros(ctx, sw_monic_poly(ctx, 1), sw_hint_exponent());
    REQUIRE(zs.count() == 1);
    // S_1 = x - q^{-3/2}
    ScaledReal want = ctx.q_half_power(-3);
    CHECK(((zs.zeros[0] - want) / want).abs().to_double() < 1e-60);
    CHECK(zs.provenance == sw_monic_poly(ctx, 1).provenance);
    CHECK(zs.residuals.size() == 1);
}

TEST_CASE("quadratic zeros and bracket structure", "[zeros]") {
    const QContext& ctx = ctx_half();
    ZeroSet zs = find_positive_zeros(ctx, sw_monic_poly(ctx, 2), sw_hint_exponent());
    REQUIRE(zs.count() == 2);
    CHECK(rel_to(zs.zeros[0], "2.160726053901811628812345", ctx) < 1e-24);
    CHECK(rel_to(zs.zeros[1], "14.80983669457532895680792", ctx) < 1e-24);
    // product = q^{-5} = 32 from the reflection identity
    ScaledReal prod = zs.zeros[0] * zs.zeros[1];
    CHECK(((prod - ctx.integer(32)) / ctx.integer(32)).abs().to_double() < 1e-70);
    REQUIRE(zs.brackets.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(zs.brackets[k].first <= zs.zeros[k]);
        CHECK(zs.zeros[k] <= zs.brackets[k].second);
    }
}

TEST_CASE("zero count equals degree", "[zeros]") {
    struct Case {
        const char* q;
        long n;
    };
    for (const Case& c : {Case{"0.3", 25}, Case{"0.5", 40}, Case{"0.7", 40}}) {
        QContext ctx = make_context(c.q);
        ZeroSet zs = find_positive_zeros(ctx, sw_monic_poly(ctx, c.n), sw_hint_exponent());
        INFO("SW q=" << c.q << " n=" << c.n);
        REQUIRE(zs.count() == static_cast<std::size_t>(c.n));
        for (std::size_t i = 0; i + 1 < zs.count(); ++i)
            REQUIRE(zs.zeros[i] < zs.zeros[i + 1]);
    }
    for (const char* alpha : {"0", "0.4", "0.7"}) {
        const QContext& ctx = ctx_half();
        QPolynomial lag = q_laguerre_poly(ctx, 30, alpha);
        ZeroSet zs = find_positive_zeros(ctx, lag, laguerre_hint_exponent(std::stod(alpha)));
        INFO("Laguerre alpha=" << alpha);
        REQUIRE(zs.count() == 30);
        CHECK(zs.zeros[0] > ctx.zero());
    }
}

TEST_CASE("residual certificates", "[zeros]") {
    const QContext& ctx = ctx_half();
    QPolynomial p = sw_monic_poly(ctx, 12);
    QPolynomial dp = differentiate(ctx, p, 1);
    ZeroSet zs = find_positive_zeros(ctx, p, sw_hint_exponent());
    REQUIRE(zs.residuals.size() == 12);
    for (std::size_t k = 0; k < zs.count(); ++k) {
        ScaledReal limit =
            eval_poly(ctx, dp, zs.zeros[k]).abs() * zs.zeros[k] * ctx.one().mul_2si(-70);
        CHECK(zs.residuals[k] < limit);
    }
}

TEST_CASE("interlacing of consecutive degrees", "[zeros]") {
    const QContext& ctx = ctx_half();
    for (long n : {1L, 2L, 3L, 4L, 5L, 6L, 7L, 8L, 19L}) {
        ZeroSet a = find_positive_zeros(ctx, sw_monic_poly(ctx, n), sw_hint_exponent());
        ZeroSet b = find_positive_zeros(ctx, sw_monic_poly(ctx, n + 1), sw_hint_exponent());
        INFO("n=" << n);
        REQUIRE(a.count() == static_cast<std::size_t>(n));
        REQUIRE(b.count() == static_cast<std::size_t>(n + 1));
        for (long k = 0; k < n; ++k) {
            REQUIRE(b.zeros[k] < a.zeros[k]);
            REQUIRE(a.zeros[k] < b.zeros[k + 1]);
        }
    }
}

TEST_CASE("stieltjes-wigert pair products are exactly one", "[zeros]") {
    struct Case {
        const char* q;
        long n;
    };
    for (const Case& c : {Case{"0.5", 5}, Case{"0.5", 12}, Case{"0.5", 40}, Case{"0.7", 15},
                          Case{"0.3", 10}}) {
        QContext ctx = make_context(c.q);
        ZeroSet zs = find_positive_zeros(ctx, sw_monic_poly(ctx, c.n), sw_hint_exponent());
        std::vector<ScaledReal> prods =
            symmetry_products(ctx, zs, ctx.integer(2 * c.n + 1));
        REQUIRE(prods.size() == static_cast<std::size_t>((c.n + 1) / 2));
        for (const ScaledReal& s : prods) {
            INFO("q=" << c.q << " n=" << c.n);
            REQUIRE((s - ctx.one()).abs().to_double() < 1e-25);
        }
    }
}

TEST_CASE("laguerre symmetry tables", "[zeros]") {
    QContext c6 = make_context("0.6");
    ZeroSet z20 = find_positive_zeros(c6, q_laguerre_poly(c6, 20, "0.4"),
                                      laguerre_hint_exponent(0.4));
    REQUIRE(z20.count() == 20);
    CHECK(paper_table_line(c6, z20, laguerre_exponent(c6, 20, "0.4")) ==
          "0.45,0.725,0.852,0.917,0.952,0.972,0.983,0.989,0.993,0.994");

    const QContext& c5 = ctx_half();
    ZeroSet z25 = find_positive_zeros(c5, q_laguerre_poly(c5, 25, "0.7"),
                                      laguerre_hint_exponent(0.7));
    REQUIRE(z25.count() == 25);
    CHECK(paper_table_line(c5, z25, laguerre_exponent(c5, 25, "0.7")) ==
          "0.658,0.861,0.937,0.97,0.985,0.993,0.996,0.998,0.999,1.,1.,1.");

    // The product list itself carries the self-paired middle entry for odd n.
    std::vector<ScaledReal> prods = symmetry_products(c5, z25, laguerre_exponent(c5, 25, "0.7"));
    REQUIRE(prods.size() == 13);
    CHECK((prods[12] - c5.one()).abs().to_double() < 0.01);
}

TEST_CASE("mid-table symmetry value approaches one", "[zeros]") {
    const QContext& ctx = ctx_half();
    double prev = 0.0;
    for (long n : {10L, 15L, 20L, 25L}) {
        ZeroSet zs = find_positive_zeros(ctx, q_laguerre_poly(ctx, n, "0.7"),
                                         laguerre_hint_exponent(0.7));
        std::vector<ScaledReal> prods =
            symmetry_products(ctx, zs, laguerre_exponent(ctx, n, "0.7"));
        double mid = prods[n / 2 - 1].to_double();
        INFO("n=" << n);
        CHECK(mid >= prev);
        CHECK(mid <= 1.0 + 1e-20);
        prev = mid;
    }
}

TEST_CASE("display rounding", "[zeros]") {
    const QContext& ctx = ctx_half();
    CHECK(paper_round(ctx.parse("0.45")) == "0.45");
    CHECK(paper_round(ctx.parse("0.9994")) == "0.999");
    CHECK(paper_round(ctx.parse("0.99951")) == "1.");
    CHECK(paper_round(ctx.one()) == "1.");
    CHECK(paper_round(ctx.parse("1.2304")) == "1.23");
    // exact binary ties resolve half-even in both directions
    CHECK(paper_round(ctx.parse("0.0625")) == "0.062");
    CHECK(paper_round(ctx.parse("0.4375")) == "0.438");
    CHECK(paper_round(ctx.parse("-0.45")) == "-0.45");
    CHECK(paper_round(ctx.zero()) == "0.");
}

TEST_CASE("hermite variable antisymmetry", "[zeros]") {
    CHECK(hermite_zero_symmetry(ctx_half(), 1).to_double() < 1e-25);
    CHECK(hermite_zero_symmetry(ctx_half(), 6).to_double() < 1e-25);
    QContext c7 = make_context("0.7");
    CHECK(hermite_zero_symmetry(c7, 15).to_double() < 1e-25);
}

TEST_CASE("zero finder failure reporting", "[zeros]") {
    const QContext& ctx = ctx_half();
    QPolynomial no_real;
    no_real.n = 2;
    no_real.provenance = "synthetic x^2+1";
    no_real.coeffs = {ctx.one(), ctx.zero(), ctx.one()};
    CHECK_THROWS_AS(find_positive_zeros(ctx, no_real, 0.0), numeric_error);
}
