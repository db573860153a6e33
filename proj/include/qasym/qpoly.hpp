#pragma once

/* Polynomial families with q^{k^2}-weighted coefficients: generic builder
 * P_n(x) = sum_k q^{k^2} f_n(k) (-x)^k over a named coefficient family,
 * exact differentiation, Horner evaluation, the derivative form
 * P_{n,j}(x) = x^j P_n^{(j)}(x), and the classical normalizations
 * (monic Stieltjes-Wigert, q-Laguerre, q-Hermite). */

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qasym/context.hpp"
#include "qasym/qseries.hpp"
#include "qasym/scaled_real.hpp"

namespace qasym {

/* A family is the window weight f_n(k), 0 <= k <= n. */
struct CoefficientFamily {
    std::string name;
    std::string alpha_literal = "0";  // meaningful for "qlaguerre" only
    double alpha = 0.0;               // decimal value of alpha_literal
    std::function<ScaledReal(const QContext&, long n, long k)> weight;
};

inline CoefficientFamily family_ones() {
    return {"ones", "0", 0.0, [](const QContext& c, long, long) { return c.one(); }};
}

/* f_n(k) = (q^{k+1};q)_{n-k} (q^{n-k+1};q)_k  ( = (q;q)_n [n k]_q ). */
inline CoefficientFamily family_swigert() {
    return {"swigert", "0", 0.0, [](const QContext& c, long n, long k) {
                return q_pochhammer(c, c.q_power(k + 1), n - k) *
                       q_pochhammer(c, c.q_power(n - k + 1), k);
            }};
}

/* f_n(k) = (q^{alpha+1+k};q)_{n-k} (q^{k+1};q)_{n-k} (q^{n-k+1};q)_k.
 * alpha is taken as a decimal literal so results are reproducible to full
 * working precision. */
inline CoefficientFamily family_qlaguerre(const std::string& alpha_literal) {
    double alpha = std::stod(alpha_literal);
    return {"qlaguerre", alpha_literal, alpha,
            [alpha_literal](const QContext& c, long n, long k) {
                ScaledReal qa = c.q_power_real(c.parse(alpha_literal)) * c.q_power(1 + k);
                return q_pochhammer(c, qa, n - k) *
                       q_pochhammer(c, c.q_power(k + 1), n - k) *
                       q_pochhammer(c, c.q_power(n - k + 1), k);
            }};
}

inline CoefficientFamily family_by_name(const std::string& name,
                                        const std::string& alpha_literal = "0") {
    if (name == "ones") return family_ones();
    if (name == "swigert") return family_swigert();
    if (name == "qlaguerre") return family_qlaguerre(alpha_literal);
    throw std::invalid_argument("unknown coefficient family: " + name);
}

struct QPolynomial {
    long n = 0;                       // family degree parameter
    std::vector<ScaledReal> coeffs;   // c_0 .. c_degree
    std::string provenance;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

/* P_n(x) = sum_{k=0}^n q^{k^2} f_n(k) (-1)^k x^k. */
inline QPolynomial build_family_poly(const QContext& ctx, const CoefficientFamily& family,
                                     long n) {
    if (n < 0) throw std::invalid_argument("build_family_poly: negative n");
    QPolynomial poly;
    poly.n = n;
    poly.provenance = family.name + " n=" + std::to_string(n) + " q=" + ctx.q_literal();
    if (family.name == "qlaguerre") poly.provenance += " alpha=" + family.alpha_literal;
    poly.coeffs.reserve(n + 1);
    for (long k = 0; k <= n; ++k) {
        ScaledReal c = ctx.q_power(k * k) * family.weight(ctx, n, k);
        if (k % 2 == 1) c = -c;
        poly.coeffs.push_back(std::move(c));
    }
    return poly;
}

/* Exact j-th derivative: coefficient i of P^{(j)} is c_{i+j} * (i+j)!/i!. */
inline QPolynomial differentiate(const QContext& ctx, const QPolynomial& poly, unsigned j) {
    QPolynomial out;
    out.n = poly.n;
    out.provenance = poly.provenance + " d^" + std::to_string(j);
    long deg = poly.degree();
    if (static_cast<long>(j) > deg) {
        out.coeffs.push_back(ctx.zero());
        return out;
    }
    out.coeffs.reserve(deg - j + 1);
    for (long i = 0; i + static_cast<long>(j) <= deg; ++i) {
        BigInt fall = BigInt::rising(i + 1, j);  // (i+1)(i+2)...(i+j) = (i+j)!/i!
        out.coeffs.push_back(poly.coeffs[i + j].mul_bigint(fall));
    }
    return out;
}

/* Horner evaluation at ctx working precision. */
inline ScaledReal eval_poly(const QContext& ctx, const QPolynomial& poly, const ScaledReal& x) {
    if (poly.coeffs.empty()) return ctx.zero();
    ScaledReal acc = poly.coeffs.back();
    for (long i = poly.degree() - 1; i >= 0; --i) acc = acc * x + poly.coeffs[i];
    return acc;
}

/* P_{n,j}(x) = x^j P_n^{(j)}(x). */
inline ScaledReal eval_pnj(const QContext& ctx, const QPolynomial& poly, unsigned j,
                           const ScaledReal& x) {
    if (j == 0) return eval_poly(ctx, poly, x);
    if (x.is_zero()) return ctx.zero();
    QPolynomial dj = differentiate(ctx, poly, j);
    return x.pow_si(j) * eval_poly(ctx, dj, x);
}

/* Monic Stieltjes-Wigert polynomial
 * S_n(x) = (-1)^n q^{-n^2-n/2} sum_k [n k]_q q^{k^2+k/2} (-x)^k. */
inline QPolynomial sw_monic_poly(const QContext& ctx, long n) {
    if (n < 0) throw std::invalid_argument("sw_monic_poly: negative n");
    QPolynomial poly;
    poly.n = n;
    poly.provenance = "sw_monic n=" + std::to_string(n) + " q=" + ctx.q_literal();
    ScaledReal lead = ctx.q_half_power(-(2 * n * n + n));  // q^{-n^2-n/2}
    if (n % 2 == 1) lead = -lead;
    poly.coeffs.reserve(n + 1);
    for (long k = 0; k <= n; ++k) {
        ScaledReal c = lead * gauss_binomial(ctx, n, k) * ctx.q_half_power(2 * k * k + k);
        if (k % 2 == 1) c = -c;
        poly.coeffs.push_back(std::move(c));
    }
    return poly;
}

/* Normalized q-Laguerre polynomial
 * L_n^{(alpha)}(x;q) = (q^{alpha+1};q)_n/(q;q)_n
 *                      sum_k [n k]_q q^{k^2+alpha k}/(q^{alpha+1};q)_k (-x)^k. */
inline QPolynomial q_laguerre_poly(const QContext& ctx, long n, const std::string& alpha_literal) {
    if (n < 0) throw std::invalid_argument("q_laguerre_poly: negative n");
    QPolynomial poly;
    poly.n = n;
    poly.provenance = "qlaguerre_normalized n=" + std::to_string(n) + " q=" + ctx.q_literal() +
                      " alpha=" + alpha_literal;
    ScaledReal qalpha = ctx.q_power_real(ctx.parse(alpha_literal));
    ScaledReal qa1 = qalpha * ctx.q();  // q^{alpha+1}
    ScaledReal front = q_pochhammer(ctx, qa1, n) / q_pochhammer(ctx, ctx.q(), n);
    poly.coeffs.reserve(n + 1);
    for (long k = 0; k <= n; ++k) {
        ScaledReal c = front * gauss_binomial(ctx, n, k) * ctx.q_power(k * k) *
                       qalpha.pow_si(k) / q_pochhammer(ctx, qa1, k);
        if (k % 2 == 1) c = -c;
        poly.coeffs.push_back(std::move(c));
    }
    return poly;
}

/* q-Hermite evaluation at x = sinh(xi):
 * h_n(sinh xi) = sum_k [n k]_q q^{k^2-nk} (-1)^k e^{(n-2k) xi}. */
inline ScaledReal q_hermite_eval(const QContext& ctx, long n, const ScaledReal& xi) {
    if (n < 0) throw std::invalid_argument("q_hermite_eval: negative n");
    ScaledReal ex = xi.exp();
    ScaledReal sum = ctx.zero();
    for (long k = 0; k <= n; ++k) {
        ScaledReal term = gauss_binomial(ctx, n, k) * ctx.q_power(k * k - n * k) *
                          ex.pow_si(n - 2 * k);
        if (k % 2 == 1) term = -term;
        sum += term;
    }
    return sum;
}

/* Window limits as one-sided coefficient sequences (used by the tail
 * asymptotics): a_k = lim f_n at the right edge, resp. the left edge. */
inline CoefficientSequence right_tail_sequence(const QContext& ctx,
                                               const CoefficientFamily& family) {
    if (family.name == "ones") return seq_ones();
    if (family.name == "swigert") {
        return {[](const QContext& c, long k) {
                    return q_pochhammer_inf(c, c.q_power(k + 1));
                },
                1.0, "swigert_right"};
    }
    if (family.name == "qlaguerre") {
        std::string lit = family.alpha_literal;
        (void)ctx;
        return {[lit](const QContext& c, long k) {
                    ScaledReal qa = c.q_power_real(c.parse(lit)) * c.q_power(1 + k);
                    return q_pochhammer_inf(c, qa) * q_pochhammer_inf(c, c.q_power(k + 1));
                },
                1.0, "qlaguerre_right"};
    }
    throw std::invalid_argument("right_tail_sequence: unknown family " + family.name);
}

inline CoefficientSequence left_tail_sequence(const QContext& ctx,
                                              const CoefficientFamily& family) {
    if (family.name == "ones") return seq_ones();
    /* swigert is window-symmetric; qlaguerre keeps only its symmetric part */
    if (family.name == "swigert" || family.name == "qlaguerre") {
        (void)ctx;
        return {[](const QContext& c, long k) {
                    return q_pochhammer_inf(c, c.q_power(k + 1));
                },
                1.0, family.name + "_left"};
    }
    throw std::invalid_argument("left_tail_sequence: unknown family " + family.name);
}

/* JSON form: {"family","n","q","coefficients":[decimal strings]}. */
inline nlohmann::json poly_to_json(const QContext& ctx, const QPolynomial& poly,
                                   const std::string& family_name) {
    nlohmann::json j;
    j["family"] = family_name;
    j["n"] = poly.n;
    j["q"] = ctx.q_literal();
    nlohmann::json arr = nlohmann::json::array();
    for (const ScaledReal& c : poly.coeffs) arr.push_back(c.to_decimal(32));
    j["coefficients"] = std::move(arr);
    return j;
}

}  // namespace qasym
