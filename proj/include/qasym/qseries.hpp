#pragma once

/* q-series special functions: Pochhammer symbols, Gaussian binomials, the
 * bilateral theta family X_{j,m} (X_{0,0} = theta), the triple-product form,
 * and the one-sided/truncated generalized theta sums phi_j / psi_jn.
 * All truncations carry explicit geometric-domination tail bounds. */

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "qasym/context.hpp"
#include "qasym/scaled_real.hpp"

namespace qasym {

struct TailPolicy {
    /* <= 0 means "use the context's tail_tol". */
    double target_tol = 0.0;
    long max_terms = 1000000;

    double resolve(const QContext& ctx) const {
        return target_tol > 0 ? target_tol : ctx.tail_tol();
    }
};

/* a_k generator with a finite uniform bound sup_k |a_k| <= bound. */
struct CoefficientSequence {
    std::function<ScaledReal(const QContext&, long)> generator;
    double bound = 1.0;
    std::string name = "custom";

    ScaledReal operator()(const QContext& ctx, long k) const { return generator(ctx, k); }
};

/* (a;q)_n = prod_{m=0}^{n-1} (1 - a q^m). */
inline ScaledReal q_pochhammer(const QContext& ctx, const ScaledReal& a, long n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: negative n");
    ScaledReal prod = ctx.one();
    ScaledReal aqm = a;
    for (long m = 0; m < n; ++m) {
        ScaledReal factor = ctx.one() - aqm;
        if (factor.is_zero()) return ctx.zero();
        prod *= factor;
        aqm *= ctx.q();
    }
    return prod;
}

/* (a;q)_inf, truncated once |a| q^m < tail_tol * (1-q); the dropped factors
 * multiply to 1 + O(tail_tol). */
inline ScaledReal q_pochhammer_inf(const QContext& ctx, const ScaledReal& a,
                                   TailPolicy policy = {}) {
    double tol = policy.resolve(ctx);
    ScaledReal threshold = ctx.real(tol) * (ctx.one() - ctx.q());
    ScaledReal prod = ctx.one();
    ScaledReal aqm = a;
    for (long m = 0; m < policy.max_terms; ++m) {
        if (aqm.abs() < threshold) return prod;
        ScaledReal factor = ctx.one() - aqm;
        if (factor.is_zero()) return ctx.zero();
        prod *= factor;
        aqm *= ctx.q();
    }
    throw numeric_error("q_pochhammer_inf: no convergence within max_terms");
}

/* [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}); zero outside 0 <= k <= n. */
inline ScaledReal gauss_binomial(const QContext& ctx, long n, long k) {
    if (n < 0) throw std::invalid_argument("gauss_binomial: negative n");
    if (k < 0 || k > n) return ctx.zero();
    ScaledReal num = q_pochhammer(ctx, ctx.q(), n);
    ScaledReal den = q_pochhammer(ctx, ctx.q(), k) * q_pochhammer(ctx, ctx.q(), n - k);
    return num / den;
}

namespace detail {

/* Exact integer weight (-k-m)_j (-1)^j. */
inline BigInt shifted_rising_weight(long k, long m, unsigned j) {
    BigInt w = BigInt::rising(-k - m, j);
    if (j % 2 == 1) w *= -1;
    return w;
}

/* Smallest K >= K0 with 2 q^{K^2} R^K (K+w)^j / (1 - q^{2K+1} R) < tol,
 * evaluated in log space (safe against under/overflow). */
inline long bilateral_cutoff(const QContext& ctx, double R, long w, unsigned j, double tol,
                             long max_terms) {
    double lnq = std::log(ctx.q().to_double());
    double lnR = std::log(R);
    double lntol = std::log(tol);
    long K = std::max<long>(1, static_cast<long>(std::ceil(lnR / (2.0 * (-lnq)))) + 1);
    for (; K <= max_terms; ++K) {
        double ratio_ln = (2.0 * K + 1.0) * lnq + lnR;
        if (ratio_ln >= 0) continue;
        double tail_ln = std::log(2.0) + K * static_cast<double>(K) * lnq + K * lnR +
                         j * std::log(static_cast<double>(K + w + j)) -
                         std::log1p(-std::exp(ratio_ln));
        if (tail_ln < lntol - 1e-9) return K;
    }
    throw numeric_error("bilateral series cutoff exceeds max_terms");
}

}  // namespace detail

/* X_{j,m}(x) = sum_{k in Z} q^{k^2} x^k (-k-m)_j (-1)^j, truncated
 * symmetrically at |k| <= K with tail below the policy tolerance. */
inline ScaledReal X_jm(const QContext& ctx, unsigned j, long m, const ScaledReal& x,
                       TailPolicy policy = {}) {
    if (x.is_zero()) throw std::invalid_argument("X_jm: x must be nonzero");
    double tol = policy.resolve(ctx);
    double ax = x.abs().to_double();
    double R = std::max(ax, 1.0 / ax);
    if (!std::isfinite(R)) throw std::invalid_argument("X_jm: |x| out of representable range");
    long K = detail::bilateral_cutoff(ctx, R, std::labs(m), j, tol, policy.max_terms);
    ScaledReal sum = ctx.zero();
    for (long k = -K; k <= K; ++k) {
        BigInt w = detail::shifted_rising_weight(k, m, j);
        if (w.is_zero()) continue;
        ScaledReal term = ctx.q_power(k * k) * x.pow_si(k);
        sum += term.mul_bigint(w);
    }
    return sum;
}

/* Theta(z) = X_{0,0}(z) and Theta_j(z) = z^j Theta^{(j)}(z) = X_{j,0}(z). */
inline ScaledReal theta(const QContext& ctx, const ScaledReal& z, TailPolicy policy = {}) {
    return X_jm(ctx, 0, 0, z, policy);
}
inline ScaledReal theta_j(const QContext& ctx, unsigned j, const ScaledReal& z,
                          TailPolicy policy = {}) {
    return X_jm(ctx, j, 0, z, policy);
}

/* F(z) = sum_k q^{k^2/2} z^k evaluated as the triple product
 * (q;q)_inf (-z sqrt(q); q)_inf (-sqrt(q)/z; q)_inf. */
inline ScaledReal triple_product_F(const QContext& ctx, const ScaledReal& z,
                                   TailPolicy policy = {}) {
    if (z.is_zero()) throw std::invalid_argument("triple_product_F: z must be nonzero");
    ScaledReal qq = q_pochhammer_inf(ctx, ctx.q(), policy);
    ScaledReal zp = q_pochhammer_inf(ctx, -(z * ctx.p()), policy);
    ScaledReal zm = q_pochhammer_inf(ctx, -(ctx.p() / z), policy);
    return qq * zp * zm;
}

/* Phi_j(z) = sum_{k>=0} a_k q^{k^2} z^k (-k)_j (-1)^j. */
inline ScaledReal phi_j(const QContext& ctx, const CoefficientSequence& a, unsigned j,
                        const ScaledReal& z, TailPolicy policy = {}) {
    if (z.is_zero()) {
        /* only k = 0 contributes; (-0)_j kills it for j >= 1 */
        return j == 0 ? a(ctx, 0) : ctx.zero();
    }
    double tol = policy.resolve(ctx);
    double az = z.abs().to_double();
    double R = std::max(az, 1.0);
    long K = detail::bilateral_cutoff(ctx, R, 0, j, tol / std::max(a.bound, 1.0),
                                      policy.max_terms);
    ScaledReal sum = ctx.zero();
    for (long k = 0; k <= K; ++k) {
        BigInt w = detail::shifted_rising_weight(k, 0, j);
        if (w.is_zero()) continue;
        ScaledReal term = a(ctx, k) * ctx.q_power(k * k) * z.pow_si(k);
        sum += term.mul_bigint(w);
    }
    return sum;
}

/* Psi_{j,n}(z) = sum_{k=0}^n a_k q^{k^2} z^k (-n+k)_j (-1)^j, exact. */
inline ScaledReal psi_jn(const QContext& ctx, const CoefficientSequence& a, unsigned j, long n,
                         const ScaledReal& z) {
    if (n < 0) throw std::invalid_argument("psi_jn: negative n");
    ScaledReal sum = ctx.zero();
    for (long k = 0; k <= n; ++k) {
        BigInt w = BigInt::rising(-n + k, j);
        if (j % 2 == 1) w *= -1;
        if (w.is_zero()) continue;
        ScaledReal term = a(ctx, k) * ctx.q_power(k * k) * z.pow_si(k);
        sum += term.mul_bigint(w);
    }
    return sum;
}

/* Built-in coefficient presets. */
inline CoefficientSequence seq_ones() {
    return {[](const QContext& c, long) { return c.one(); }, 1.0, "ones"};
}

/* a_k = (-1)^k / (q;q)_k: the alternating reciprocal-Pochhammer preset. */
inline CoefficientSequence seq_qairy(const QContext& ctx) {
    double bound = 1.0 / q_pochhammer_inf(ctx, ctx.q()).to_double() + 1.0;
    return {[](const QContext& c, long k) {
                ScaledReal v = c.one() / q_pochhammer(c, c.q(), k);
                return k % 2 == 0 ? v : -v;
            },
            bound, "qairy"};
}

}  // namespace qasym
