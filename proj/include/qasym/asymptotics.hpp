#pragma once

/* Three asymptotic regimes for P_{n,j} with explicit, provably honest error
 * bounds:
 *   oscillatory:  P_{n,j}(q^{-2m} y)  ~  q^{-m^2} (-y)^m X_{j,m}(-y)
 *   right tail:   P_{n,j}(q^{nt} y)   ~  Phi_j(-q^{nt} y),          t >= 0
 *   left tail:    P_{n,j}(q^{nt} y)   ~  (-q^{n+nt} y)^n Psi_{j,n}(-q^{-2n-nt}/y),  t <= -2
 *
 * Every estimate returns |exact - value| <= error_bound with
 * error_bound = C1 * eps + 2 * T, where C1 majorizes the window sum that
 * multiplies the coefficient deviation eps = sup |f_n - a| over the window,
 * and T majorizes both series' tails outside the window.  The majorants are
 * computed term by term (not collapsed into q^{d^2} M^d style closed forms),
 * which keeps them sharp enough to be decision-grade at moderate n. */

#include <cmath>
#include <string>

#include "qasym/context.hpp"
#include "qasym/qpoly.hpp"
#include "qasym/qseries.hpp"
#include "qasym/scaled_real.hpp"

namespace qasym {

struct AsymptoticWindow {
    double l = 0.5;   // scaling center, in (0,1)
    double delta = 0; // window half-width, in (0, min(l,1-l))
    long m = 0;       // floor(n*l)
    long d = 0;       // floor(n*delta)
    double M = 1.0;   // uniformity radius, >= 1
};

/* delta <= 0 selects the default min(l,1-l)/2; M <= 0 selects the default
 * max(|y|,1/|y|) + 1. */
inline AsymptoticWindow make_window(long n, double l, double delta, double y_mag,
                                    double M = 0.0) {
    if (n < 1) throw std::invalid_argument("make_window: n must be positive");
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("make_window: l outside (0,1)");
    if (delta <= 0.0) delta = std::min(l, 1.0 - l) / 2.0;
    if (!(delta < std::min(l, 1.0 - l)))
        throw std::invalid_argument("make_window: delta outside (0, min(l,1-l))");
    if (y_mag <= 0.0) throw std::invalid_argument("make_window: |y| must be positive");
    if (M <= 0.0) M = std::max(y_mag, 1.0 / y_mag) + 1.0;
    if (M < 1.0) throw std::invalid_argument("make_window: M must be >= 1");
    if (!(1.0 / M <= y_mag && y_mag <= M))
        throw std::invalid_argument("make_window: |y| outside [1/M, M]");
    AsymptoticWindow w;
    w.l = l;
    w.delta = delta;
    w.m = static_cast<long>(std::floor(n * l));
    w.d = static_cast<long>(std::floor(n * delta));
    w.M = M;
    return w;
}

struct AsymptoticEstimate {
    ScaledReal value;
    ScaledReal error_bound;
    std::string regime;  // "oscillatory" | "right_tail" | "left_tail"
};

/* sup over the oscillatory window |k - nl| <= n*delta of |f_n(k) - 1|. */
inline ScaledReal family_eps_oscillatory(const QContext& ctx, const CoefficientFamily& family,
                                         long n, double l, double delta) {
    if (family.name == "ones") return ctx.zero();
    ScaledReal base = (ctx.q_power_real(ctx.real(n * (l - delta))) +
                       ctx.q_power_real(ctx.real(n * (1.0 - l - delta)))) /
                      (ctx.one() - ctx.q());
    if (family.name == "swigert") return base;
    if (family.name == "qlaguerre")
        return (ctx.one() + ctx.q_power_real(ctx.parse(family.alpha_literal))) * base;
    throw std::invalid_argument("family_eps_oscillatory: unknown family " + family.name);
}

/* sup over k <= n*delta of |f_n(k) - a_k| (right tail), resp.
 * |f_n(n-k) - a_k| (left tail); the same bound covers both edges. */
inline ScaledReal family_eps_tail(const QContext& ctx, const CoefficientFamily& family, long n,
                                  double delta) {
    if (family.name == "ones") return ctx.zero();
    ScaledReal base = ctx.q_power_real(ctx.real(n * (1.0 - delta))) / (ctx.one() - ctx.q());
    if (family.name == "swigert") return (ctx.one() + ctx.one()) * base;
    if (family.name == "qlaguerre")
        return (ctx.integer(2) + ctx.q_power_real(ctx.parse(family.alpha_literal))) * base;
    throw std::invalid_argument("family_eps_tail: unknown family " + family.name);
}

namespace detail {

/* (base + j)^j as a ScaledReal; (anything)^0 = 1. */
inline ScaledReal poly_weight(const QContext& ctx, long base, unsigned j) {
    if (j == 0) return ctx.one();
    return ctx.integer(base + static_cast<long>(j)).pow_si(j);
}

/* sum_{k=lo}^{hi} q^{k^2} r^k (k + shift + j)^j, with hi < 0 meaning "sum to
 * convergence" (terms eventually decay superexponentially). */
inline ScaledReal window_sum(const QContext& ctx, long lo, long hi, const ScaledReal& r,
                             long shift, unsigned j, long max_terms = 1000000) {
    ScaledReal total = ctx.zero();
    for (long k = lo, steps = 0; hi < 0 || k <= hi; ++k, ++steps) {
        if (steps > max_terms) throw numeric_error("window_sum: no convergence");
        ScaledReal term = ctx.q_power(k * k) * r.pow_si(k) * poly_weight(ctx, k + shift, j);
        total += term;
        if (hi < 0 && term.is_zero() && k > lo) break;
        if (hi < 0 && !total.is_zero()) {
            ScaledReal next_scale = ctx.q_power(2 * k + 1) * r;  // term ratio modulo weights
            if (next_scale < ctx.one() && term < total.mul_2si(-ctx.mantissa_bits() - 8))
                break;
        }
    }
    return total;
}

/* symmetric sum over |k| in [lo, hi] (hi < 0: to convergence) of
 * q^{k^2} M^{|k|} (|k| + shift + j)^j. */
inline ScaledReal symmetric_window_sum(const QContext& ctx, long lo, long hi,
                                       const ScaledReal& M, long shift, unsigned j) {
    ScaledReal one_sided = window_sum(ctx, std::max(lo, 1L), hi, M, shift, j);
    ScaledReal total = one_sided + one_sided;
    if (lo == 0) total += poly_weight(ctx, shift, j);  // k = 0 counted once
    return total;
}

}  // namespace detail

/* P_{n,j}(q^{-2m} y) ~ q^{-m^2} (-y)^m X_{j,m}(-y). */
inline AsymptoticEstimate oscillatory_estimate(const QContext& ctx,
                                               const CoefficientFamily& family, long n,
                                               unsigned j, const AsymptoticWindow& w,
                                               const ScaledReal& y, TailPolicy policy = {}) {
    double ay = y.abs().to_double();
    if (!(1.0 / w.M <= ay && ay <= w.M))
        throw std::invalid_argument("oscillatory_estimate: |y| outside [1/M, M]");
    ScaledReal pref = ctx.q_power(-w.m * w.m) * (-y).pow_si(w.m);
    ScaledReal x = X_jm(ctx, j, w.m, -y, policy);

    ScaledReal eps = family_eps_oscillatory(ctx, family, n, w.l, w.delta);
    ScaledReal Mr = ctx.real(w.M);
    ScaledReal c1 = detail::symmetric_window_sum(ctx, 0, w.d - 1, Mr, w.m, j);
    ScaledReal tail = detail::symmetric_window_sum(ctx, w.d, -1, Mr, w.m, j);

    AsymptoticEstimate est;
    est.value = pref * x;
    est.error_bound = pref.abs() * (c1 * eps + tail + tail);
    est.regime = "oscillatory";
    return est;
}

/* P_{n,j}(q^{nt} y) ~ Phi_j(-q^{nt} y), t >= 0.  delta <= 0 selects the
 * default 1/2 (window edge at d = floor(n/2)). */
inline AsymptoticEstimate right_tail_estimate(const QContext& ctx,
                                              const CoefficientFamily& family,
                                              const CoefficientSequence& a, long n, unsigned j,
                                              double t, const ScaledReal& y, double delta = 0.0,
                                              TailPolicy policy = {}) {
    if (t < 0.0) throw std::invalid_argument("right_tail_estimate: t must be >= 0");
    if (delta <= 0.0) delta = 0.5;
    if (delta >= 1.0) throw std::invalid_argument("right_tail_estimate: delta must be < 1");
    long d = static_cast<long>(std::floor(n * delta));
    ScaledReal z = -(ctx.q_power_real(ctx.real(n * t)) * y);

    ScaledReal eps = family_eps_tail(ctx, family, n, delta);
    ScaledReal az = z.abs();
    ScaledReal c1 = detail::window_sum(ctx, 0, d - 1, az, 0, j);
    ScaledReal tail = detail::window_sum(ctx, d, -1, az, 0, j);

    AsymptoticEstimate est;
    est.value = phi_j(ctx, a, j, z, policy);
    est.error_bound = c1 * eps + tail + tail;
    est.regime = "right_tail";
    return est;
}

/* P_{n,j}(q^{nt} y) ~ (-q^{n+nt} y)^n Psi_{j,n}(-q^{-2n-nt}/y), t <= -2. */
inline AsymptoticEstimate left_tail_estimate(const QContext& ctx,
                                             const CoefficientFamily& family,
                                             const CoefficientSequence& a, long n, unsigned j,
                                             double t, const ScaledReal& y,
                                             double delta = 0.0) {
    if (t > -2.0) throw std::invalid_argument("left_tail_estimate: t must be <= -2");
    if (y.is_zero()) throw std::invalid_argument("left_tail_estimate: y must be nonzero");
    if (delta <= 0.0) delta = 0.5;
    if (delta >= 1.0) throw std::invalid_argument("left_tail_estimate: delta must be < 1");
    long d = static_cast<long>(std::floor(n * delta));
    ScaledReal pref = (-(ctx.q_power_real(ctx.real(n * (1.0 + t))) * y)).pow_si(n);
    ScaledReal warg = -(ctx.q_power_real(ctx.real(-2.0 * n - n * t)) / y);

    ScaledReal eps = family_eps_tail(ctx, family, n, delta);
    ScaledReal aw = warg.abs();
    /* weights (n - k + j)^j over the reversed index */
    ScaledReal c1 = ctx.zero();
    ScaledReal tail = ctx.zero();
    for (long k = 0; k <= n; ++k) {
        ScaledReal term = ctx.q_power(k * k) * aw.pow_si(k) *
                          detail::poly_weight(ctx, n - k, j);
        if (k < d)
            c1 += term;
        else
            tail += term;
    }

    AsymptoticEstimate est;
    est.value = pref * psi_jn(ctx, a, j, n, warg);
    est.error_bound = pref.abs() * (c1 * eps + tail + tail);
    est.regime = "left_tail";
    return est;
}

}  // namespace qasym
