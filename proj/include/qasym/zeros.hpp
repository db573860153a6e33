#pragma once

/* Zero location for positive-zero q-polynomials (Stieltjes-Wigert and
 * q-Laguerre): geometric-mesh bracketing on the q-power lattice, bisection in
 * log-x, safeguarded Newton polish, per-zero residual certificates, and the
 * symmetry diagnostics (pair products and Hermite-variable antisymmetry). */

#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "qasym/context.hpp"
#include "qasym/qpoly.hpp"
#include "qasym/scaled_real.hpp"

namespace qasym {

struct ZeroSet {
    std::string provenance;
    std::vector<ScaledReal> zeros;  // ascending
    std::vector<std::pair<ScaledReal, ScaledReal>> brackets;
    std::vector<ScaledReal> residuals;  // |P(x_k)| at the certified zero
    std::size_t count() const { return zeros.size(); }
};

/* Centering of the initial search mesh: zeros sit near x = q^{hint - s} for
 * half-integer s in [-1, 2n+2] (the mesh extends a little past both ends). */
inline double sw_hint_exponent() { return 0.0; }
inline double laguerre_hint_exponent(double alpha) { return -alpha; }

namespace detail {

struct MeshPoint {
    ScaledReal x;
    int sign = 0;
};

/* One bracketing + polishing pass at the precision of `ctx`. Returns false
 * if the mesh does not isolate exactly n sign changes at any refinement. */
inline bool locate_zeros(const QContext& ctx, const QPolynomial& poly, double hint_exponent,
                         ZeroSet& out) {
    long n = poly.degree();
    out.zeros.clear();
    out.brackets.clear();
    out.residuals.clear();
    if (n == 0) return true;

    QPolynomial deriv = differentiate(ctx, poly, 1);

    std::vector<MeshPoint> mesh;
    for (int denom : {2, 4, 8}) {
        mesh.clear();
        // s runs over [-3, 2n+4]; x = q^{hint-s} ascends with s.
        long lo = -3 * denom, hi = (2 * n + 4) * denom;
        for (long i = lo; i <= hi; ++i) {
            double e = hint_exponent - static_cast<double>(i) / denom;
            MeshPoint pt;
            pt.x = ctx.q_power_real(ctx.real(e));
            pt.sign = eval_poly(ctx, poly, pt.x).sign() >= 0 ? 1 : -1;
            mesh.push_back(std::move(pt));
        }
        long flips = 0;
        for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
            if (mesh[i].sign != mesh[i + 1].sign) ++flips;
        if (flips == n) break;
        if (denom == 8) return false;
    }

    ScaledReal log_width_tol = ctx.one().mul_2si(-80);
    ScaledReal newton_tol = ctx.one().mul_2si(-(ctx.mantissa_bits() - 8));

    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        if (mesh[i].sign == mesh[i + 1].sign) continue;
        ScaledReal a = mesh[i].x, b = mesh[i + 1].x;
        int sign_a = mesh[i].sign;
        out.brackets.emplace_back(a, b);

        // Bisection in log-x: the geometric midpoint sqrt(a*b) is the
        // log-space midpoint. Stop at relative bracket width 2^-80.
        while (b - a > a * log_width_tol) {
            ScaledReal m = (a * b).sqrt();
            if (m <= a || m >= b) break;  // bracket at rounding resolution
            int sm = eval_poly(ctx, poly, m).sign() >= 0 ? 1 : -1;
            if (sm == sign_a)
                a = m;
            else
                b = m;
        }

        // Safeguarded Newton in log-x: t <- t - P/(P'·x), i.e. x <- x·e^{-dt},
        // clipped to the bracket by falling back to the geometric midpoint.
        ScaledReal x = (a * b).sqrt();
        for (int iter = 0; iter < 60; ++iter) {
            ScaledReal f = eval_poly(ctx, poly, x);
            if (f.is_zero()) break;
            int sf = f.sign() > 0 ? 1 : -1;
            if (sf == sign_a)
                a = x;
            else
                b = x;
            ScaledReal slope = eval_poly(ctx, deriv, x) * x;
            if (slope.is_zero()) break;
            ScaledReal dt = f / slope;
            if (dt.abs() < newton_tol) break;  // x is already converged
            ScaledReal next = x * (-dt).exp();
            if (next <= a || next >= b) next = (a * b).sqrt();
            x = std::move(next);
        }

        ScaledReal residual = eval_poly(ctx, poly, x).abs();
        ScaledReal limit = eval_poly(ctx, deriv, x).abs() * x * ctx.one().mul_2si(-70);
        if (!(residual < limit))
            throw numeric_error("find_positive_zeros: residual certificate failed at zero " +
                                std::to_string(out.zeros.size() + 1));
        out.zeros.push_back(std::move(x));
        out.residuals.push_back(std::move(residual));
    }
    for (std::size_t i = 0; i + 1 < out.zeros.size(); ++i)
        if (!(out.zeros[i] < out.zeros[i + 1]))
            throw numeric_error("find_positive_zeros: zeros not strictly increasing");
    return static_cast<long>(out.zeros.size()) == n;
}

}  // namespace detail

/* Locates all n positive zeros of a polynomial known to have simple positive
 * real zeros. One retry at doubled precision before giving up. */
inline ZeroSet find_positive_zeros(const QContext& ctx, const QPolynomial& poly,
                                   double hint_exponent) {
    ZeroSet zs;
    zs.provenance = poly.provenance;
    if (detail::locate_zeros(ctx, poly, hint_exponent, zs)) return zs;
    QContext hi = ctx.with_precision(2 * ctx.mantissa_bits());
    if (detail::locate_zeros(hi, poly, hint_exponent, zs)) return zs;
    throw numeric_error("find_positive_zeros: could not isolate " +
                        std::to_string(poly.degree()) + " sign changes for " + poly.provenance);
}

/* Normalized pair products s_k = q^e · x_k · x_{n+1-k} for k = 1..floor(n/2),
 * plus the self-paired middle term when n is odd. */
inline std::vector<ScaledReal> symmetry_products(const QContext& ctx, const ZeroSet& zs,
                                                 const ScaledReal& lattice_exponent) {
    ScaledReal pref = ctx.q_power_real(lattice_exponent);
    std::size_t n = zs.count();
    std::vector<ScaledReal> out;
    out.reserve((n + 1) / 2);
    for (std::size_t k = 0; k < (n + 1) / 2; ++k)
        out.push_back(pref * zs.zeros[k] * zs.zeros[n - 1 - k]);
    return out;
}

/* Rounds half-even to 3 decimals and strips trailing zeros, keeping the
 * decimal point ("0.97", "1."). Published-table display convention. */
inline std::string paper_round(const ScaledReal& v) {
    mpfr_t t;
    mpfr_init2(t, std::max<mpfr_prec_t>(v.precision(), 64));
    mpfr_mul_si(t, v.raw(), 1000, MPFR_RNDN);
    mpfr_rint(t, t, MPFR_RNDN);  // ties to even
    if (!mpfr_fits_slong_p(t, MPFR_RNDN)) {
        mpfr_clear(t);
        throw std::invalid_argument("paper_round: value out of table range");
    }
    long r = mpfr_get_si(t, MPFR_RNDN);
    mpfr_clear(t);
    bool neg = r < 0;
    unsigned long mag = neg ? static_cast<unsigned long>(-r) : static_cast<unsigned long>(r);
    std::string frac = std::to_string(mag % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    std::string out = (neg ? "-" : "") + std::to_string(mag / 1000) + "." + frac;
    while (out.back() == '0') out.pop_back();
    return out;
}

/* Comma-separated rounded products for the first floor(n/2) pairs — the
 * published lists stop at the last distinct pair. */
inline std::string paper_table_line(const QContext& ctx, const ZeroSet& zs,
                                    const ScaledReal& lattice_exponent) {
    std::vector<ScaledReal> prods = symmetry_products(ctx, zs, lattice_exponent);
    std::size_t pairs = zs.count() / 2;
    std::string out;
    for (std::size_t k = 0; k < pairs; ++k) {
        if (k) out += ',';
        out += paper_round(prods[k]);
    }
    return out;
}

/* Max over j of |xi_j + xi_{n+1-j}| for the zeros of S_n mapped through
 * x = q^{-n-1/2} e^{-2 xi}; exact reflection makes the sums vanish. */
inline ScaledReal hermite_zero_symmetry(const QContext& ctx, long n) {
    QPolynomial sn = sw_monic_poly(ctx, n);
    ZeroSet zs = find_positive_zeros(ctx, sn, sw_hint_exponent());
    ScaledReal lnq = ctx.q().log();
    ScaledReal half = ctx.parse("0.5");
    std::vector<ScaledReal> xi;
    xi.reserve(zs.count());
    for (const ScaledReal& x : zs.zeros)
        xi.push_back(-(x.log() + (ctx.integer(n) + half) * lnq) * half);
    ScaledReal worst = ctx.zero();
    for (std::size_t j = 0; j < zs.count(); ++j) {
        ScaledReal s = (xi[j] + xi[zs.count() - 1 - j]).abs();
        if (s > worst) worst = s;
    }
    return worst;
}

}  // namespace qasym
