#pragma once

/* Partition function Z_{LxN}: exact evaluation along three independent
 * routes (Wronskian determinant of monic Stieltjes-Wigert polynomials, the
 * lattice-exponent determinant form, and the single-sum form at L = 1), the
 * theta-determinant prediction of its scaled large-N limit, closed-form
 * product limits for L = 1, 2, and the convergence study tying them
 * together. */

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "qasym/context.hpp"
#include "qasym/qpoly.hpp"
#include "qasym/qseries.hpp"
#include "qasym/scaled_real.hpp"
#include "qasym/stabilize.hpp"

namespace qasym {

struct PartitionSpec {
    long N = 1;
    long L = 1;
    long m = 0;        // floor(N/2)
    long alpha = 0;    // 2m - N, 0 for even N, -1 for odd N
    double beta = 0;   // N - 2m + (L-1)/2
    long lambda_p_exponent = 0;  // lambda = -q^{-N-L/2} = -p^{-(2N+L)}

    ScaledReal lambda(const QContext& ctx) const {
        return -ctx.q_half_power(lambda_p_exponent);
    }
};

inline PartitionSpec make_partition_spec(long N, long L) {
    if (N < 1 || L < 1) throw std::invalid_argument("make_partition_spec: N, L must be >= 1");
    PartitionSpec s;
    s.N = N;
    s.L = L;
    s.m = N / 2;
    s.alpha = 2 * s.m - N;
    s.beta = static_cast<double>(N - 2 * s.m) + (L - 1) / 2.0;
    s.lambda_p_exponent = -(2 * N + L);
    return s;
}

enum class PartitionMethod { wronskian, detS, sumL1 };

inline std::string to_string(PartitionMethod m) {
    switch (m) {
        case PartitionMethod::wronskian: return "wronskian";
        case PartitionMethod::detS: return "detS";
        case PartitionMethod::sumL1: return "sumL1";
    }
    return "?";
}

inline PartitionMethod partition_method_from_string(const std::string& s) {
    if (s == "wronskian") return PartitionMethod::wronskian;
    if (s == "detS") return PartitionMethod::detS;
    if (s == "sumL1") return PartitionMethod::sumL1;
    throw std::invalid_argument("unknown partition method: " + s);
}

struct PartitionResult {
    ScaledReal raw;     // Z_{LxN}
    ScaledReal scaled;  // q^{5LN^2/4 + L^2 N/2} * Z
    PartitionMethod method = PartitionMethod::wronskian;
    long verified_digits = 0;
};

namespace detail {

/* Determinant by Gaussian elimination with full pivoting. */
inline ScaledReal det_full_pivot(const QContext& ctx, std::vector<std::vector<ScaledReal>> a) {
    long n = static_cast<long>(a.size());
    if (n == 0) return ctx.one();
    int sign = 1;
    ScaledReal det = ctx.one();
    for (long step = 0; step < n; ++step) {
        long pr = step, pc = step;
        ScaledReal best = a[step][step].abs();
        for (long r = step; r < n; ++r)
            for (long c = step; c < n; ++c)
                if (a[r][c].abs() > best) {
                    best = a[r][c].abs();
                    pr = r;
                    pc = c;
                }
        if (best.is_zero()) return ctx.zero();
        if (pr != step) {
            std::swap(a[pr], a[step]);
            sign = -sign;
        }
        if (pc != step) {
            for (long r = 0; r < n; ++r) std::swap(a[r][pc], a[r][step]);
            sign = -sign;
        }
        const ScaledReal& pivot = a[step][step];
        for (long r = step + 1; r < n; ++r) {
            ScaledReal factor = a[r][step] / pivot;
            for (long c = step; c < n; ++c) a[r][c] -= factor * a[step][c];
        }
        det *= pivot;
    }
    return sign < 0 ? -det : det;
}

inline BigInt factorial_product(long L) {
    BigInt prod = BigInt::factorial(0);
    for (long j = 1; j < L; ++j) prod *= BigInt::factorial(static_cast<unsigned long>(j));
    return prod;
}

/* Z via the Wronskian of monic Stieltjes-Wigert polynomials:
 * Z = (-1)^{LN} / prod_j j!  *  det[ S_{N+j}^{(i)}(lambda) ]_{i,j=0..L-1}. */
inline ScaledReal z_wronskian(const QContext& ctx, const PartitionSpec& spec) {
    long L = spec.L, N = spec.N;
    ScaledReal lam = spec.lambda(ctx);
    std::vector<std::vector<ScaledReal>> mat(L, std::vector<ScaledReal>());
    for (long i = 0; i < L; ++i) mat[i].reserve(L);
    for (long j = 0; j < L; ++j) {
        QPolynomial base = sw_monic_poly(ctx, N + j);
        for (long i = 0; i < L; ++i) {
            QPolynomial di = differentiate(ctx, base, static_cast<unsigned>(i));
            mat[i].push_back(eval_poly(ctx, di, lam));
        }
    }
    ScaledReal det = det_full_pivot(ctx, std::move(mat));
    ScaledReal z = det / ScaledReal::from_bigint(factorial_product(L), ctx.mantissa_bits());
    if ((L * N) % 2 == 1) z = -z;
    return z;
}

/* Z via the integer-exponent determinant form:
 * S_{ij} = sum_{k=0}^{N+j} [N+j,k] p^{2k^2+k-(k-i)(2N+L)} (-k)_i, then
 * Z = det(S) * (-1)^{LN}/prod_j j! * prod_j (-1)^{N+j} p^{-2(N+j)^2-(N+j)}. */
inline ScaledReal z_detS(const QContext& ctx, const PartitionSpec& spec) {
    long L = spec.L, N = spec.N;
    std::vector<std::vector<ScaledReal>> mat(L, std::vector<ScaledReal>());
    for (long i = 0; i < L; ++i) {
        for (long j = 0; j < L; ++j) {
            ScaledReal entry = ctx.zero();
            for (long k = i; k <= N + j; ++k) {
                BigInt w = BigInt::rising(-k, static_cast<unsigned>(i));
                if (w.is_zero()) continue;
                long e = 2 * k * k + k - (k - i) * (2 * N + L);
                entry += (gauss_binomial(ctx, N + j, k) * ctx.q_half_power(e)).mul_bigint(w);
            }
            mat[i].push_back(std::move(entry));
        }
    }
    ScaledReal z = det_full_pivot(ctx, std::move(mat));
    z /= ScaledReal::from_bigint(factorial_product(L), ctx.mantissa_bits());
    if ((L * N) % 2 == 1) z = -z;
    for (long j = 0; j < L; ++j) {
        long n = N + j;
        z *= ctx.q_half_power(-(2 * n * n + n));
        if (n % 2 == 1) z = -z;
    }
    return z;
}

/* L = 1 single sum: q^{N^2+N/2} Z_{1xN} = sum_k [N k] q^{k^2-kN}. */
inline ScaledReal z_sumL1(const QContext& ctx, const PartitionSpec& spec) {
    long N = spec.N;
    ScaledReal sum = ctx.zero();
    for (long k = 0; k <= N; ++k)
        sum += gauss_binomial(ctx, N, k) * ctx.q_power(k * k - k * N);
    return sum * ctx.q_half_power(-(2 * N * N + N));
}

}  // namespace detail

/* Scaling weight q^{5LN^2/4 + L^2 N/2}; the exponent lives on the quarter
 * lattice (5LN^2 + 2L^2 N quarter units), integer only when LN is even. */
inline ScaledReal partition_scale(const QContext& ctx, const PartitionSpec& spec) {
    long e4 = 5 * spec.L * spec.N * spec.N + 2 * spec.L * spec.L * spec.N;
    return ctx.q_quarter_power(e4);
}

inline PartitionResult partition_exact(const QContext& ctx, const PartitionSpec& spec,
                                       PartitionMethod method = PartitionMethod::wronskian,
                                       long target_digits = 30) {
    if (method == PartitionMethod::sumL1 && spec.L != 1)
        throw std::invalid_argument("partition_exact: sumL1 requires L = 1");
    auto compute = [&spec, method](const QContext& c) {
        switch (method) {
            case PartitionMethod::wronskian: return detail::z_wronskian(c, spec);
            case PartitionMethod::detS: return detail::z_detS(c, spec);
            default: return detail::z_sumL1(c, spec);
        }
    };
    StabilizedValue sv = stabilize(compute, ctx, target_digits);
    if (!(sv.value > ctx.zero()))
        throw numeric_error("partition_exact: positivity violated for N=" +
                            std::to_string(spec.N) + " L=" + std::to_string(spec.L));
    PartitionResult res;
    res.raw = sv.value;
    res.scaled = sv.value * partition_scale(ctx, spec);
    res.method = method;
    res.verified_digits = sv.verified_digits;
    return res;
}

/* Predicted large-N limit of the scaled partition function:
 * q^{L(L-alpha-1)^2/4} / ((q;q)_inf^L prod_j j!) *
 *     det[ X_{i,0}(p^{2 alpha - 2j - (L-1)}) ]_{i,j=0..L-1}. */
inline ScaledReal predicted_scaled(const QContext& ctx, const PartitionSpec& spec,
                                   long target_digits = 30) {
    long L = spec.L, alpha = spec.alpha;
    auto compute = [L, alpha](const QContext& c) {
        std::vector<std::vector<ScaledReal>> mat(L, std::vector<ScaledReal>());
        for (long i = 0; i < L; ++i) {
            for (long j = 0; j < L; ++j) {
                ScaledReal arg = c.q_half_power(2 * alpha - 2 * j - (L - 1));
                mat[i].push_back(X_jm(c, static_cast<unsigned>(i), 0, arg));
            }
        }
        ScaledReal det = detail::det_full_pivot(c, std::move(mat));
        ScaledReal qq = q_pochhammer_inf(c, c.q());
        ScaledReal pref = c.q_quarter_power(L * (L - alpha - 1) * (L - alpha - 1));
        ScaledReal denom = qq.pow_si(L) *
                           ScaledReal::from_bigint(detail::factorial_product(L),
                                                   c.mantissa_bits());
        return pref * det / denom;
    };
    return stabilize(compute, ctx, target_digits).value;
}

/* Closed-form limits for L = 1, 2 (parity picks alpha = 0 or -1). */
inline ScaledReal closed_form_limit(const QContext& ctx, long L, bool even_N) {
    long alpha = even_N ? 0 : -1;
    QContext c2 = ctx.squared_base();  // base q^2 for the L = 1 products
    if (L == 1) {
        // q^{alpha^2/4} (-q^{1+alpha};q^2)_inf (-q^{1-alpha};q^2)_inf / (q;q^2)_inf
        ScaledReal num = q_pochhammer_inf(c2, -ctx.q_power(1 + alpha)) *
                         q_pochhammer_inf(c2, -ctx.q_power(1 - alpha));
        ScaledReal den = q_pochhammer_inf(c2, ctx.q());
        return ctx.q_quarter_power(alpha * alpha) * num / den;
    }
    if (L == 2) {
        // q^{(alpha-1)^2/2}/4 * (-q;q)_inf (-1;q)_inf *
        //   [ -(q;q)_inf^2 (q;q^2)_inf^2 (q^{alpha-1/2};q)_inf (q^{3/2-alpha};q)_inf
        //     + (-q^{alpha-1/2};q)_inf (-q^{3/2-alpha};q)_inf ]
        ScaledReal qq = q_pochhammer_inf(ctx, ctx.q());
        ScaledReal qhalfsq = q_pochhammer_inf(c2, ctx.q());
        ScaledReal lo = ctx.q_half_power(2 * alpha - 1);   // q^{alpha-1/2}
        ScaledReal hi = ctx.q_half_power(3 - 2 * alpha);   // q^{3/2-alpha}
        ScaledReal bracket = -(qq * qq * qhalfsq * qhalfsq * q_pochhammer_inf(ctx, lo) *
                               q_pochhammer_inf(ctx, hi)) +
                             q_pochhammer_inf(ctx, -lo) * q_pochhammer_inf(ctx, -hi);
        ScaledReal front = ctx.q_half_power((alpha - 1) * (alpha - 1)) / ctx.integer(4);
        return front * q_pochhammer_inf(ctx, -ctx.q()) * q_pochhammer_inf(ctx, -ctx.one()) *
               bracket;
    }
    throw std::invalid_argument("closed_form_limit: L must be 1 or 2");
}

/* F(q^{-m} u) = F(u) q^{-m^2/2} u^m, checked to 10 * tail_tol relative. */
inline bool triple_product_shift_check(const QContext& ctx, long m, const ScaledReal& u) {
    if (u.is_zero()) throw std::invalid_argument("triple_product_shift_check: u must be nonzero");
    ScaledReal lhs = triple_product_F(ctx, ctx.q_half_power(-2 * m) * u);
    ScaledReal rhs = triple_product_F(ctx, u) * ctx.q_half_power(-m * m) * u.pow_si(m);
    ScaledReal scale = lhs.abs() + rhs.abs();
    if (scale.is_zero()) return true;
    return ((lhs - rhs) / scale).abs().to_double() <= 10.0 * ctx.tail_tol();
}

struct ConvergenceRow {
    long N = 0;
    int parity = 0;  // N mod 2
    ScaledReal scaled_exact;
    ScaledReal predicted;
    ScaledReal ratio;
    ScaledReal abs_err;  // |ratio - 1|
    long verified_digits = 0;
};

inline ConvergenceRow convergence_row(const QContext& ctx, long L, long N,
                                      PartitionMethod method) {
    PartitionSpec spec = make_partition_spec(N, L);
    PartitionResult ex = partition_exact(ctx, spec, method);
    ConvergenceRow row;
    row.N = N;
    row.parity = static_cast<int>(N % 2);
    row.scaled_exact = ex.scaled;
    row.predicted = predicted_scaled(ctx, spec);
    row.ratio = row.scaled_exact / row.predicted;
    row.abs_err = (row.ratio - ctx.one()).abs();
    row.verified_digits = ex.verified_digits;
    return row;
}

inline std::vector<ConvergenceRow> convergence_table(const QContext& ctx, long L,
                                                     const std::vector<long>& N_list,
                                                     PartitionMethod method =
                                                         PartitionMethod::wronskian,
                                                     long jobs = 1) {
    if (N_list.empty()) throw std::invalid_argument("convergence_table: empty N list");
    std::vector<ConvergenceRow> rows(N_list.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < N_list.size(); ++i)
            rows[i] = convergence_row(ctx, L, N_list[i], method);
        return rows;
    }
    std::vector<std::thread> workers;
    std::size_t stride = static_cast<std::size_t>(jobs);
    for (std::size_t w = 0; w < stride && w < N_list.size(); ++w) {
        workers.emplace_back([&, w]() {
            for (std::size_t i = w; i < N_list.size(); i += stride)
                rows[i] = convergence_row(ctx, L, N_list[i], method);
        });
    }
    for (std::thread& t : workers) t.join();
    return rows;
}

}  // namespace qasym
