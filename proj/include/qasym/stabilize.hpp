#pragma once

/* Precision-escalation protocol: run a context-parameterized computation at
 * doubling precision until two successive runs agree to the requested number
 * of significant digits. Mitigates silent cancellation (determinants). */

#include <functional>

#include "qasym/context.hpp"
#include "qasym/scaled_real.hpp"

namespace qasym {

struct StabilizedValue {
    ScaledReal value;
    long verified_digits = 0;
    int escalations = 0;
};

/* computation must be a pure function of the context. Runs at bits,
 * 2*bits, ... until two successive runs agree to target_digits; the pair
 * (bits, 2*bits) succeeding reports escalations = 0. Throws numeric_error
 * after 6 escalations without agreement. */
template <typename Fn>
StabilizedValue stabilize(Fn&& computation, const QContext& ctx, long target_digits) {
    constexpr int kMaxEscalations = 6;
    long bits = ctx.mantissa_bits();
    ScaledReal prev = computation(ctx);
    for (int esc = 0; esc <= kMaxEscalations; ++esc) {
        bits *= 2;
        QContext hi = ctx.with_precision(bits);
        ScaledReal next = computation(hi);
        long digits = agreed_digits(prev, next, hi.max_decimal_digits());
        if (digits >= target_digits) return StabilizedValue{next, digits, esc};
        prev = next;
    }
    throw numeric_error("stabilize: no " + std::to_string(target_digits) +
                        "-digit agreement after 6 precision doublings");
}

}  // namespace qasym
