#pragma once

/* Evaluation context: the base q in (0,1) ingested as an exact decimal
 * literal, the working precision, and the series-truncation tolerance.
 * Immutable. Sibling contexts (squared base, square-root base) and
 * precision-escalated copies re-derive the base from the stored literal,
 * so escalation is reproducible and never compounds rounding. */

#include <string>

#include "qasym/scaled_real.hpp"

namespace qasym {

class QContext {
  public:
    static constexpr long kMinMantissaBits = 64;

    QContext(const std::string& q_literal, long mantissa_bits, double tail_tol)
        : QContext(q_literal, mantissa_bits, tail_tol, 1, 0) {}

    const std::string& q_literal() const { return q_literal_; }
    long mantissa_bits() const { return mantissa_bits_; }
    double tail_tol() const { return tail_tol_; }

    /* The effective base: parsed literal raised to pow_num / 2^pow_log2_den. */
    const ScaledReal& q() const { return q_; }
    /* p = q^{1/2}: the half-integer exponent lattice base. */
    const ScaledReal& p() const { return p_; }

    ScaledReal zero() const { return ScaledReal(static_cast<mpfr_prec_t>(mantissa_bits_)); }
    ScaledReal one() const { return ScaledReal::from_si(1, mantissa_bits_); }
    ScaledReal integer(long v) const { return ScaledReal::from_si(v, mantissa_bits_); }
    ScaledReal real(double v) const { return ScaledReal::from_double(v, mantissa_bits_); }
    ScaledReal parse(const std::string& s) const { return ScaledReal::from_decimal(s, mantissa_bits_); }

    /* q^{e/2} = p^e for any signed integer e; even exponents stay on the
     * integer lattice of q itself (exact for dyadic q). */
    ScaledReal q_half_power(long e) const {
        return e % 2 == 0 ? q_.pow_si(e / 2) : p_.pow_si(e);
    }

    /* q^{e/4}: quarter-integer exponents (scaling prefactors whose exponent
     * lattice does not reduce to half integers, e.g. odd L*N). */
    ScaledReal q_quarter_power(long e) const {
        return e % 2 == 0 ? q_half_power(e / 2) : quarter_.pow_si(e);
    }

    /* q^e for integer e. */
    ScaledReal q_power(long e) const { return q_.pow_si(e); }

    /* q^x for real x (leaves the exponent lattice; used for real alpha). */
    ScaledReal q_power_real(const ScaledReal& x) const { return q_.pow(x); }

    /* Same base, different working precision. */
    QContext with_precision(long bits) const {
        return QContext(q_literal_, bits, tail_tol_, pow_num_, pow_log2_den_);
    }

    /* Base q^2 sibling: used for (a;q^2)_inf products. */
    QContext squared_base() const {
        if (pow_log2_den_ > 0)
            return QContext(q_literal_, mantissa_bits_, tail_tol_, pow_num_, pow_log2_den_ - 1);
        return QContext(q_literal_, mantissa_bits_, tail_tol_, pow_num_ * 2, 0);
    }

    /* Base q^{1/2} sibling: used for bilateral series with half-integer
     * square exponents. */
    QContext sqrt_base() const {
        if (pow_num_ % 2 == 0)
            return QContext(q_literal_, mantissa_bits_, tail_tol_, pow_num_ / 2, pow_log2_den_);
        return QContext(q_literal_, mantissa_bits_, tail_tol_, pow_num_, pow_log2_den_ + 1);
    }

    /* Ceiling on meaningful decimal digits at this precision. */
    long max_decimal_digits() const {
        return static_cast<long>(static_cast<double>(mantissa_bits_) * 0.30102999566398119);
    }

  private:
    QContext(const std::string& q_literal, long mantissa_bits, double tail_tol, long pow_num,
             int pow_log2_den)
        : q_literal_(q_literal),
          mantissa_bits_(mantissa_bits),
          tail_tol_(tail_tol),
          pow_num_(pow_num),
          pow_log2_den_(pow_log2_den),
          q_(static_cast<mpfr_prec_t>(std::max(mantissa_bits, kMinMantissaBits))),
          p_(q_.precision()),
          quarter_(q_.precision()) {
        if (mantissa_bits < kMinMantissaBits)
            throw std::invalid_argument("mantissa_bits must be >= 64");
        if (!(tail_tol > 0) || tail_tol >= 0x1p-32)
            throw std::invalid_argument("tail_tol must be in (0, 2^-32)");
        ScaledReal base = ScaledReal::from_decimal(q_literal, mantissa_bits);
        if (!(base > zero()) || !(base < one()))
            throw std::invalid_argument("q must satisfy 0 < q < 1, got '" + q_literal + "'");
        q_ = base.pow_si(pow_num_);
        for (int i = 0; i < pow_log2_den_; ++i) q_ = q_.sqrt();
        p_ = q_.sqrt();
        quarter_ = p_.sqrt();
    }

    std::string q_literal_;
    long mantissa_bits_;
    double tail_tol_;
    long pow_num_;
    int pow_log2_den_;
    ScaledReal q_;
    ScaledReal p_;
    ScaledReal quarter_;
};

inline QContext make_context(const std::string& q_literal, long mantissa_bits = 256,
                             double tail_tol = 1e-40) {
    return QContext(q_literal, mantissa_bits, tail_tol);
}

}  // namespace qasym
