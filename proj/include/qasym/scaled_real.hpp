#pragma once

/* Arbitrary-precision scaled arithmetic: sign * mantissa * 2^exponent2 with
 * per-value precision. Backed by MPFR/GMP; all rounding is to-nearest. */

#include <mpfr.h>
#include <gmp.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace qasym {

/* Thrown when a numerical procedure cannot deliver the requested accuracy
 * (stabilization exhaustion, truncation failure, zero-count mismatch).
 * Distinct from std::invalid_argument, which signals contract violations. */
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Exact integer arithmetic for factorials and rising-factorial weights. */
class BigInt {
  public:
    BigInt() { mpz_init_set_si(z_, 0); }
    explicit BigInt(long v) { mpz_init_set_si(z_, v); }
    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init_set_si(z_, 0);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    static BigInt factorial(unsigned long n) {
        BigInt r;
        mpz_fac_ui(r.z_, n);
        return r;
    }

    /* (a)_j = a(a+1)...(a+j-1); empty product for j = 0. */
    static BigInt rising(long a, unsigned j) {
        BigInt r(1);
        for (unsigned i = 0; i < j; ++i) mpz_mul_si(r.z_, r.z_, a + static_cast<long>(i));
        return r;
    }

    BigInt& operator*=(const BigInt& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator*=(long v) {
        mpz_mul_si(z_, z_, v);
        return *this;
    }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    std::string to_string() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    const mpz_t& raw() const { return z_; }

  private:
    mpz_t z_;
};

class ScaledReal {
  public:
    explicit ScaledReal(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, clamp_prec(prec));
        mpfr_set_zero(v_, 1);
    }
    ScaledReal(const ScaledReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    ScaledReal(ScaledReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    ScaledReal& operator=(const ScaledReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ScaledReal& operator=(ScaledReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~ScaledReal() { mpfr_clear(v_); }

    static ScaledReal from_si(long v, mpfr_prec_t prec) {
        ScaledReal r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static ScaledReal from_double(double v, mpfr_prec_t prec) {
        ScaledReal r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    static ScaledReal from_bigint(const BigInt& z, mpfr_prec_t prec) {
        ScaledReal r(prec);
        mpfr_set_z(r.v_, z.raw(), MPFR_RNDN);
        return r;
    }

    /* Parses "±d.ddd…e±EEE" (plain decimals accepted too). Rejects anything
     * with trailing garbage. */
    static ScaledReal from_decimal(const std::string& s, mpfr_prec_t prec) {
        ScaledReal r(prec);
        if (s.empty()) throw std::invalid_argument("empty decimal literal");
        const char* begin = s.c_str();
        char* end = nullptr;
        mpfr_strtofr(r.v_, begin, &end, 10, MPFR_RNDN);
        if (end != begin + s.size())
            throw std::invalid_argument("malformed decimal literal: '" + s + "'");
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    /* value = sign * mantissa * 2^exponent2 with mantissa in [1,2). */
    long exponent2() const {
        if (is_zero()) return 0;
        return static_cast<long>(mpfr_get_exp(v_)) - 1;
    }
    ScaledReal mantissa() const {
        ScaledReal r(precision());
        if (is_zero()) return r;
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        mpfr_div_2si(r.v_, r.v_, exponent2(), MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /* "±d.ddd…e±EEE" with exactly `digits` mantissa digits; zero -> "0e0". */
    std::string to_decimal(size_t digits = 16) const {
        if (is_zero()) return "0e0";
        if (!is_finite()) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
        mpfr_exp_t e = 0;
        char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string digits_str(raw);
        mpfr_free_str(raw);
        bool neg = !digits_str.empty() && digits_str[0] == '-';
        if (neg) digits_str.erase(0, 1);
        std::string out = neg ? "-" : "";
        out += digits_str.substr(0, 1);
        if (digits_str.size() > 1) {
            out += '.';
            out += digits_str.substr(1);
        }
        out += 'e';
        out += std::to_string(static_cast<long long>(e) - 1);
        return out;
    }

    friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
        ScaledReal r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) {
        ScaledReal r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
        ScaledReal r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
        ScaledReal r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    ScaledReal operator-() const {
        ScaledReal r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    ScaledReal& operator+=(const ScaledReal& o) { return *this = *this + o; }
    ScaledReal& operator-=(const ScaledReal& o) { return *this = *this - o; }
    ScaledReal& operator*=(const ScaledReal& o) { return *this = *this * o; }
    ScaledReal& operator/=(const ScaledReal& o) { return *this = *this / o; }

    ScaledReal abs() const {
        ScaledReal r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    ScaledReal sqrt() const {
        if (sign() < 0) throw std::invalid_argument("sqrt of negative value");
        ScaledReal r(precision());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    ScaledReal exp() const {
        ScaledReal r(precision());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    ScaledReal log() const {
        if (sign() <= 0) throw std::invalid_argument("log of non-positive value");
        ScaledReal r(precision());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    ScaledReal pow_si(long e) const {
        ScaledReal r(precision());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    /* Real-exponent power; base must be positive. */
    ScaledReal pow(const ScaledReal& e) const {
        if (sign() <= 0) throw std::invalid_argument("pow of non-positive base");
        ScaledReal r(join(*this, e));
        mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
        return r;
    }
    /* Exact scaling by 2^e. */
    ScaledReal mul_2si(long e) const {
        ScaledReal r(precision());
        mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    ScaledReal mul_bigint(const BigInt& z) const {
        ScaledReal r(precision());
        mpfr_mul_z(r.v_, v_, z.raw(), MPFR_RNDN);
        return r;
    }

    int compare(const ScaledReal& o) const { return mpfr_cmp(v_, o.v_); }
    friend bool operator<(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) < 0; }
    friend bool operator>(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) > 0; }
    friend bool operator<=(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) <= 0; }
    friend bool operator>=(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) >= 0; }
    friend bool operator==(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) == 0; }
    friend bool operator!=(const ScaledReal& a, const ScaledReal& b) { return a.compare(b) != 0; }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    static mpfr_prec_t clamp_prec(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN); }
    static mpfr_prec_t join(const ScaledReal& a, const ScaledReal& b) {
        return std::max(a.precision(), b.precision());
    }
    mpfr_t v_;
};

/* Number of significant decimal digits on which a and b agree; `full` is the
 * report for exact equality (caller passes the precision-derived ceiling). */
inline long agreed_digits(const ScaledReal& a, const ScaledReal& b, long full) {
    ScaledReal diff = (a - b).abs();
    if (diff.is_zero()) return full;
    ScaledReal scale = std::max(a.abs(), b.abs());
    if (scale.is_zero()) return full;
    ScaledReal rel = diff / scale;
    /* digits = floor(-log10(rel)) */
    mpfr_t lg;
    mpfr_init2(lg, 64);
    mpfr_log10(lg, rel.raw(), MPFR_RNDN);
    double d = -mpfr_get_d(lg, MPFR_RNDN);
    mpfr_clear(lg);
    long digits = static_cast<long>(d >= 0 ? d : 0);
    return std::min(digits, full);
}

}  // namespace qasym
