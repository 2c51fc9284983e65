#pragma once
#include <mpfr.h>

#include "quadratrix/rational.hpp"

namespace quadratrix {

// Closed interval [lo, hi] with binary floating endpoints at a fixed working
// precision. Every operation rounds outward, so the invariant
// "true value inside [lo, hi]" is preserved through arbitrary expression
// evaluation. Endpoints are dyadic rationals by construction.
class FloatInterval {
public:
    explicit FloatInterval(mpfr_prec_t prec);
    FloatInterval(const FloatInterval& o);
    FloatInterval(FloatInterval&& o) noexcept;
    FloatInterval& operator=(const FloatInterval& o);
    FloatInterval& operator=(FloatInterval&& o) noexcept;
    ~FloatInterval();

    static FloatInterval of_rational(const Rational& q, mpfr_prec_t prec);
    static FloatInterval pi(mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }

    int lo_sign() const { return mpfr_sgn(lo_); }
    int hi_sign() const { return mpfr_sgn(hi_); }
    bool excludes_zero() const { return lo_sign() > 0 || hi_sign() < 0; }
    bool is_positive() const { return lo_sign() > 0; }

    Rational lo_rational() const;
    Rational hi_rational() const;

    friend FloatInterval add(const FloatInterval& a, const FloatInterval& b);
    friend FloatInterval mul(const FloatInterval& a, const FloatInterval& b);
    // Valid for radicands known to be >= 0; a slightly negative lower bound
    // (rounding slack around a positive true value) is clamped to zero.
    friend FloatInterval sqrt_nonneg(const FloatInterval& a);
    // Requires b.lo > 0.
    friend FloatInterval div_positive(const FloatInterval& a, const FloatInterval& b);

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

} // namespace quadratrix
