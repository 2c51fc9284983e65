#include "quadratrix/bigfloat.hpp"

#include <algorithm>
#include <utility>

namespace quadratrix {

FloatInterval::FloatInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

FloatInterval::FloatInterval(const FloatInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

FloatInterval::FloatInterval(FloatInterval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

FloatInterval& FloatInterval::operator=(const FloatInterval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

FloatInterval& FloatInterval::operator=(FloatInterval&& o) noexcept {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

FloatInterval::~FloatInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

FloatInterval FloatInterval::of_rational(const Rational& q, mpfr_prec_t prec) {
    FloatInterval r(prec);
    mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
    return r;
}

FloatInterval FloatInterval::pi(mpfr_prec_t prec) {
    FloatInterval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

namespace {

Rational mpfr_to_rational(const mpfr_t v) {
    if (mpfr_zero_p(v)) return Rational(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    mpq_class q(m);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return Rational(q);
}

} // namespace

Rational FloatInterval::lo_rational() const { return mpfr_to_rational(lo_); }
Rational FloatInterval::hi_rational() const { return mpfr_to_rational(hi_); }

FloatInterval add(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

FloatInterval mul(const FloatInterval& a, const FloatInterval& b) {
    mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    FloatInterval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);

    const mpfr_srcptr as[2] = {a.lo_, a.hi_};
    const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

FloatInterval sqrt_nonneg(const FloatInterval& a) {
    FloatInterval r(a.prec_);
    if (mpfr_sgn(a.lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

FloatInterval div_positive(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec_, b.prec_));
    // b.lo > 0: monotone in both endpoints once a's sign is accounted for by
    // picking the extreme divisor per endpoint.
    mpfr_div(r.lo_, a.lo_, mpfr_sgn(a.lo_) >= 0 ? b.hi_ : b.lo_, MPFR_RNDD);
    mpfr_div(r.hi_, a.hi_, mpfr_sgn(a.hi_) >= 0 ? b.lo_ : b.hi_, MPFR_RNDU);
    return r;
}

} // namespace quadratrix
