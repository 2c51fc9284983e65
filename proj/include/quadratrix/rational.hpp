#pragma once
#include <gmpxx.h>
#include <string>

#include "quadratrix/error.hpp"

namespace quadratrix {

// Exact rational in canonical form: positive denominator, gcd(|num|, den) = 1.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long p, long q) { init(mpz_class(p), mpz_class(q)); }
    Rational(const mpz_class& p, const mpz_class& q) { init(p, q); }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p" or "p/q" with optional sign.
    static Rational from_string(const std::string& text);

    const mpz_class num() const { return q_.get_num(); }
    const mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const {
        if (sgn(o.q_) == 0) throw Error(Error::Kind::DivisionByZero, "division by zero");
        return Rational(mpq_class(q_ / o.q_));
    }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    int compare(const Rational& o) const { return cmp(q_, o.q_); }

    // "p" when integral, otherwise "p/q".
    std::string to_string() const;

private:
    void init(const mpz_class& p, const mpz_class& q) {
        if (sgn(q) == 0) throw Error(Error::Kind::DivisionByZero, "division by zero");
        q_ = mpq_class(p) / mpq_class(q);
        q_.canonicalize();
    }

    mpq_class q_;
};

inline std::string Rational::to_string() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
    return s;
}

inline Rational Rational::from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpz_class(text), mpz_class(1));
        return Rational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw Error(Error::Kind::Parse, "malformed rational literal '" + text + "'");
    }
}

} // namespace quadratrix
