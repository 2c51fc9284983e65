#pragma once
#include <memory>
#include <string>

#include "quadratrix/rational.hpp"

namespace quadratrix {

struct ExtLevel;
using LevelPtr = std::shared_ptr<const ExtLevel>;

// Certified enclosure of an exact value: lo <= value <= hi with dyadic
// endpoints and width <= 2^(1-precision_bits) * max(1, |value|).
struct Interval {
    Rational lo;
    Rational hi;
    int precision_bits = 0;

    Rational width() const { return hi - lo; }
};

// An exact constructible real: a rational, or a + b*sqrt(r) over a tower of
// quadratic extensions of the rationals. Representations are canonical per
// tower (zero coefficients collapse, radicands are never perfect squares in
// their subfield), which makes the zero test purely structural. Values are
// immutable and cheaply shareable.
class Constructible {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    Constructible(); // zero
    Constructible(long n);
    Constructible(const Rational& q);

    static Constructible from_rational(const Rational& q) { return Constructible(q); }
    static Constructible from_rational(long p, long q);

    bool is_rational() const;
    // Valid only when is_rational().
    Rational as_rational() const;

    // Exact sign in {-1, 0, +1}. Zero is decided structurally; nonzero signs
    // are certified by interval refinement.
    int sign() const;
    bool is_zero() const;

    // Correctly rounded (round half to even) decimal with n_digits fractional
    // digits; exact rounding-boundary ties are detected algebraically.
    std::string to_decimal(int n_digits) const;

    // Truncated (toward zero) decimal expansion with n_digits fractional
    // digits; this is how "correct to k decimal places" counts digits.
    std::string to_decimal_truncated(int n_digits) const;

    Interval approx_interval(int precision_bits) const;

    // Parenthesized radical expression, mainly for diagnostics and tests.
    std::string to_expr_string() const;

    // Number of quadratic extensions below this value's top level
    // (0 for rationals).
    int tower_depth() const;

    Constructible operator-() const;
    friend Constructible operator+(const Constructible& x, const Constructible& y);
    friend Constructible operator-(const Constructible& x, const Constructible& y);
    friend Constructible operator*(const Constructible& x, const Constructible& y);
    friend Constructible operator/(const Constructible& x, const Constructible& y);

    Constructible& operator+=(const Constructible& o) { return *this = *this + o; }
    Constructible& operator-=(const Constructible& o) { return *this = *this - o; }
    Constructible& operator*=(const Constructible& o) { return *this = *this * o; }
    Constructible& operator/=(const Constructible& o) { return *this = *this / o; }

    // Exact nonnegative square root. If the argument is a perfect square in
    // its own tower no new extension level is created.
    friend Constructible sqrt(const Constructible& x);

    // Exact value equality (sign of the difference).
    friend bool equals(const Constructible& x, const Constructible& y);
    bool operator==(const Constructible& o) const { return equals(*this, o); }
    bool operator!=(const Constructible& o) const { return !equals(*this, o); }

    // Exact total order on values.
    int compare(const Constructible& o) const;
    bool operator<(const Constructible& o) const { return compare(o) < 0; }
    bool operator<=(const Constructible& o) const { return compare(o) <= 0; }
    bool operator>(const Constructible& o) const { return compare(o) > 0; }
    bool operator>=(const Constructible& o) const { return compare(o) >= 0; }

    // Greatest integer <= value, decided exactly.
    mpz_class floor() const;

    const NodePtr& node() const { return n_; }
    explicit Constructible(NodePtr n) : n_(std::move(n)) {}

private:
    NodePtr n_;
};

Constructible abs(const Constructible& x);

} // namespace quadratrix
