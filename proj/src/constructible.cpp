#include "quadratrix/constructible.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <map>
#include <utility>
#include <vector>

#include "quadratrix/bigfloat.hpp"
#include "quadratrix/error.hpp"

namespace quadratrix {

// One level of a quadratic extension tower. The radicand is an element of the
// base chain, strictly positive and not a perfect square there, so adjoining
// its square root is always a proper degree-2 extension.
struct ExtLevel {
    LevelPtr base; // null = the rationals
    Constructible::NodePtr radicand;
    int depth = 1;
};

// Either a rational leaf (level == null) or a + b*sqrt(level->radicand) with
// a, b living strictly below this level and b != 0.
struct Constructible::Node {
    LevelPtr level;
    Rational rat;
    NodePtr a, b;
};

namespace {

using NodePtr = Constructible::NodePtr;
using Node = Constructible::Node;

constexpr int kStartPrecision = 64;
constexpr int kMaxPrecision = 1 << 16;

NodePtr leaf(Rational q) {
    auto n = std::make_shared<Node>();
    n->rat = std::move(q);
    return n;
}

const NodePtr& zero_node() {
    static const NodePtr z = leaf(Rational(0));
    return z;
}

const NodePtr& one_node() {
    static const NodePtr o = leaf(Rational(1));
    return o;
}

bool is_leaf(const NodePtr& x) { return x->level == nullptr; }
bool is_zero_node(const NodePtr& x) { return is_leaf(x) && x->rat.sign() == 0; }
int depth_of(const NodePtr& x) { return x->level ? x->level->depth : 0; }

int cmp_node(const NodePtr& x, const NodePtr& y);

// Structural total order on levels (identity of extension steps).
int cmp_level(const LevelPtr& l, const LevelPtr& m) {
    if (l == m) return 0;
    if (!l) return -1;
    if (!m) return 1;
    if (l->depth != m->depth) return l->depth < m->depth ? -1 : 1;
    if (int c = cmp_level(l->base, m->base)) return c;
    return cmp_node(l->radicand, m->radicand);
}

int cmp_node(const NodePtr& x, const NodePtr& y) {
    if (x == y) return 0;
    bool lx = is_leaf(x), ly = is_leaf(y);
    if (lx != ly) return lx ? -1 : 1;
    if (lx) return x->rat.compare(y->rat);
    if (int c = cmp_level(x->level, y->level)) return c;
    if (int c = cmp_node(x->a, y->a)) return c;
    return cmp_node(x->b, y->b);
}

bool level_eq(const LevelPtr& l, const LevelPtr& m) { return cmp_level(l, m) == 0; }

// True when the chain ending at `s` is an initial segment of the chain
// ending at `d`.
bool chain_is_prefix(const LevelPtr& s, const LevelPtr& d) {
    if (!s) return true;
    LevelPtr w = d;
    if (!w || w->depth < s->depth) return false;
    while (w->depth > s->depth) w = w->base;
    return level_eq(w, s);
}

bool compatible(const NodePtr& x, const NodePtr& y) {
    return chain_is_prefix(x->level, y->level) || chain_is_prefix(y->level, x->level);
}

NodePtr mk_ext(const LevelPtr& level, NodePtr a, NodePtr b) {
    if (is_zero_node(b)) return a;
    auto n = std::make_shared<Node>();
    n->level = level;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

// --- arithmetic over compatible chains -------------------------------------

NodePtr add_n(const NodePtr& x, const NodePtr& y) {
    if (is_leaf(x) && is_leaf(y)) return leaf(x->rat + y->rat);
    int dx = depth_of(x), dy = depth_of(y);
    if (dx == dy) {
        assert(level_eq(x->level, y->level));
        return mk_ext(x->level, add_n(x->a, y->a), add_n(x->b, y->b));
    }
    if (dx > dy) return mk_ext(x->level, add_n(x->a, y), x->b);
    return mk_ext(y->level, add_n(x, y->a), y->b);
}

NodePtr neg_n(const NodePtr& x) {
    if (is_leaf(x)) return leaf(-x->rat);
    return mk_ext(x->level, neg_n(x->a), neg_n(x->b));
}

NodePtr sub_n(const NodePtr& x, const NodePtr& y) { return add_n(x, neg_n(y)); }

NodePtr mul_n(const NodePtr& x, const NodePtr& y) {
    if (is_zero_node(x) || is_zero_node(y)) return zero_node();
    if (is_leaf(x) && is_leaf(y)) return leaf(x->rat * y->rat);
    int dx = depth_of(x), dy = depth_of(y);
    if (dx == dy) {
        assert(level_eq(x->level, y->level));
        // (a + b sqrt r)(c + d sqrt r) = ac + bd r + (ad + bc) sqrt r
        const NodePtr& r = x->level->radicand;
        NodePtr ac = mul_n(x->a, y->a);
        NodePtr bd = mul_n(x->b, y->b);
        NodePtr ad = mul_n(x->a, y->b);
        NodePtr bc = mul_n(x->b, y->a);
        return mk_ext(x->level, add_n(ac, mul_n(bd, r)), add_n(ad, bc));
    }
    if (dx > dy) return mk_ext(x->level, mul_n(x->a, y), mul_n(x->b, y));
    return mk_ext(y->level, mul_n(x, y->a), mul_n(x, y->b));
}

NodePtr inv_n(const NodePtr& x) {
    if (is_leaf(x)) {
        if (x->rat.sign() == 0) throw Error(Error::Kind::DivisionByZero, "division by zero");
        return leaf(Rational(1) / x->rat);
    }
    // 1/(a + b sqrt r) = (a - b sqrt r) / (a^2 - b^2 r); the denominator is a
    // nonzero element of the base chain because sqrt r is not in it.
    const NodePtr& r = x->level->radicand;
    NodePtr den = sub_n(mul_n(x->a, x->a), mul_n(mul_n(x->b, x->b), r));
    if (is_zero_node(den)) throw Error(Error::Kind::Defect, "invalid extension tower (reducible radicand)");
    NodePtr dinv = inv_n(den);
    return mk_ext(x->level, mul_n(x->a, dinv), neg_n(mul_n(x->b, dinv)));
}

NodePtr div_n(const NodePtr& x, const NodePtr& y) {
    if (is_zero_node(y)) throw Error(Error::Kind::DivisionByZero, "division by zero");
    return mul_n(x, inv_n(y));
}

NodePtr half_n(const NodePtr& x) { return mul_n(x, leaf(Rational(1, 2))); }

// --- square roots inside a fixed tower --------------------------------------

std::optional<NodePtr> rat_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    mpz_class num = q.num(), den = q.den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return leaf(Rational(rn, rd));
}

// Some square root of x within the chain ending at `chain` (x must live in a
// prefix of that chain), or nullopt when x is not a perfect square there.
// The returned root may have either sign.
std::optional<NodePtr> try_sqrt_in(const LevelPtr& chain, const NodePtr& x) {
    if (is_zero_node(x)) return zero_node();
    if (!chain) {
        assert(is_leaf(x));
        return rat_sqrt(x->rat);
    }
    if (x->level && level_eq(x->level, chain)) {
        // x = a + b sqrt r with b != 0. Any root c + d sqrt r satisfies
        // c^2 + d^2 r = a and 2cd = b, so c^2 is a root of
        // z^2 - a z + b^2 r / 4 whose discriminant a^2 - b^2 r (the norm of x)
        // must be a square in the base chain.
        const NodePtr& r = chain->radicand;
        NodePtr norm = sub_n(mul_n(x->a, x->a), mul_n(mul_n(x->b, x->b), r));
        auto s = try_sqrt_in(chain->base, norm);
        if (!s) return std::nullopt;
        for (const NodePtr& c2 : {half_n(add_n(x->a, *s)), half_n(sub_n(x->a, *s))}) {
            auto c = try_sqrt_in(chain->base, c2);
            if (c && !is_zero_node(*c)) {
                NodePtr d = div_n(half_n(x->b), *c);
                return mk_ext(chain, *c, d);
            }
        }
        return std::nullopt;
    }
    // x lives strictly below this level: its root is either below as well, or
    // of the pure form d sqrt r (then x / r must be a square below).
    if (auto s = try_sqrt_in(chain->base, x)) return s;
    NodePtr q = div_n(x, chain->radicand);
    if (auto s = try_sqrt_in(chain->base, q)) {
        return mk_ext(chain, zero_node(), *s);
    }
    return std::nullopt;
}

// --- joining towers ----------------------------------------------------------

std::vector<LevelPtr> levels_of(const LevelPtr& top) {
    std::vector<LevelPtr> v;
    for (LevelPtr w = top; w; w = w->base) v.push_back(w);
    std::reverse(v.begin(), v.end());
    return v;
}

// Embeddings are keyed structurally: independently built but equal towers
// use distinct level objects, and value trees may mix them after joins.
struct LevelLess {
    bool operator()(const LevelPtr& a, const LevelPtr& b) const { return cmp_level(a, b) < 0; }
};
using EmbedMap = std::map<LevelPtr, NodePtr, LevelLess>;

// Rewrite v (an element over the source chain) into the join chain, mapping
// each source generator sqrt(r_i) through the embedding.
NodePtr rebuild(const NodePtr& v, const EmbedMap& emb) {
    if (is_leaf(v)) return v;
    NodePtr a = rebuild(v->a, emb);
    NodePtr b = rebuild(v->b, emb);
    const NodePtr& t = emb.at(v->level);
    return add_n(a, mul_n(b, t));
}

int sign_n(const NodePtr& x);
FloatInterval eval_iv(const NodePtr& x, mpfr_prec_t prec);

NodePtr abs_root(const NodePtr& t) { return sign_n(t) < 0 ? neg_n(t) : t; }

// Rewrites both operands over one common tower: the shared chain prefix is
// kept, remaining radicands are adjoined in a deterministic structural order,
// and radicands that become perfect squares in the accumulated tower are
// discarded in favor of their explicit roots.
std::pair<NodePtr, NodePtr> to_common(const NodePtr& x, const NodePtr& y) {
    if (compatible(x, y)) return {x, y};

    std::vector<LevelPtr> fx = levels_of(x->level), fy = levels_of(y->level);
    size_t shared = 0;
    while (shared < fx.size() && shared < fy.size() && level_eq(fx[shared], fy[shared])) ++shared;

    LevelPtr top = shared ? fx[shared - 1] : nullptr;
    EmbedMap ex, ey;
    for (size_t j = 0; j < shared; ++j) {
        NodePtr gen = mk_ext(fx[j], zero_node(), one_node());
        ex[fx[j]] = gen;
        ey[fy[j]] = gen;
    }

    size_t i = shared, j = shared;
    while (i < fx.size() || j < fy.size()) {
        bool take_x;
        if (i >= fx.size()) {
            take_x = false;
        } else if (j >= fy.size()) {
            take_x = true;
        } else {
            take_x = cmp_node(fx[i]->radicand, fy[j]->radicand) <= 0;
        }
        const LevelPtr& src = take_x ? fx[i] : fy[j];
        EmbedMap& emb = take_x ? ex : ey;
        NodePtr radicand = rebuild(src->radicand, emb);
        if (auto t = try_sqrt_in(top, radicand)) {
            emb[src] = abs_root(*t);
        } else {
            auto lvl = std::make_shared<ExtLevel>();
            lvl->base = top;
            lvl->radicand = radicand;
            lvl->depth = (top ? top->depth : 0) + 1;
            top = lvl;
            emb[src] = mk_ext(lvl, zero_node(), one_node());
        }
        if (take_x) ++i; else ++j;
    }
    return {rebuild(x, ex), rebuild(y, ey)};
}

template <typename F>
NodePtr binop(const NodePtr& x, const NodePtr& y, F f) {
    if (compatible(x, y)) return f(x, y);
    auto [x2, y2] = to_common(x, y);
    return f(x2, y2);
}

// --- numeric certification ----------------------------------------------------

FloatInterval eval_iv(const NodePtr& x, mpfr_prec_t prec) {
    if (is_leaf(x)) return FloatInterval::of_rational(x->rat, prec);
    FloatInterval r = eval_iv(x->level->radicand, prec);
    FloatInterval a = eval_iv(x->a, prec);
    FloatInterval b = eval_iv(x->b, prec);
    return add(a, mul(b, sqrt_nonneg(r)));
}

// Exact sign. A non-leaf node in a valid tower is never zero (that would put
// sqrt(r) inside the base field), so interval refinement terminates.
int sign_n(const NodePtr& x) {
    if (is_leaf(x)) return x->rat.sign();
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        FloatInterval iv = eval_iv(x, prec);
        if (iv.lo_sign() > 0) return 1;
        if (iv.hi_sign() < 0) return -1;
    }
    throw Error(Error::Kind::Defect, "sign refinement exceeded the precision cap");
}

NodePtr sqrt_n(const NodePtr& x) {
    int s = sign_n(x);
    if (s < 0) throw Error(Error::Kind::NegativeRadicand, "negative radicand");
    if (s == 0) return zero_node();
    if (auto t = try_sqrt_in(x->level, x)) return abs_root(*t);
    auto lvl = std::make_shared<ExtLevel>();
    lvl->base = x->level;
    lvl->radicand = x;
    lvl->depth = depth_of(x) + 1;
    return mk_ext(lvl, zero_node(), one_node());
}

// --- decimal output -------------------------------------------------------

mpz_class pow10_z(int n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(n));
    return p;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpz_class trunc_q(const mpq_class& q) {
    return sgn(q) >= 0 ? floor_q(q) : ceil_q(q);
}

// Round half to even on an exact rational.
mpz_class round_half_even_q(const mpq_class& q) {
    mpz_class fl = floor_q(q);
    mpq_class frac = q - mpq_class(fl);
    int c = cmp(frac, mpq_class(1, 2));
    if (c < 0) return fl;
    if (c > 0) return fl + 1;
    return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

std::string format_scaled(const mpz_class& n, int digits) {
    mpz_class a = ::abs(n);
    mpz_class scale = pow10_z(digits);
    mpz_class ip = a / scale;
    mpz_class fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    std::string out;
    if (sgn(n) < 0) out += "-";
    out += ip.get_str() + "." + frac;
    return out;
}

std::string to_decimal_impl(const NodePtr& x, int n_digits, bool truncate) {
    if (n_digits < 1) throw Error(Error::Kind::Usage, "decimal output needs at least one digit");
    mpz_class scale = pow10_z(n_digits);
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        FloatInterval iv = eval_iv(x, prec);
        mpq_class lo_s = iv.lo_rational().raw() * scale;
        mpq_class hi_s = iv.hi_rational().raw() * scale;
        if (truncate) {
            mpz_class nlo = trunc_q(lo_s), nhi = trunc_q(hi_s);
            if (nlo == nhi) return format_scaled(nlo, n_digits);
            // The interval may straddle an integer the value hits exactly.
            if (hi_s - lo_s < 1) {
                mpz_class k = ceil_q(lo_s);
                if (mpq_class(k) <= hi_s) {
                    NodePtr diff = sub_n(mul_n(x, leaf(Rational(scale, mpz_class(1)))), leaf(Rational(k, mpz_class(1))));
                    if (is_zero_node(diff)) return format_scaled(k, n_digits);
                }
            }
            continue;
        }
        mpz_class nlo = round_half_even_q(lo_s);
        mpz_class nhi = round_half_even_q(hi_s);
        if (nlo == nhi) return format_scaled(nlo, n_digits);
        if (hi_s - lo_s < mpq_class(1, 4)) {
            // The interval straddles a single half-integer boundary k/2
            // (k odd); decide whether the value sits exactly on it.
            mpz_class k = ceil_q(lo_s * 2);
            if (mpz_even_p(k.get_mpz_t())) k = k + 1;
            if (mpq_class(k, mpz_class(2)) <= hi_s) {
                NodePtr diff = sub_n(mul_n(x, leaf(Rational(scale * 2, mpz_class(1)))), leaf(Rational(k, mpz_class(1))));
                if (is_zero_node(diff)) {
                    mpz_class m = (k - 1) / 2; // value = m + 1/2 exactly
                    mpz_class n = mpz_even_p(m.get_mpz_t()) ? m : m + 1;
                    return format_scaled(n, n_digits);
                }
            }
        }
    }
    throw Error(Error::Kind::Defect, "decimal rounding exceeded the precision cap");
}

} // namespace

// --- public surface ----------------------------------------------------------

Constructible::Constructible() : n_(zero_node()) {}
Constructible::Constructible(long n) : n_(leaf(Rational(n))) {}
Constructible::Constructible(const Rational& q) : n_(leaf(q)) {}

Constructible Constructible::from_rational(long p, long q) { return Constructible(Rational(p, q)); }

bool Constructible::is_rational() const { return is_leaf(n_); }

Rational Constructible::as_rational() const {
    if (!is_rational()) throw Error(Error::Kind::Defect, "value is not rational");
    return n_->rat;
}

int Constructible::sign() const { return sign_n(n_); }
bool Constructible::is_zero() const { return is_zero_node(n_); }

Constructible Constructible::operator-() const { return Constructible(neg_n(n_)); }

Constructible operator+(const Constructible& x, const Constructible& y) {
    return Constructible(binop(x.n_, y.n_, add_n));
}
Constructible operator-(const Constructible& x, const Constructible& y) {
    return Constructible(binop(x.n_, y.n_, sub_n));
}
Constructible operator*(const Constructible& x, const Constructible& y) {
    return Constructible(binop(x.n_, y.n_, mul_n));
}
Constructible operator/(const Constructible& x, const Constructible& y) {
    if (y.is_zero()) throw Error(Error::Kind::DivisionByZero, "division by zero");
    return Constructible(binop(x.n_, y.n_, div_n));
}

Constructible sqrt(const Constructible& x) { return Constructible(sqrt_n(x.n_)); }

bool equals(const Constructible& x, const Constructible& y) {
    return is_zero_node(binop(x.n_, y.n_, sub_n));
}

int Constructible::compare(const Constructible& o) const {
    return sign_n(binop(n_, o.n_, sub_n));
}

Constructible abs(const Constructible& x) { return x.sign() < 0 ? -x : x; }

std::string Constructible::to_decimal(int n_digits) const {
    return to_decimal_impl(n_, n_digits, false);
}

std::string Constructible::to_decimal_truncated(int n_digits) const {
    return to_decimal_impl(n_, n_digits, true);
}

Interval Constructible::approx_interval(int precision_bits) const {
    if (precision_bits < 1) throw Error(Error::Kind::Usage, "precision_bits must be positive");
    // Cumulative intersection along a fixed refinement schedule keeps results
    // nested across different requested precisions.
    bool have = false;
    Rational lo, hi;
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        FloatInterval iv = eval_iv(n_, prec);
        Rational l = iv.lo_rational(), h = iv.hi_rational();
        if (!have) {
            lo = l;
            hi = h;
            have = true;
        } else {
            if (l > lo) lo = l;
            if (h < hi) hi = h;
        }
        // width <= 2^(1-p) * max(1, |value|); bound |value| from the interval
        // itself (0 when the sign is not yet resolved).
        Rational width = hi - lo;
        Rational mag(0);
        if (lo.sign() > 0) mag = lo;
        else if (hi.sign() < 0) mag = -hi;
        if (mag < Rational(1)) mag = Rational(1);
        mpq_class bound = mag.raw();
        mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), static_cast<mp_bitcnt_t>(precision_bits - 1));
        if (width.raw() <= bound) return Interval{lo, hi, precision_bits};
    }
    throw Error(Error::Kind::Defect, "interval refinement exceeded the precision cap");
}

mpz_class Constructible::floor() const {
    if (is_rational()) return floor_q(n_->rat.raw());
    for (int prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        FloatInterval iv = eval_iv(n_, prec);
        mpz_class flo = floor_q(iv.lo_rational().raw());
        mpz_class fhi = floor_q(iv.hi_rational().raw());
        if (flo == fhi) return flo;
        if (fhi == flo + 1) {
            // The interval straddles the integer fhi; decide exactly.
            NodePtr diff = sub_n(n_, leaf(Rational(fhi, mpz_class(1))));
            if (is_zero_node(diff)) return fhi;
        }
    }
    throw Error(Error::Kind::Defect, "floor refinement exceeded the precision cap");
}

int Constructible::tower_depth() const { return depth_of(n_); }

std::string Constructible::to_expr_string() const {
    struct Fmt {
        static std::string go(const NodePtr& x) {
            if (is_leaf(x)) return x->rat.to_string();
            std::string root = "sqrt(" + go(x->level->radicand) + ")";
            std::string bs = is_leaf(x->b) && x->b->rat == Rational(1) ? root : go(x->b) + "*" + root;
            if (is_zero_node(x->a)) return bs;
            return "(" + go(x->a) + " + " + bs + ")";
        }
    };
    return Fmt::go(n_);
}

} // namespace quadratrix
