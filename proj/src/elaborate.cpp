#include "quadratrix/elaborate.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "quadratrix/error.hpp"

namespace quadratrix {

namespace {

// Whether a length expression is already in elaborated form (a plain segment
// transfer).
bool is_plain_dist(const LenExprPtr& e) { return e && e->kind == LenExpr::Kind::Dist; }

// r * dist or r alone; Div by a rational counts as scaling by its inverse.
struct ScalePattern {
    Rational factor;
    LenExprPtr base; // null = pure rational (scale of the unit)
};

std::optional<ScalePattern> as_scale(const LenExprPtr& e) {
    switch (e->kind) {
        case LenExpr::Kind::RationalLit:
            return ScalePattern{e->value, nullptr};
        case LenExpr::Kind::Mul:
            if (e->lhs->kind == LenExpr::Kind::RationalLit && e->rhs->kind != LenExpr::Kind::RationalLit)
                return ScalePattern{e->lhs->value, e->rhs};
            if (e->rhs->kind == LenExpr::Kind::RationalLit && e->lhs->kind != LenExpr::Kind::RationalLit)
                return ScalePattern{e->rhs->value, e->lhs};
            return std::nullopt;
        case LenExpr::Kind::Div:
            if (e->rhs->kind == LenExpr::Kind::RationalLit)
                return ScalePattern{Rational(1) / e->rhs->value, e->lhs};
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

int ceil_log2(long n) {
    int k = 0;
    long v = 1;
    while (v < n) {
        v <<= 1;
        ++k;
    }
    return k;
}

class Elaborator {
public:
    explicit Elaborator(const Program& in) : in_(in) {
        out_.name = in.name;
        out_.unit_p = in.unit_p;
        out_.unit_q = in.unit_q;
    }

    Program run() {
        for (const Step& s : in_.steps) {
            if (s.name().rfind("__aux", 0) == 0)
                throw Error(Error::Kind::Parse, "input programs may not bind reserved '__aux' names");
            expand_step(s);
        }
        return std::move(out_);
    }

private:
    using Seg = std::pair<std::string, std::string>;

    // --- emission primitives -------------------------------------------------

    std::string fresh() { return "__aux" + std::to_string(aux_counter_++); }

    void push(Step s) { out_.steps.push_back(std::move(s)); }

    std::string emit_initial(const std::string& name, Rational x, Rational y) {
        Step s;
        s.kind = Step::Kind::InitialPoint;
        s.names = {name};
        s.x = std::move(x);
        s.y = std::move(y);
        push(std::move(s));
        return name;
    }

    std::string emit_line(const std::string& p, const std::string& q, std::string bind = {}) {
        auto key = p < q ? Seg{p, q} : Seg{q, p};
        if (bind.empty()) {
            auto it = line_cache_.find(key);
            if (it != line_cache_.end()) return it->second;
            // Both endpoints on one already-drawn line: it is that line.
            auto pl = on_lines_.find(p);
            auto ql = on_lines_.find(q);
            if (pl != on_lines_.end() && ql != on_lines_.end()) {
                for (const std::string& l : pl->second) {
                    if (ql->second.count(l)) {
                        line_cache_.emplace(key, l);
                        return l;
                    }
                }
            }
        }
        std::string name = bind.empty() ? fresh() : bind;
        Step s;
        s.kind = Step::Kind::DrawLine;
        s.names = {name};
        s.arg1 = p;
        s.arg2 = q;
        push(std::move(s));
        line_cache_.emplace(key, name);
        line_defs_[name] = {p, q};
        on_lines_[p].insert(name);
        on_lines_[q].insert(name);
        return name;
    }

    std::string emit_circle(const std::string& center, const std::string& through, std::string bind = {}) {
        Seg key{center, through};
        if (bind.empty()) {
            auto it = circle_cache_.find(key);
            if (it != circle_cache_.end()) return it->second;
        }
        std::string name = bind.empty() ? fresh() : bind;
        Step s;
        s.kind = Step::Kind::DrawCircle;
        s.names = {name};
        s.arg1 = center;
        s.arg2 = through;
        push(std::move(s));
        circle_cache_.emplace(key, name);
        return name;
    }

    std::string emit_intersect(const std::string& a, const std::string& b, Selector sel,
                               std::string bind = {}) {
        std::string name = bind.empty() ? fresh() : bind;
        Step s;
        s.kind = Step::Kind::Intersect;
        s.names = {name};
        s.arg1 = a;
        s.arg2 = b;
        s.selector = std::move(sel);
        push(std::move(s));
        if (line_defs_.count(a)) on_lines_[name].insert(a);
        if (line_defs_.count(b)) on_lines_[name].insert(b);
        return name;
    }

    std::string emit_onray(const std::string& origin, const std::string& toward, LenExprPtr dist_expr,
                           std::string bind = {}) {
        std::string name = bind.empty() ? fresh() : bind;
        Step s;
        s.kind = Step::Kind::OnRay;
        s.names = {name};
        s.arg1 = origin;
        s.arg2 = toward;
        s.length = std::move(dist_expr);
        push(std::move(s));
        // The new point lies on every drawn line through both ray points.
        for (const std::string& l : on_lines_[origin]) {
            if (on_lines_[toward].count(l)) on_lines_[name].insert(l);
        }
        return name;
    }

    void emit_lendef(const std::string& name, const Seg& seg) {
        Step s;
        s.kind = Step::Kind::LengthDef;
        s.names = {name};
        s.length = LenExpr::dist(seg.first, seg.second);
        push(std::move(s));
    }

    Selector sel_idx(int i) { return Selector{Selector::Kind::Index, "", "", i}; }
    Selector sel_far(const std::string& p) { return Selector{Selector::Kind::Far, p, "", 0}; }
    Selector sel_none() { return Selector{}; }

    // --- scratch frames --------------------------------------------------------

    std::pair<Rational, Rational> scratch_base() {
        int j = scratch_counter_++;
        Rational x = Rational(-15, 2) + Rational(j) * Rational(17, 9);
        Rational y = Rational(-19, 2) - Rational(j) * Rational(5, 13);
        return {x, y};
    }

    // A fresh free point below the figure area; only its direction from other
    // points matters, never its distance.
    std::string scratch_point() {
        auto [x, y] = scratch_base();
        return emit_initial(fresh(), x, y);
    }

    // A frame of free points one unit apart, hosting intercept and semicircle
    // constructions away from the figure.
    struct Frame {
        std::string origin, xplus, xminus, yplus;
    };

    Frame scratch_frame() {
        auto [x, y] = scratch_base();
        Frame f;
        f.origin = emit_initial(fresh(), x, y);
        f.xplus = emit_initial(fresh(), x + Rational(1), y);
        f.xminus = emit_initial(fresh(), x - Rational(1), y);
        f.yplus = emit_initial(fresh(), x, y + Rational(1));
        return f;
    }

    // --- classical constructions -------------------------------------------------

    bool known_on_line(const std::string& point, const std::string& line) {
        auto def = line_defs_.find(line);
        if (def != line_defs_.end() && (def->second.first == point || def->second.second == point)) return true;
        auto it = on_lines_.find(point);
        return it != on_lines_.end() && it->second.count(line) != 0;
    }

    // Perpendicular to `l` through `x`. When x is known to lie on l, a circle
    // around x cuts l in a chord centered on x whose perpendicular bisector is
    // the wanted line. Otherwise the two-circle reflection of x across l is
    // cheaper.
    std::string perp_through(const std::string& x, const std::string& l, std::string bind = {}) {
        if (known_on_line(x, l)) {
            const auto& def = line_defs_.at(l);
            const std::string& anchor = def.first != x ? def.first : def.second;
            std::string c = emit_circle(x, anchor);
            std::string a = emit_intersect(c, l, sel_idx(0));
            std::string b = emit_intersect(c, l, sel_idx(1));
            std::string ca = emit_circle(a, b);
            std::string cb = emit_circle(b, a);
            std::string m = emit_intersect(ca, cb, sel_idx(0));
            return emit_line(x, m, std::move(bind));
        }
        const auto& def = line_defs_.at(l);
        std::string c1 = emit_circle(def.first, x);
        std::string c2 = emit_circle(def.second, x);
        std::string xr = emit_intersect(c1, c2, sel_far(x));
        return emit_line(x, xr, std::move(bind));
    }

    // Line through `s` parallel to `l` (s off l): perpendicular twice.
    std::string parallel_through(const std::string& s, const std::string& l) {
        std::string q = perp_through(s, l);
        return perp_through(s, q);
    }

    // Midpoint by the classical two-circle bisection. An already-constructed
    // midpoint is rebound under a requested name with a single transfer.
    std::string expand_midpoint(const std::string& p, const std::string& q, std::string bind = {}) {
        auto key = p < q ? Seg{p, q} : Seg{q, p};
        auto it = midpoint_cache_.find(key);
        if (it != midpoint_cache_.end()) {
            if (bind.empty()) return it->second;
            return emit_onray(p, it->second, LenExpr::dist(p, it->second), std::move(bind));
        }
        std::string c1 = emit_circle(p, q);
        std::string c2 = emit_circle(q, p);
        std::string m1 = emit_intersect(c1, c2, sel_idx(0));
        std::string m2 = emit_intersect(c1, c2, sel_idx(1));
        std::string bisector = emit_line(m1, m2);
        std::string base = emit_line(p, q);
        std::string m = emit_intersect(bisector, base, sel_none(), std::move(bind));
        midpoint_cache_.emplace(key, m);
        return m;
    }

    // Reflection of `o` across `r`: the point at 2|or| from o through r.
    std::string reflect_over(const std::string& o, const std::string& r, std::string bind = {}) {
        std::string l = emit_line(o, r);
        std::string c = emit_circle(r, o);
        return emit_intersect(c, l, sel_far(o), std::move(bind));
    }

    // Marks at j * spacing along the ray x -> (first mark) for j = 2..n, given
    // the first mark; returns the n-th. Each step is one compass circle
    // through the mark two back, cut with the carrier line.
    std::string chain_marks(const std::string& x, const std::string& first, const std::string& line,
                            long n, std::string bind = {}) {
        std::string prev2 = x, prev = first;
        for (long j = 2; j <= n; ++j) {
            std::string c = emit_circle(prev, prev2);
            std::string next =
                emit_intersect(c, line, sel_far(prev2), j == n ? std::move(bind) : std::string{});
            prev2 = prev;
            prev = next;
        }
        return prev;
    }

    // The point at (p/q)*|XY| from X along the ray X -> Y (intercept theorem).
    // The auxiliary scale spacing comes from halving the segment, which keeps
    // every drawn length within twice the segment itself.
    std::string scale_on_ray(const std::string& x, const std::string& y, long p, long q,
                             std::string bind = {}) {
        if (q == 1) {
            if (p == 1) {
                return emit_onray(x, y, LenExpr::dist(x, y), std::move(bind));
            }
            std::string l = emit_line(x, y);
            return chain_marks(x, y, l, p, std::move(bind));
        }
        int k = ceil_log2(q);
        bool pow2 = (1L << k) == q;
        std::string sigma_end = y;
        for (int i = 0; i < k; ++i) {
            bool final_mark = pow2 && p == 1 && i == k - 1;
            sigma_end = expand_midpoint(x, sigma_end, final_mark ? std::move(bind) : std::string{});
        }
        if (pow2 && p == 1) return sigma_end; // halvings alone divide a power of two
        std::string d1;
        if (pow2) {
            d1 = sigma_end;
        } else {
            // marks s_1..s_q on an auxiliary ray; the parallel through s_1 to
            // (s_q, Y) meets XY at |XY|/q from X
            std::string dir = scratch_point();
            std::string s1 = emit_onray(x, dir, LenExpr::dist(x, sigma_end));
            std::string aux_ray = emit_line(x, s1);
            std::string sq = chain_marks(x, s1, aux_ray, q);
            std::string cross = emit_line(sq, y);
            std::string par = parallel_through(s1, cross);
            std::string base = emit_line(x, y);
            d1 = emit_intersect(par, base, sel_none(), p == 1 ? std::move(bind) : std::string{});
            if (p == 1) return d1;
        }
        std::string base = emit_line(x, y);
        return chain_marks(x, d1, base, p, std::move(bind));
    }

    // --- length realization ---------------------------------------------------

    LenExprPtr substitute_names(const LenExprPtr& e) {
        switch (e->kind) {
            case LenExpr::Kind::NameRef: {
                auto it = len_defs_.find(e->a);
                if (it == len_defs_.end())
                    throw Error(Error::Kind::UnknownName, "unknown length '" + e->a + "'");
                return it->second;
            }
            case LenExpr::Kind::Sqrt:
                return LenExpr::sqrt_of(substitute_names(e->lhs));
            case LenExpr::Kind::Neg:
                return LenExpr::neg(substitute_names(e->lhs));
            case LenExpr::Kind::Add:
            case LenExpr::Kind::Sub:
            case LenExpr::Kind::Mul:
            case LenExpr::Kind::Div:
                return LenExpr::binary(e->kind, substitute_names(e->lhs), substitute_names(e->rhs));
            default:
                return e;
        }
    }

    Seg unit() {
        if (!in_.has_unit())
            throw Error(Error::Kind::Parse,
                        "program declares no unit segment; lengths with rational factors, products, "
                        "quotients or square roots cannot be laid out");
        return {in_.unit_p, in_.unit_q};
    }

    void check_scale(const Rational& r) {
        if (r.sign() < 0)
            throw Error(Error::Kind::NegativeLength, "negative length expression cannot be constructed");
        if (r.num() > 100000 || r.den() > 100000)
            throw Error(Error::Kind::Parse, "rational scale " + r.to_string() + " is too large to elaborate");
    }

    // Realize (p/q)*|seg| as a segment from seg.first along seg.first -> seg.second.
    Seg realize_scaled(const Seg& seg, const Rational& r) {
        check_scale(r);
        if (r.sign() == 0) return {seg.first, seg.first};
        if (r == Rational(1)) return seg;
        std::string end = scale_on_ray(seg.first, seg.second, r.num().get_si(), r.den().get_si());
        return {seg.first, end};
    }

    // Realize a (positive) length expression as a segment between two bound
    // points, memoized per structural expression.
    Seg realize(const LenExprPtr& expr) {
        std::string key = expr_to_string(expr);
        auto hit = expr_memo_.find(key);
        if (hit != expr_memo_.end()) return hit->second;
        Seg seg = realize_uncached(expr);
        expr_memo_.emplace(std::move(key), seg);
        return seg;
    }

    Seg realize_uncached(const LenExprPtr& expr) {
        switch (expr->kind) {
            case LenExpr::Kind::Dist:
                return {expr->a, expr->b};
            case LenExpr::Kind::NameRef: {
                auto it = len_segments_.find(expr->a);
                if (it == len_segments_.end())
                    throw Error(Error::Kind::UnknownName, "unknown length '" + expr->a + "'");
                return it->second;
            }
            case LenExpr::Kind::RationalLit:
                return realize_scaled(unit(), expr->value);
            case LenExpr::Kind::Neg:
                throw Error(Error::Kind::NegativeLength, "negative length expression cannot be constructed");
            case LenExpr::Kind::Add:
            case LenExpr::Kind::Sub: {
                Seg s1 = realize(expr->lhs);
                Seg s2 = realize(expr->rhs);
                std::string o = scratch_point();
                std::string dir = scratch_point();
                std::string r1 = emit_onray(o, dir, LenExpr::dist(s1.first, s1.second));
                std::string end;
                if (expr->kind == LenExpr::Kind::Add) {
                    std::string rr = reflect_over(o, r1);
                    end = emit_onray(r1, rr, LenExpr::dist(s2.first, s2.second));
                } else {
                    end = emit_onray(r1, o, LenExpr::dist(s2.first, s2.second));
                }
                return {o, end};
            }
            case LenExpr::Kind::Mul:
            case LenExpr::Kind::Div: {
                if (auto sc = as_scale(expr)) {
                    if (!sc->base) return realize_scaled(unit(), sc->factor);
                    return realize_scaled(realize(sc->base), sc->factor);
                }
                Seg s1 = realize(expr->lhs);
                Seg s2 = realize(expr->rhs);
                return intercept_combine(s1, s2, expr->kind == LenExpr::Kind::Mul);
            }
            case LenExpr::Kind::Sqrt:
                return semicircle_root(realize(expr->lhs));
        }
        throw Error(Error::Kind::Defect, "unreachable expression kind");
    }

    // Intercept-theorem product a*b or quotient a/b against the unit, on a
    // fresh two-ray frame.
    Seg intercept_combine(const Seg& sa, const Seg& sb, bool product) {
        Frame f = scratch_frame();
        emit_line(f.origin, f.xplus);
        std::string ry = emit_line(f.origin, f.yplus);
        Seg u = unit();
        std::string a_mark = emit_onray(f.origin, f.yplus, LenExpr::dist(sa.first, sa.second));
        std::string u_mark = emit_onray(f.origin, f.xplus, LenExpr::dist(u.first, u.second));
        std::string b_mark = emit_onray(f.origin, f.xplus, LenExpr::dist(sb.first, sb.second));
        // product:  O U : O B = O A : O C  =>  |OC| = a*b
        // quotient: O B : O U = O A : O C  =>  |OC| = a/b
        std::string from = product ? u_mark : b_mark;
        std::string through = product ? b_mark : u_mark;
        std::string guide = emit_line(from, a_mark);
        std::string par = parallel_through(through, guide);
        std::string c = emit_intersect(par, ry, sel_none());
        return {f.origin, c};
    }

    // Semicircle altitude: lay |s| and the unit on opposite sides of a frame
    // origin, draw the circle on the joint diameter, and erect the
    // perpendicular at the junction; the altitude is sqrt(|s| * 1).
    Seg semicircle_root(const Seg& s) {
        Frame f = scratch_frame();
        Seg u = unit();
        std::string g = emit_onray(f.origin, f.xminus, LenExpr::dist(s.first, s.second));
        std::string h = emit_onray(f.origin, f.xplus, LenExpr::dist(u.first, u.second));
        std::string base = emit_line(g, h);
        on_lines_[f.origin].insert(base); // collinear by frame construction
        std::string mid = expand_midpoint(g, h);
        std::string cd = emit_circle(mid, h);
        std::string perp = perp_through(f.origin, base);
        std::string i = emit_intersect(perp, cd, sel_idx(0));
        return {f.origin, i};
    }

    // --- step expansion -----------------------------------------------------------

    void expand_onray(const Step& s) {
        LenExprPtr expr = substitute_names(s.length);
        if (is_plain_dist(expr)) {
            emit_onray(s.arg1, s.arg2, expr, s.name());
            return;
        }
        if (auto sc = as_scale(expr)) {
            check_scale(sc->factor);
            if (sc->factor.sign() == 0) {
                emit_onray(s.arg1, s.arg2, LenExpr::dist(s.arg1, s.arg1), s.name());
                return;
            }
            Seg base = sc->base ? (is_plain_dist(sc->base) ? Seg{sc->base->a, sc->base->b} : realize(sc->base))
                                : unit();
            // |base| is direction-independent, so either orientation of the
            // requested ray admits in-place scaling.
            bool own_ray = (base.first == s.arg1 && base.second == s.arg2) ||
                           (base.first == s.arg2 && base.second == s.arg1);
            if (own_ray) {
                // the scaled mark already lies on the requested ray
                scale_on_ray(s.arg1, s.arg2, sc->factor.num().get_si(), sc->factor.den().get_si(), s.name());
                return;
            }
            Seg scaled = realize_scaled(base, sc->factor);
            emit_onray(s.arg1, s.arg2, LenExpr::dist(scaled.first, scaled.second), s.name());
            return;
        }
        Seg seg = realize(expr);
        emit_onray(s.arg1, s.arg2, LenExpr::dist(seg.first, seg.second), s.name());
    }

    void expand_step(const Step& s) {
        switch (s.kind) {
            case Step::Kind::InitialPoint:
                emit_initial(s.name(), s.x, s.y);
                break;
            case Step::Kind::DrawLine:
                emit_line(s.arg1, s.arg2, s.name());
                break;
            case Step::Kind::DrawCircle:
                emit_circle(s.arg1, s.arg2, s.name());
                break;
            case Step::Kind::CircleOnDiameter: {
                std::string mid = expand_midpoint(s.arg1, s.arg2);
                emit_circle(mid, s.arg2, s.name());
                break;
            }
            case Step::Kind::Intersect: {
                Step copy = s;
                copy.line = 0;
                push(copy);
                if (line_defs_.count(s.arg1)) on_lines_[s.name()].insert(s.arg1);
                if (line_defs_.count(s.arg2)) on_lines_[s.name()].insert(s.arg2);
                break;
            }
            case Step::Kind::Midpoint:
                expand_midpoint(s.arg1, s.arg2, s.name());
                break;
            case Step::Kind::OnRay:
                expand_onray(s);
                break;
            case Step::Kind::Divide: {
                long n = s.divide_n;
                std::string first = scale_on_ray(s.arg1, s.arg2, 1, n, s.names[0]);
                std::string base = emit_line(s.arg1, s.arg2);
                std::string prev2 = s.arg1, prev = first;
                for (long j = 2; j < n; ++j) {
                    std::string c = emit_circle(prev, prev2);
                    std::string next =
                        emit_intersect(c, base, sel_far(prev2), s.names[static_cast<size_t>(j - 1)]);
                    prev2 = prev;
                    prev = next;
                }
                break;
            }
            case Step::Kind::PerpThrough:
                perp_through(s.arg1, s.arg2, s.name());
                break;
            case Step::Kind::LengthDef: {
                LenExprPtr def = substitute_names(s.length);
                len_defs_[s.name()] = def;
                Seg seg = realize(def);
                len_segments_[s.name()] = seg;
                emit_lendef(s.name(), seg);
                break;
            }
        }
    }

    const Program& in_;
    Program out_;
    int aux_counter_ = 0;
    int scratch_counter_ = 0;
    std::map<Seg, std::string> line_cache_;
    std::map<Seg, std::string> circle_cache_;
    std::map<Seg, std::string> midpoint_cache_;
    std::map<std::string, std::set<std::string>> on_lines_;
    std::map<std::string, Seg> line_defs_;
    std::map<std::string, LenExprPtr> len_defs_;
    std::map<std::string, Seg> len_segments_;
    std::map<std::string, Seg> expr_memo_;
};

} // namespace

Program elaborate(const Program& p) { return Elaborator(p).run(); }

bool step_expands(const Step& s) {
    switch (s.kind) {
        case Step::Kind::CircleOnDiameter:
        case Step::Kind::Midpoint:
        case Step::Kind::Divide:
        case Step::Kind::PerpThrough:
            return true;
        case Step::Kind::OnRay:
        case Step::Kind::LengthDef: {
            const LenExprPtr& e = s.length;
            if (is_plain_dist(e)) return false;
            // a bare 0 or 1 rewrites to a single transfer, everything else is
            // constructed
            if (e->kind == LenExpr::Kind::RationalLit &&
                (e->value.sign() == 0 || e->value == Rational(1)))
                return false;
            return true;
        }
        default:
            return false;
    }
}

bool is_primitive_program(const Program& p) {
    for (const Step& s : p.steps) {
        switch (s.kind) {
            case Step::Kind::InitialPoint:
            case Step::Kind::DrawLine:
            case Step::Kind::DrawCircle:
            case Step::Kind::Intersect:
                break;
            case Step::Kind::OnRay:
            case Step::Kind::LengthDef:
                if (!is_plain_dist(s.length)) return false;
                break;
            default:
                return false;
        }
    }
    return true;
}

} // namespace quadratrix
