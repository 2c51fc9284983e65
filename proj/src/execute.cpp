#include "quadratrix/workspace.hpp"

#include "quadratrix/error.hpp"

namespace quadratrix {

namespace {

[[noreturn]] void step_fail(const Step& s, Error::Kind kind, const std::string& msg) {
    std::string where = "step '" + s.name() + "'";
    if (s.line > 0) where += " (line " + std::to_string(s.line) + ")";
    throw Error(kind, where + ": " + msg);
}

const Workspace::Binding& lookup(const Workspace& w, const std::string& name) {
    auto it = w.bindings.find(name);
    if (it == w.bindings.end()) throw Error(Error::Kind::UnknownName, "unknown name '" + name + "'");
    return it->second;
}

} // namespace

bool Workspace::has_point(const std::string& name) const {
    auto it = bindings.find(name);
    return it != bindings.end() && std::holds_alternative<Point>(it->second);
}

const Point& Workspace::point(const std::string& name) const {
    const Binding& b = lookup(*this, name);
    if (const Point* p = std::get_if<Point>(&b)) return *p;
    throw Error(Error::Kind::UnknownName, "'" + name + "' is not a point");
}

const GeomObject& Workspace::object(const std::string& name) const {
    const Binding& b = lookup(*this, name);
    if (const GeomObject* o = std::get_if<GeomObject>(&b)) return *o;
    throw Error(Error::Kind::UnknownName, "'" + name + "' is not a line or circle");
}

const Line& Workspace::line(const std::string& name) const {
    const GeomObject& o = object(name);
    if (const Line* l = std::get_if<Line>(&o)) return *l;
    throw Error(Error::Kind::UnknownName, "'" + name + "' is not a line");
}

const Constructible& Workspace::length(const std::string& name) const {
    const Binding& b = lookup(*this, name);
    if (const Constructible* c = std::get_if<Constructible>(&b)) return *c;
    throw Error(Error::Kind::UnknownName, "'" + name + "' is not a length");
}

Program Workspace::trace_program(const std::string& name) const {
    Program p;
    p.name = name;
    p.steps = trace;
    p.unit_p = unit_p;
    p.unit_q = unit_q;
    return p;
}

Constructible eval_len(const LenExprPtr& e, const Workspace& w) {
    switch (e->kind) {
        case LenExpr::Kind::RationalLit: return Constructible(e->value);
        case LenExpr::Kind::Dist: return distance(w.point(e->a), w.point(e->b));
        case LenExpr::Kind::NameRef: return w.length(e->a);
        case LenExpr::Kind::Add: return eval_len(e->lhs, w) + eval_len(e->rhs, w);
        case LenExpr::Kind::Sub: return eval_len(e->lhs, w) - eval_len(e->rhs, w);
        case LenExpr::Kind::Mul: return eval_len(e->lhs, w) * eval_len(e->rhs, w);
        case LenExpr::Kind::Div: return eval_len(e->lhs, w) / eval_len(e->rhs, w);
        case LenExpr::Kind::Sqrt: return sqrt(eval_len(e->lhs, w));
        case LenExpr::Kind::Neg: return -eval_len(e->lhs, w);
    }
    throw Error(Error::Kind::Defect, "unreachable expression kind");
}

namespace {

// Near/Far compare the candidates against each other (vacuous for a single
// candidate); side selectors are absolute predicates a lone candidate can
// still fail.
Point select(const std::vector<Point>& cands, const Selector& s, const Workspace& w, size_t* chosen) {
    if (cands.empty()) throw Error(Error::Kind::NoCandidate, "no intersection point");
    auto pick = [&](size_t i) {
        if (chosen) *chosen = i;
        return cands[i];
    };
    switch (s.kind) {
        case Selector::Kind::None:
            if (cands.size() > 1)
                throw Error(Error::Kind::AmbiguousSelector, "two intersection points but no selector");
            return pick(0);
        case Selector::Kind::Index: {
            size_t idx = static_cast<size_t>(s.index);
            if (idx >= cands.size())
                throw Error(Error::Kind::NoCandidate,
                            "selector idx " + std::to_string(s.index) + " but only " +
                                std::to_string(cands.size()) + " intersection point(s)");
            return pick(idx);
        }
        case Selector::Kind::Near:
        case Selector::Kind::Far: {
            if (cands.size() == 1) return pick(0);
            const Point& ref = w.point(s.point);
            int c = distance_squared(cands[0], ref).compare(distance_squared(cands[1], ref));
            if (c == 0)
                throw Error(Error::Kind::AmbiguousSelector,
                            "selector tie: both candidates are equidistant from '" + s.point + "'");
            bool first_nearer = c < 0;
            bool want_near = s.kind == Selector::Kind::Near;
            return pick(first_nearer == want_near ? 0 : 1);
        }
        case Selector::Kind::SameSide:
        case Selector::Kind::OppositeSide: {
            const Line& l = w.line(s.line);
            int ref_sign = line_side(l, w.point(s.point)).sign();
            if (ref_sign == 0)
                throw Error(Error::Kind::AmbiguousSelector,
                            "side selector reference point '" + s.point + "' lies on line '" + s.line + "'");
            if (s.kind == Selector::Kind::OppositeSide) ref_sign = -ref_sign;
            std::vector<size_t> hits;
            for (size_t i = 0; i < cands.size(); ++i) {
                if (line_side(l, cands[i]).sign() == ref_sign) hits.push_back(i);
            }
            if (hits.empty()) throw Error(Error::Kind::NoCandidate, "no candidate on the requested side");
            if (hits.size() > 1)
                throw Error(Error::Kind::AmbiguousSelector, "both candidates lie on the requested side");
            return pick(hits[0]);
        }
    }
    throw Error(Error::Kind::Defect, "unreachable selector kind");
}

} // namespace

Point resolve_selector(const std::vector<Point>& candidates, const Selector& s, const Workspace& w) {
    return select(candidates, s, w, nullptr);
}

namespace {

void bind_value(Workspace& w, const Step& s, const std::string& name, Workspace::Binding value) {
    if (w.bindings.count(name)) step_fail(s, Error::Kind::DuplicateName, "duplicate name '" + name + "'");
    w.bindings.emplace(name, std::move(value));
    w.order.push_back(name);
}

void run_step(const Step& s, Workspace& w) {
    Step traced = s;
    switch (s.kind) {
        case Step::Kind::InitialPoint:
            bind_value(w, s, s.name(), Point{Constructible(s.x), Constructible(s.y)});
            break;
        case Step::Kind::DrawLine:
            bind_value(w, s, s.name(), GeomObject(line_through(w.point(s.arg1), w.point(s.arg2))));
            break;
        case Step::Kind::DrawCircle:
            bind_value(w, s, s.name(), GeomObject(circle_center_through(w.point(s.arg1), w.point(s.arg2))));
            break;
        case Step::Kind::CircleOnDiameter: {
            const Point& p = w.point(s.arg1);
            const Point& q = w.point(s.arg2);
            bind_value(w, s, s.name(), GeomObject(circle_center_through(midpoint(p, q), q)));
            break;
        }
        case Step::Kind::Intersect: {
            auto points = intersect(w.object(s.arg1), w.object(s.arg2));
            size_t chosen = 0;
            Point chosen_pt = select(points, s.selector, w, &chosen);
            bind_value(w, s, s.name(), chosen_pt);
            traced.selector = Selector{Selector::Kind::Index, "", "", static_cast<int>(chosen)};
            break;
        }
        case Step::Kind::Midpoint:
            bind_value(w, s, s.name(), midpoint(w.point(s.arg1), w.point(s.arg2)));
            break;
        case Step::Kind::OnRay: {
            Constructible len = eval_len(s.length, w);
            bind_value(w, s, s.name(), point_on_ray(w.point(s.arg1), w.point(s.arg2), len));
            break;
        }
        case Step::Kind::Divide: {
            const Point& p = w.point(s.arg1);
            const Point& q = w.point(s.arg2);
            if (p == q) throw Error(Error::Kind::DegenerateObject, "cannot divide a degenerate segment");
            for (int k = 1; k < s.divide_n; ++k) {
                Constructible t = Constructible::from_rational(k, s.divide_n);
                bind_value(w, s, s.names[static_cast<size_t>(k - 1)],
                     Point{p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t});
            }
            break;
        }
        case Step::Kind::PerpThrough: {
            const Point& x = w.point(s.arg1);
            const Line& l = w.line(s.arg2);
            Constructible dx = l.p1.x - l.p0.x, dy = l.p1.y - l.p0.y;
            bind_value(w, s, s.name(), GeomObject(Line{x, Point{x.x - dy, x.y + dx}}));
            break;
        }
        case Step::Kind::LengthDef:
            bind_value(w, s, s.name(), eval_len(s.length, w));
            break;
    }
    w.trace.push_back(std::move(traced));
}

} // namespace

Workspace execute(const Program& p) {
    Workspace w;
    w.unit_p = p.unit_p;
    w.unit_q = p.unit_q;
    for (const Step& s : p.steps) {
        try {
            run_step(s, w);
        } catch (const Error& e) {
            if (e.message().rfind("step '", 0) == 0) throw;
            step_fail(s, e.kind(), e.message());
        }
    }
    return w;
}

} // namespace quadratrix
