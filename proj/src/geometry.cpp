#include "quadratrix/geometry.hpp"

#include "quadratrix/error.hpp"

namespace quadratrix {

namespace {

Constructible cross(const Constructible& ax, const Constructible& ay,
                    const Constructible& bx, const Constructible& by) {
    return ax * by - ay * bx;
}

} // namespace

Line line_through(const Point& p, const Point& q) {
    if (p == q) throw Error(Error::Kind::DegenerateObject, "degenerate line");
    return Line{p, q};
}

Circle circle_center_through(const Point& c, const Point& p) {
    if (c == p) throw Error(Error::Kind::DegenerateObject, "degenerate circle");
    return Circle{c, p};
}

Constructible distance_squared(const Point& p, const Point& q) {
    Constructible dx = q.x - p.x, dy = q.y - p.y;
    return dx * dx + dy * dy;
}

Constructible distance(const Point& p, const Point& q) {
    return sqrt(distance_squared(p, q));
}

Point midpoint(const Point& p, const Point& q) {
    Constructible half = Constructible::from_rational(1, 2);
    return Point{(p.x + q.x) * half, (p.y + q.y) * half};
}

Point point_on_ray(const Point& origin, const Point& toward, const Constructible& length) {
    if (origin == toward) throw Error(Error::Kind::DegenerateObject, "degenerate ray");
    if (length.sign() < 0) throw Error(Error::Kind::NegativeLength, "negative length");
    Constructible d = distance(origin, toward);
    Constructible t = length / d;
    return Point{origin.x + (toward.x - origin.x) * t, origin.y + (toward.y - origin.y) * t};
}

Constructible circle_radius_squared(const Circle& c) {
    return distance_squared(c.center, c.through);
}

Constructible line_side(const Line& l, const Point& p) {
    return cross(l.p1.x - l.p0.x, l.p1.y - l.p0.y, p.x - l.p0.x, p.y - l.p0.y);
}

bool on_line(const Line& l, const Point& p) { return line_side(l, p).is_zero(); }

bool on_circle(const Circle& c, const Point& p) {
    return equals(distance_squared(c.center, p), circle_radius_squared(c));
}

namespace {

std::vector<Point> intersect_line_line(const Line& a, const Line& b) {
    Constructible da_x = a.p1.x - a.p0.x, da_y = a.p1.y - a.p0.y;
    Constructible db_x = b.p1.x - b.p0.x, db_y = b.p1.y - b.p0.y;
    Constructible denom = cross(da_x, da_y, db_x, db_y);
    if (denom.is_zero()) {
        if (on_line(a, b.p0) && on_line(a, b.p1))
            throw Error(Error::Kind::InfiniteIntersection, "infinite intersection");
        return {};
    }
    Constructible t = cross(b.p0.x - a.p0.x, b.p0.y - a.p0.y, db_x, db_y) / denom;
    return {Point{a.p0.x + da_x * t, a.p0.y + da_y * t}};
}

// Ordered by increasing parameter t along the line's direction.
std::vector<Point> intersect_line_circle(const Line& l, const Circle& c) {
    Constructible dx = l.p1.x - l.p0.x, dy = l.p1.y - l.p0.y;
    Constructible fx = l.p0.x - c.center.x, fy = l.p0.y - c.center.y;
    Constructible qa = dx * dx + dy * dy;              // > 0
    Constructible qb = Constructible(2) * (dx * fx + dy * fy);
    Constructible qc = fx * fx + fy * fy - circle_radius_squared(c);
    Constructible disc = qb * qb - Constructible(4) * qa * qc;
    int s = disc.sign();
    if (s < 0) return {};
    auto at = [&](const Constructible& t) {
        return Point{l.p0.x + dx * t, l.p0.y + dy * t};
    };
    Constructible two_a = Constructible(2) * qa;
    if (s == 0) return {at(-qb / two_a)};
    Constructible root = sqrt(disc);
    return {at((-qb - root) / two_a), at((-qb + root) / two_a)};
}

// First point on the left of the oriented axis center1 -> center2.
std::vector<Point> intersect_circle_circle(const Circle& a, const Circle& b) {
    Constructible r2a = circle_radius_squared(a);
    Constructible r2b = circle_radius_squared(b);
    if (a.center == b.center) {
        if (equals(r2a, r2b)) throw Error(Error::Kind::InfiniteIntersection, "infinite intersection");
        return {};
    }
    Constructible dx = b.center.x - a.center.x, dy = b.center.y - a.center.y;
    Constructible d2 = dx * dx + dy * dy; // > 0
    // Radical-axis decomposition: p = c_a + alpha*d + beta*d_perp with
    // d_perp = rot90ccw(d), alpha = (d2 + r2a - r2b) / (2 d2),
    // beta^2 = r2a/d2 - alpha^2.
    Constructible alpha = (d2 + r2a - r2b) / (Constructible(2) * d2);
    Constructible beta2 = r2a / d2 - alpha * alpha;
    int s = beta2.sign();
    if (s < 0) return {};
    Constructible px = a.center.x + alpha * dx, py = a.center.y + alpha * dy;
    if (s == 0) return {Point{px, py}};
    Constructible beta = sqrt(beta2);
    // +beta lies on the left of the axis: cross(d, beta*d_perp) = beta*d2 > 0.
    Point left{px - beta * dy, py + beta * dx};
    Point right{px + beta * dy, py - beta * dx};
    return {left, right};
}

bool same_line(const Line& a, const Line& b) {
    return on_line(a, b.p0) && on_line(a, b.p1);
}

bool same_circle(const Circle& a, const Circle& b) {
    return a.center == b.center && equals(circle_radius_squared(a), circle_radius_squared(b));
}

} // namespace

std::vector<Point> intersect(const GeomObject& a, const GeomObject& b) {
    if (const Line* la = std::get_if<Line>(&a)) {
        if (const Line* lb = std::get_if<Line>(&b)) {
            if (same_line(*la, *lb)) throw Error(Error::Kind::InfiniteIntersection, "infinite intersection");
            return intersect_line_line(*la, *lb);
        }
        return intersect_line_circle(*la, std::get<Circle>(b));
    }
    const Circle& ca = std::get<Circle>(a);
    if (const Line* lb = std::get_if<Line>(&b)) {
        return intersect_line_circle(*lb, ca);
    }
    const Circle& cb = std::get<Circle>(b);
    if (same_circle(ca, cb)) throw Error(Error::Kind::InfiniteIntersection, "infinite intersection");
    return intersect_circle_circle(ca, cb);
}

} // namespace quadratrix
