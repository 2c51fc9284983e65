#pragma once
#include <variant>
#include <vector>

#include "quadratrix/constructible.hpp"

namespace quadratrix {

struct Point {
    Constructible x;
    Constructible y;

    bool operator==(const Point& o) const { return equals(x, o.x) && equals(y, o.y); }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

// Unbounded line through the ordered defining pair; direction is p0 -> p1.
struct Line {
    Point p0;
    Point p1;
};

// Compass circle: stored as center plus a point it passes through, so every
// circle is determined by already-constructed points. The radius is derived.
struct Circle {
    Point center;
    Point through;
};

using GeomObject = std::variant<Line, Circle>;

Line line_through(const Point& p, const Point& q);
Circle circle_center_through(const Point& c, const Point& p);

Constructible distance(const Point& p, const Point& q);
Constructible distance_squared(const Point& p, const Point& q);
Point midpoint(const Point& p, const Point& q);

// The point at `length` from origin along the ray origin -> toward.
Point point_on_ray(const Point& origin, const Point& toward, const Constructible& length);

Constructible circle_radius_squared(const Circle& c);

// Signed area of the triangle (p0, p1, p); zero iff p lies on the line.
Constructible line_side(const Line& l, const Point& p);

bool on_line(const Line& l, const Point& p);
bool on_circle(const Circle& c, const Point& p);

// All real intersection points, exactly, in a deterministic order:
//  - line/line: the single proper intersection point;
//  - line/circle: ordered by increasing parameter along the line's direction
//    (argument order is normalized so the line provides the parameter);
//  - circle/circle: the point to the left of the oriented axis
//    center1 -> center2 first.
// Tangency yields one point; disjoint objects yield an empty list; identical
// objects are an error.
std::vector<Point> intersect(const GeomObject& a, const GeomObject& b);

} // namespace quadratrix
