#include "quadratrix/svg_render.hpp"

#include <sstream>
#include <vector>

#include "quadratrix/error.hpp"

namespace quadratrix {

namespace {

struct NamedPoint {
    std::string name;
    Point p;
};

} // namespace

std::string render_svg(const Workspace& w, const Highlight& highlight, const RenderStyle& style) {
    if (w.order.empty()) throw Error(Error::Kind::Usage, "cannot render an empty workspace");
    if (style.canvas <= 0 || style.margin < 0 || style.precision < 6)
        throw Error(Error::Kind::Usage, "invalid render style");

    std::vector<NamedPoint> points;
    std::vector<std::pair<std::string, Line>> lines;
    std::vector<std::pair<std::string, Circle>> circles;
    for (const std::string& name : w.order) {
        const Workspace::Binding& b = w.bindings.at(name);
        if (const Point* p = std::get_if<Point>(&b)) {
            points.push_back({name, *p});
        } else if (const GeomObject* o = std::get_if<GeomObject>(&b)) {
            if (const Line* l = std::get_if<Line>(o)) lines.push_back({name, *l});
            else circles.push_back({name, std::get<Circle>(*o)});
        }
    }
    if (points.empty() && lines.empty() && circles.empty())
        throw Error(Error::Kind::Usage, "workspace has nothing to draw");

    const bool has_circle_highlight = !highlight.circle.empty();
    const bool has_square_highlight = !highlight.square.first.empty();
    Circle hl_circle{Point{Constructible(0), Constructible(0)}, Point{Constructible(1), Constructible(0)}};
    if (has_circle_highlight) {
        const GeomObject& o = w.object(highlight.circle);
        const Circle* c = std::get_if<Circle>(&o);
        if (!c) throw Error(Error::Kind::UnknownName, "'" + highlight.circle + "' is not a circle");
        hl_circle = *c;
    }
    Point sq_p{Constructible(0), Constructible(0)}, sq_q = sq_p;
    if (has_square_highlight) {
        sq_p = w.point(highlight.square.first);
        sq_q = w.point(highlight.square.second);
        if (sq_p == sq_q) throw Error(Error::Kind::DegenerateObject, "degenerate highlight square");
    }

    // Exact bounding box over everything drawn, squares included.
    bool have_box = false;
    Constructible minx, maxx, miny, maxy;
    auto take = [&](const Constructible& x, const Constructible& y) {
        if (!have_box) {
            minx = maxx = x;
            miny = maxy = y;
            have_box = true;
            return;
        }
        if (x < minx) minx = x;
        if (x > maxx) maxx = x;
        if (y < miny) miny = y;
        if (y > maxy) maxy = y;
    };
    for (const auto& np : points) take(np.p.x, np.p.y);
    for (const auto& [name, l] : lines) {
        take(l.p0.x, l.p0.y);
        take(l.p1.x, l.p1.y);
    }
    auto take_circle = [&](const Circle& c) {
        Constructible r = distance(c.center, c.through);
        take(c.center.x - r, c.center.y - r);
        take(c.center.x + r, c.center.y + r);
    };
    for (const auto& [name, c] : circles) take_circle(c);

    std::vector<Point> square_corners;
    if (has_square_highlight) {
        Constructible dx = sq_q.x - sq_p.x, dy = sq_q.y - sq_p.y;
        // square erected on the left of p -> q
        square_corners = {sq_p, sq_q, Point{sq_q.x - dy, sq_q.y + dx}, Point{sq_p.x - dy, sq_p.y + dx}};
        for (const Point& c : square_corners) take(c.x, c.y);
    }

    Constructible user_w = maxx - minx;
    Constructible user_h = maxy - miny;
    Constructible extent = user_w;
    if (user_h > extent) extent = user_h;
    if (extent.is_zero()) extent = Constructible(1); // single point
    if (user_w.is_zero()) user_w = extent;

    Constructible inner(style.canvas - 2 * style.margin);
    if (inner.sign() <= 0) throw Error(Error::Kind::Usage, "margin leaves no drawing area");
    Constructible scale = inner / user_w;
    Constructible margin(style.margin);
    Constructible height_px = margin * Constructible(2) + user_h * scale;

    const int prec = style.precision;
    auto px = [&](const Constructible& x) { return (margin + (x - minx) * scale).to_decimal(prec); };
    auto py = [&](const Constructible& y) { return (margin + (maxy - y) * scale).to_decimal(prec); };
    auto fmt = [&](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.canvas
        << "\" height=\"" << height_px.to_decimal(prec) << "\">\n";

    if (has_square_highlight) {
        svg << "<polygon fill=\"" << style.highlight_fill << "\" stroke=\"none\" points=\"";
        for (size_t i = 0; i < square_corners.size(); ++i) {
            if (i) svg << " ";
            svg << px(square_corners[i].x) << "," << py(square_corners[i].y);
        }
        svg << "\"/>\n";
    }
    if (has_circle_highlight) {
        Constructible r = distance(hl_circle.center, hl_circle.through);
        svg << "<circle fill=\"" << style.highlight_fill << "\" stroke=\"" << style.accent_stroke
            << "\" stroke-width=\"" << fmt(style.stroke) << "\" cx=\"" << px(hl_circle.center.x)
            << "\" cy=\"" << py(hl_circle.center.y) << "\" r=\"" << (r * scale).to_decimal(prec)
            << "\"/>\n";
    }

    for (const auto& [name, c] : circles) {
        if (has_circle_highlight && name == highlight.circle) continue;
        Constructible r = distance(c.center, c.through);
        svg << "<circle fill=\"none\" stroke=\"#444444\" stroke-width=\"" << fmt(style.stroke)
            << "\" cx=\"" << px(c.center.x) << "\" cy=\"" << py(c.center.y) << "\" r=\""
            << (r * scale).to_decimal(prec) << "\"/>\n";
    }
    for (const auto& [name, l] : lines) {
        svg << "<line stroke=\"#111111\" stroke-width=\"" << fmt(style.stroke) << "\" x1=\""
            << px(l.p0.x) << "\" y1=\"" << py(l.p0.y) << "\" x2=\"" << px(l.p1.x) << "\" y2=\""
            << py(l.p1.y) << "\"/>\n";
    }

    // centroid of the labeled points steers label offsets outward
    Constructible cx(0), cy(0);
    int labeled = 0;
    for (const auto& np : points) {
        if (np.name.rfind("__aux", 0) == 0) continue;
        cx += np.p.x;
        cy += np.p.y;
        ++labeled;
    }
    if (labeled > 0) {
        cx /= Constructible(labeled);
        cy /= Constructible(labeled);
    }

    for (const auto& np : points) {
        svg << "<circle fill=\"#000000\" stroke=\"none\" cx=\"" << px(np.p.x) << "\" cy=\""
            << py(np.p.y) << "\" r=\"" << fmt(style.point_radius) << "\"/>\n";
    }
    for (const auto& np : points) {
        if (np.name.rfind("__aux", 0) == 0) continue;
        Constructible dx = np.p.x - cx;
        Constructible dy = np.p.y - cy;
        Constructible n2 = dx * dx + dy * dy;
        Constructible ox, oy;
        if (n2.is_zero()) {
            ox = Constructible(1);
            oy = Constructible(1);
        } else {
            Constructible n = sqrt(n2);
            ox = dx / n;
            oy = -(dy / n); // screen y grows downward
        }
        Constructible off(style.label_font);
        Constructible lx = (margin + (np.p.x - minx) * scale) + ox * off;
        Constructible ly = (margin + (maxy - np.p.y) * scale) + oy * off;
        svg << "<text font-family=\"sans-serif\" font-size=\"" << style.label_font << "\" fill=\"#000000\" x=\""
            << lx.to_decimal(prec) << "\" y=\"" << ly.to_decimal(prec) << "\">" << np.name << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace quadratrix
