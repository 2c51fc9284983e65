#include <array>
#include <thread>
#include <vector>

#include "doctest.h"
#include "quadratrix/catalog.hpp"
#include "quadratrix/error.hpp"
#include "quadratrix/parser.hpp"
#include "quadratrix/workspace.hpp"

using namespace quadratrix;

namespace {

Constructible C(long n) { return Constructible(n); }

Error::Kind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return Error::Kind::Defect;
}

} // namespace

TEST_CASE("selector semantics") {
    std::string base =
        "point A = (0,0)\npoint B = (1,0)\npoint U = (0,1)\n"
        "circle u = center A through B\nline ab = through A B\n";

    // near with equidistant candidates is an ambiguity error
    CHECK(kind_of([&] { execute(parse(base + "point X = intersect ab u near A\n")); }) ==
          Error::Kind::AmbiguousSelector);
    // two candidates but no selector
    CHECK(kind_of([&] { execute(parse(base + "point X = intersect ab u\n")); }) ==
          Error::Kind::AmbiguousSelector);
    // far/near pick the right points
    Workspace w1 = execute(parse(base + "point X = intersect ab u far B\n"));
    CHECK(w1.point("X") == Point{C(-1), C(0)});
    Workspace w2 = execute(parse(base + "point X = intersect ab u near B\n"));
    CHECK(w2.point("X") == Point{C(1), C(0)});
    // side selectors against a vertical line need a reference off the line
    std::string vert = base + "line av = through A U\n";
    Workspace w3 = execute(parse(vert + "point X = intersect ab u side B of av\n"));
    CHECK(w3.point("X") == Point{C(1), C(0)});
    Workspace w4 = execute(parse(vert + "point X = intersect ab u opposite B of av\n"));
    CHECK(w4.point("X") == Point{C(-1), C(0)});
    // side selector with the reference on the line is ambiguous
    CHECK(kind_of([&] { execute(parse(vert + "point X = intersect ab u side A of av\n")); }) ==
          Error::Kind::AmbiguousSelector);
    // side selector where both candidates sit on the line finds none
    CHECK(kind_of([&] { execute(parse(vert + "point X = intersect ab u side B of ab\n")); }) ==
          Error::Kind::AmbiguousSelector);
    // idx out of range on a tangent intersection
    std::string tangent = base + "point T = (1,1)\npoint T2 = (1,-1)\nline tl = through T T2\n";
    CHECK(kind_of([&] { execute(parse(tangent + "point X = intersect tl u idx 1\n")); }) ==
          Error::Kind::NoCandidate);
    Workspace w5 = execute(parse(tangent + "point X = intersect tl u idx 0\n"));
    CHECK(w5.point("X") == Point{C(1), C(0)});
    // disjoint objects yield no candidate
    std::string far_circle = base + "point F = (5,0)\npoint F2 = (6,0)\ncircle fc = center F through F2\n";
    CHECK(kind_of([&] { execute(parse(far_circle + "point X = intersect u fc near A\n")); }) ==
          Error::Kind::NoCandidate);
}

TEST_CASE("resolve_selector on explicit candidates") {
    Workspace w = execute(parse("point D = (0,-1)\n"));
    Constructible r5 = sqrt(C(5));
    std::vector<Point> cands = {Point{C(0), (r5 - C(1)) / C(2)}, Point{C(0), -(C(1) + r5) / C(2)}};
    Selector far_d{Selector::Kind::Far, "D", "", 0};
    Point e = resolve_selector(cands, far_d, w);
    CHECK(e == cands[0]);
    Selector near_d{Selector::Kind::Near, "D", "", 0};
    CHECK(resolve_selector(cands, near_d, w) == cands[1]);
    // single candidate satisfies near/far trivially
    std::vector<Point> one = {cands[0]};
    CHECK(resolve_selector(one, far_d, w) == cands[0]);
    CHECK_THROWS_AS(resolve_selector({}, far_d, w), Error);
}

TEST_CASE("length expressions and their errors") {
    std::string base = "point A = (0,0)\npoint B = (3,4)\nlen d = dist(A,B)\n";
    Workspace w = execute(parse(base));
    CHECK(equals(w.length("d"), C(5)));

    Workspace w2 = execute(parse(base + "len e = (d*d+2)/3 - sqrt(d+4)\n"));
    CHECK(equals(w2.length("e"), C(6))); // 27/3 - 3

    CHECK(kind_of([&] { execute(parse(base + "len z = d - d\nlen q = 1/z\n")); }) ==
          Error::Kind::DivisionByZero);
    CHECK(kind_of([&] { execute(parse(base + "len s = sqrt(2-d)\n")); }) ==
          Error::Kind::NegativeRadicand);
    CHECK(kind_of([&] { execute(parse(base + "point X = onray A B dist 2-d\n")); }) ==
          Error::Kind::NegativeLength);
    // zero-length transfer lands on the origin
    Workspace w3 = execute(parse(base + "point X = onray A B dist d-5\n"));
    CHECK(w3.point("X") == w3.point("A"));
}

TEST_CASE("divide binds evenly spaced points") {
    Workspace w = execute(parse("point P = (1,1)\npoint Q = (11,6)\npoints D1 D2 D3 D4 = divide P Q 5\n"));
    for (int k = 1; k <= 4; ++k) {
        Point expect{C(1) + Constructible::from_rational(2 * k, 1),
                     C(1) + Constructible::from_rational(k, 1)};
        CHECK(w.point("D" + std::to_string(k)) == expect);
    }
    CHECK(kind_of([&] { execute(parse("point P = (1,1)\npoint Q = (1,1)\npoints M = divide P Q 2\n")); }) ==
          Error::Kind::DegenerateObject);
}

TEST_CASE("geometric degeneracies name the failing step") {
    try {
        execute(parse("point A = (0,0)\npoint B = (0,0)\nline l = through A B\n"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::DegenerateObject);
        CHECK(std::string(e.message()).find("step 'l'") != std::string::npos);
        CHECK(std::string(e.message()).find("line 3") != std::string::npos);
    }
    CHECK(kind_of([] { execute(parse("point A = (0,0)\npoint B = (1,0)\nline l = through A B\n"
                                     "line m = through B A\npoint X = intersect l m\n")); }) ==
          Error::Kind::InfiniteIntersection);
}

TEST_CASE("trace replay reproduces every binding exactly") {
    for (const std::string& name : catalog_names()) {
        CAPTURE(name);
        Workspace w = execute(builtin(name).program);
        Workspace r = execute(w.trace_program(name + "-replay"));
        REQUIRE(r.order == w.order);
        for (const std::string& n : w.order) {
            const Workspace::Binding& a = w.bindings.at(n);
            const Workspace::Binding& b = r.bindings.at(n);
            if (const Point* p = std::get_if<Point>(&a)) {
                CHECK(*p == std::get<Point>(b));
            } else if (const Constructible* c = std::get_if<Constructible>(&a)) {
                CHECK(equals(*c, std::get<Constructible>(b)));
            }
        }
        // replayed traces carry only resolved index selectors
        for (const Step& s : w.trace) {
            if (s.kind == Step::Kind::Intersect) CHECK(s.selector.kind == Selector::Kind::Index);
        }
    }
}

TEST_CASE("trace replay covers every macro step kind") {
    Program p = parse(
        "unit A B\npoint A = (0,0)\npoint B = (1,0)\npoint C = (2,3)\n"
        "line ab = through A B\n"
        "line pc = perp C to ab\n"
        "point M = midpoint A C\n"
        "circle cd = diameter A C\n"
        "points D1 D2 = divide A C 3\n"
        "len w = sqrt(dist(A,C))\n"
        "point R = onray A B dist w\n"
        "point X = intersect pc cd near C\n",
        "allkinds");
    Workspace w = execute(p);
    Workspace r = execute(w.trace_program("allkinds-replay"));
    REQUIRE(r.order == w.order);
    for (const std::string& n : w.order) {
        const Workspace::Binding& a = w.bindings.at(n);
        if (const Point* pt = std::get_if<Point>(&a)) {
            CHECK(*pt == std::get<Point>(r.bindings.at(n)));
        } else if (const Constructible* c = std::get_if<Constructible>(&a)) {
            CHECK(equals(*c, std::get<Constructible>(r.bindings.at(n))));
        }
    }
}

TEST_CASE("distinct programs execute concurrently") {
    Program a = builtin("chu-phi").program;
    Program b = builtin("dixon-phi").program;
    Workspace serial_a = execute(a);
    Workspace serial_b = execute(b);
    std::vector<std::thread> threads;
    std::array<Constructible, 4> results;
    for (int i = 0; i < 4; ++i) {
        threads.emplace_back([&, i] {
            const Program& p = i % 2 ? b : a;
            Workspace w = execute(p);
            results[static_cast<size_t>(i)] =
                i % 2 ? distance(w.point("F"), w.point("K")) : distance(w.point("M"), w.point("H"));
        });
    }
    for (auto& t : threads) t.join();
    Constructible mh = distance(serial_a.point("M"), serial_a.point("H"));
    Constructible fk = distance(serial_b.point("F"), serial_b.point("K"));
    for (int i = 0; i < 4; ++i) {
        CHECK(equals(results[static_cast<size_t>(i)], i % 2 ? fk : mh));
    }
}

TEST_CASE("execution is deterministic") {
    Program p = builtin("chu9-left").program;
    Workspace a = execute(p);
    Workspace b = execute(p);
    REQUIRE(a.order == b.order);
    for (const std::string& n : a.order) {
        if (const Point* pa = std::get_if<Point>(&a.bindings.at(n))) {
            CHECK(*pa == std::get<Point>(b.bindings.at(n)));
        }
    }
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) CHECK(step_equal(a.trace[i], b.trace[i]));
}
