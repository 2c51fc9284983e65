// Acceptance suite: runs every top-level claim end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <mpfr.h>

#include "quadratrix/analysis.hpp"
#include "quadratrix/catalog.hpp"
#include "quadratrix/elaborate.hpp"
#include "quadratrix/error.hpp"
#include "quadratrix/parser.hpp"
#include "quadratrix/svg_render.hpp"

using namespace quadratrix;

namespace {

bool g_all_ok = true;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) g_all_ok = false;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(QUADRATRIX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

Constructible C(long n) { return Constructible(n); }
Constructible Q(long p, long q) { return Constructible::from_rational(p, q); }

// ---------------------------------------------------------------------------
// criterion 1: exact verification of every published length, through the CLI
// ---------------------------------------------------------------------------

void criterion_1() {
    struct Claim {
        const char* args;
    };
    const Claim claims[] = {
        {"verify builtin:dixon-phi --endpoints F K --target \"sqrt(6/5*(1+(1+sqrt(5))/2))\""},
        {"verify builtin:chu-phi --endpoints M H --target \"sqrt(6/5*(1+(1+sqrt(5))/2))\""},
        {"verify builtin:chu9-left --endpoints E F --target \"sqrt(63)/5\""},
        {"verify builtin:chu9-left --endpoints N O --target \"sqrt(15*sqrt(5)-7)/5\""},
        {"verify builtin:chu9-right --endpoints P U --target \"sqrt(269)/8\""},
        {"verify builtin:chu9-full --endpoints W0 Z --target \"sqrt(63/25*(1+5/2*(15*sqrt(5)-7)/269))\""},
    };
    bool ok = true;
    std::string detail;
    for (const Claim& c : claims) {
        int code = run_cli(c.args);
        if (code != 0) {
            ok = false;
            detail = std::string("exit ") + std::to_string(code) + " from: " + c.args;
            break;
        }
    }
    report(1, "exact verification of all catalog constructions (zero tolerance)", ok, detail);
}

// ---------------------------------------------------------------------------
// criterion 2: the printed digits
// ---------------------------------------------------------------------------

void criterion_2() {
    bool ok = true;
    std::ostringstream why;
    auto expect = [&](const std::string& got, const std::string& want, const char* what) {
        if (got != want) {
            ok = false;
            why << what << ": got " << got << ", want " << want << "; ";
        }
    };
    expect(approximant("chu9-value").value.to_decimal(10), "3.1415926538", "chu9-value at 10 digits");
    expect(pi_decimal_truncated(10), "3.1415926535", "pi oracle at 10 digits");
    expect(pi_error(approximant("dixon-phi-value").value, 6).ratio_to_pi, "1.000015", "ratio at 6 digits");
    expect(pi_error(approximant("chu9-value").value, 12).ratio_to_pi, "1.000000000068", "ratio at 12 digits");
    auto places = [&](const char* name, int want) {
        int got = pi_error(approximant(name).value, 6).places_correct;
        if (got != want) {
            ok = false;
            why << name << " places: got " << got << ", want " << want << "; ";
        }
    };
    places("dixon-phi-value", 3);
    places("zu-355-113", 6);
    places("ramanujan-quartic", 8);
    places("chu9-value", 9);
    report(2, "printed-digit reproduction (values, ratios, decimal places)", ok, why.str());
}

// ---------------------------------------------------------------------------
// criterion 3: step counts, against the golden record
// ---------------------------------------------------------------------------

void criterion_3() {
    bool ok = true;
    std::ostringstream why;
    std::map<std::string, int> counts;
    for (const std::string& name : catalog_names()) {
        counts[name] = metrics(builtin(name).program).primitive_steps;
    }
    if (!(counts["chu-phi"] < counts["dixon-phi"])) {
        ok = false;
        why << "chu-phi (" << counts["chu-phi"] << ") not below dixon-phi (" << counts["dixon-phi"] << "); ";
    }
    std::ifstream golden(QUADRATRIX_GOLDEN_STEPS);
    if (!golden.good()) {
        ok = false;
        why << "missing golden file; ";
    } else {
        std::string name;
        int steps;
        std::map<std::string, int> recorded;
        while (golden >> name >> steps) recorded[name] = steps;
        for (const auto& [n, c] : counts) {
            auto it = recorded.find(n);
            if (it == recorded.end() || it->second != c) {
                ok = false;
                why << n << ": got " << c << ", golden "
                    << (it == recorded.end() ? std::string("absent") : std::to_string(it->second)) << "; ";
            }
        }
    }
    report(3, "primitive step counts: six-step < seven-step, and all match the golden record", ok, why.str());
}

// ---------------------------------------------------------------------------
// criterion 4: property suites
// ---------------------------------------------------------------------------

// Elements of a shared random tower of nested quadratic extensions, the way
// construction workspaces actually use them. Depth up to 4, coefficients
// within +-100.
struct TowerSampler {
    explicit TowerSampler(std::mt19937& rng) {
        std::uniform_int_distribution<int> num(1, 100);
        std::uniform_int_distribution<int> small(1, 12);
        Constructible prev(0);
        for (int level = 0; level < 4; ++level) {
            // radicand over the previous levels, kept positive
            Constructible radicand =
                Q(num(rng), small(rng)) + (level > 0 ? Q(small(rng), small(rng)) * prev : C(0));
            prev = sqrt(radicand);
            gens.push_back(prev);
        }
    }

    Constructible sample(std::mt19937& rng, int depth) const {
        std::uniform_int_distribution<int> num(-100, 100);
        std::uniform_int_distribution<int> den(1, 10);
        Constructible e = Q(num(rng), den(rng));
        for (int level = 0; level < depth; ++level) {
            e = e + Q(num(rng), den(rng)) * gens[static_cast<size_t>(level)];
        }
        return e;
    }

    std::vector<Constructible> gens;
};

bool field_axioms() {
    std::mt19937 rng(1415926535);
    std::uniform_int_distribution<int> depth(0, 4);
    int sampled = 0;
    while (sampled < 1000) {
        TowerSampler tower(rng);
        for (int batch = 0; batch < 4; ++batch) {
            Constructible x = tower.sample(rng, depth(rng));
            Constructible y = tower.sample(rng, depth(rng));
            Constructible z = tower.sample(rng, depth(rng));
            sampled += 3;
            if (!equals((x + y) + z, x + (y + z))) return false;
            if (!equals(x + y, y + x)) return false;
            if (!equals(x * y, y * x)) return false;
            if (!equals(x * (y + z), x * y + x * z)) return false;
            if (!(x + (-x)).is_zero()) return false;
            if (!x.is_zero() && !equals(x * (C(1) / x), C(1))) return false;
            Constructible ax = abs(x);
            if (!equals(sqrt(ax) * sqrt(ax), ax)) return false;
        }
        // cross-tower mixing at moderate depth keeps the join path honest
        TowerSampler other(rng);
        Constructible x = tower.sample(rng, 2);
        Constructible y = other.sample(rng, 2);
        Constructible z = tower.sample(rng, 1);
        sampled += 3;
        if (!equals((x + y) + z, x + (y + z))) return false;
        if (!equals(x * y, y * x)) return false;
        if (!equals(x * (y + z), x * y + x * z)) return false;
        if (!y.is_zero() && !equals(y * (C(1) / y), C(1))) return false;
        Constructible ay = abs(y);
        if (!equals(sqrt(ay) * sqrt(ay), ay)) return false;
    }
    return true;
}

bool intersection_exactness() {
    std::mt19937 rng(271828182);
    std::uniform_int_distribution<int> coord(-8, 8);
    std::uniform_int_distribution<int> den(1, 4);
    auto rand_point = [&] {
        return Point{Q(coord(rng), den(rng)), Q(coord(rng), den(rng))};
    };
    auto satisfied = [](const GeomObject& o, const Point& p) {
        if (const Line* l = std::get_if<Line>(&o)) return on_line(*l, p);
        return on_circle(std::get<Circle>(o), p);
    };
    int done = 0;
    while (done < 1000) {
        Point p1 = rand_point(), p2 = rand_point(), p3 = rand_point(), p4 = rand_point();
        try {
            GeomObject a, b;
            switch (done % 3) {
                case 0:
                    a = line_through(p1, p2);
                    b = circle_center_through(p3, p4);
                    break;
                case 1:
                    a = circle_center_through(p1, p2);
                    b = circle_center_through(p3, p4);
                    break;
                default:
                    a = line_through(p1, p2);
                    b = line_through(p3, p4);
                    break;
            }
            auto pts = intersect(a, b);
            for (const Point& q : pts) {
                if (!satisfied(a, q) || !satisfied(b, q)) return false;
            }
            ++done;
        } catch (const Error&) {
            // degenerate draw; try again
        }
    }
    return true;
}

bool elaborate_agreement() {
    for (const std::string& name : catalog_names()) {
        Program p = builtin(name).program;
        Program prim = elaborate(p);
        if (!is_primitive_program(prim)) return false;
        Workspace semantic = execute(p);
        Workspace primitive = execute(prim);
        for (const std::string& n : semantic.order) {
            const Workspace::Binding& b = semantic.bindings.at(n);
            if (const Point* pt = std::get_if<Point>(&b)) {
                if (!primitive.has_point(n) || !(*pt == primitive.point(n))) return false;
            } else if (const Constructible* len = std::get_if<Constructible>(&b)) {
                if (!primitive.has(n) || !equals(*len, primitive.length(n))) return false;
            }
        }
    }
    return true;
}

// --- independent 200-bit floating replay -----------------------------------

// Minimal straight-line numeric interpreter over mpfr at 200 bits, sharing no
// code with the exact kernel.
class Num {
public:
    Num() { mpfr_init2(v_, 200); mpfr_set_zero(v_, 1); }
    explicit Num(const Rational& q) {
        mpfr_init2(v_, 200);
        mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
    }
    Num(const Num& o) {
        mpfr_init2(v_, 200);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Num& operator=(const Num& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Num() { mpfr_clear(v_); }

    static Num bin(const Num& a, const Num& b, int op) {
        Num r;
        switch (op) {
            case 0: mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); break;
            case 1: mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); break;
            case 2: mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); break;
            default: mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); break;
        }
        return r;
    }
    friend Num operator+(const Num& a, const Num& b) { return bin(a, b, 0); }
    friend Num operator-(const Num& a, const Num& b) { return bin(a, b, 1); }
    friend Num operator*(const Num& a, const Num& b) { return bin(a, b, 2); }
    friend Num operator/(const Num& a, const Num& b) { return bin(a, b, 3); }
    Num operator-() const {
        Num r;
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    static Num root(const Num& a) {
        Num r;
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    int cmp(const Num& o) const { return mpfr_cmp(v_, o.v_); }
    int sign() const { return mpfr_sgn(v_); }
    mpq_class to_q() const {
        if (mpfr_zero_p(v_)) return mpq_class(0);
        mpz_class m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        mpq_class q(m);
        if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
        else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
        return q;
    }

private:
    mpfr_t v_;
};

struct NPoint {
    Num x, y;
};
struct NLine {
    NPoint p0, p1;
};
struct NCircle {
    NPoint c, t;
};
struct NObj {
    bool is_line;
    NLine l;
    NCircle c;
};

struct NumericReplay {
    std::map<std::string, NPoint> points;
    std::map<std::string, NObj> objects;
    std::map<std::string, Num> lengths;

    Num dist(const NPoint& a, const NPoint& b) {
        Num dx = b.x - a.x, dy = b.y - a.y;
        return Num::root(dx * dx + dy * dy);
    }

    Num eval(const LenExprPtr& e) {
        switch (e->kind) {
            case LenExpr::Kind::RationalLit: return Num(e->value);
            case LenExpr::Kind::Dist: return dist(points.at(e->a), points.at(e->b));
            case LenExpr::Kind::NameRef: return lengths.at(e->a);
            case LenExpr::Kind::Add: return eval(e->lhs) + eval(e->rhs);
            case LenExpr::Kind::Sub: return eval(e->lhs) - eval(e->rhs);
            case LenExpr::Kind::Mul: return eval(e->lhs) * eval(e->rhs);
            case LenExpr::Kind::Div: return eval(e->lhs) / eval(e->rhs);
            case LenExpr::Kind::Sqrt: return Num::root(eval(e->lhs));
            case LenExpr::Kind::Neg: return -eval(e->lhs);
        }
        throw std::runtime_error("bad expr");
    }

    std::vector<NPoint> cut(const NObj& a, const NObj& b) {
        if (a.is_line && b.is_line) {
            Num dax = a.l.p1.x - a.l.p0.x, day = a.l.p1.y - a.l.p0.y;
            Num dbx = b.l.p1.x - b.l.p0.x, dby = b.l.p1.y - b.l.p0.y;
            Num denom = dax * dby - day * dbx;
            Num t = ((b.l.p0.x - a.l.p0.x) * dby - (b.l.p0.y - a.l.p0.y) * dbx) / denom;
            return {NPoint{a.l.p0.x + dax * t, a.l.p0.y + day * t}};
        }
        if (a.is_line || b.is_line) {
            const NLine& l = a.is_line ? a.l : b.l;
            const NCircle& c = a.is_line ? b.c : a.c;
            Num dx = l.p1.x - l.p0.x, dy = l.p1.y - l.p0.y;
            Num fx = l.p0.x - c.c.x, fy = l.p0.y - c.c.y;
            Num qa = dx * dx + dy * dy;
            Num qb = Num(Rational(2)) * (dx * fx + dy * fy);
            Num rx = c.t.x - c.c.x, ry = c.t.y - c.c.y;
            Num qc = fx * fx + fy * fy - (rx * rx + ry * ry);
            Num disc = qb * qb - Num(Rational(4)) * qa * qc;
            Num s = Num::root(disc);
            Num two_a = Num(Rational(2)) * qa;
            Num t1 = (-qb - s) / two_a, t2 = (-qb + s) / two_a;
            return {NPoint{l.p0.x + dx * t1, l.p0.y + dy * t1}, NPoint{l.p0.x + dx * t2, l.p0.y + dy * t2}};
        }
        Num dx = b.c.c.x - a.c.c.x, dy = b.c.c.y - a.c.c.y;
        Num d2 = dx * dx + dy * dy;
        auto r2 = [&](const NCircle& c) {
            Num rx = c.t.x - c.c.x, ry = c.t.y - c.c.y;
            return rx * rx + ry * ry;
        };
        Num r2a = r2(a.c), r2b = r2(b.c);
        Num alpha = (d2 + r2a - r2b) / (Num(Rational(2)) * d2);
        Num beta = Num::root(r2a / d2 - alpha * alpha);
        Num px = a.c.c.x + alpha * dx, py = a.c.c.y + alpha * dy;
        return {NPoint{px - beta * dy, py + beta * dx}, NPoint{px + beta * dy, py - beta * dx}};
    }

    NPoint select(const std::vector<NPoint>& cands, const Selector& s) {
        if (cands.size() == 1) return cands[0];
        switch (s.kind) {
            case Selector::Kind::Index: return cands[static_cast<size_t>(s.index)];
            case Selector::Kind::Near:
            case Selector::Kind::Far: {
                const NPoint& ref = points.at(s.point);
                Num d0 = dist(cands[0], ref), d1 = dist(cands[1], ref);
                bool first_nearer = d0.cmp(d1) < 0;
                return (first_nearer == (s.kind == Selector::Kind::Near)) ? cands[0] : cands[1];
            }
            case Selector::Kind::SameSide:
            case Selector::Kind::OppositeSide: {
                const NObj& l = objects.at(s.line);
                auto side = [&](const NPoint& p) {
                    return ((l.l.p1.x - l.l.p0.x) * (p.y - l.l.p0.y) -
                            (l.l.p1.y - l.l.p0.y) * (p.x - l.l.p0.x))
                        .sign();
                };
                int want = side(points.at(s.point));
                if (s.kind == Selector::Kind::OppositeSide) want = -want;
                return side(cands[0]) == want ? cands[0] : cands[1];
            }
            default: throw std::runtime_error("unresolvable selector");
        }
    }

    void run(const Program& p) {
        for (const Step& s : p.steps) {
            switch (s.kind) {
                case Step::Kind::InitialPoint:
                    points[s.name()] = NPoint{Num(s.x), Num(s.y)};
                    break;
                case Step::Kind::DrawLine:
                    objects[s.name()] = NObj{true, NLine{points.at(s.arg1), points.at(s.arg2)}, {}};
                    break;
                case Step::Kind::DrawCircle:
                    objects[s.name()] = NObj{false, {}, NCircle{points.at(s.arg1), points.at(s.arg2)}};
                    break;
                case Step::Kind::CircleOnDiameter: {
                    NPoint a = points.at(s.arg1), b = points.at(s.arg2);
                    Num half(Rational(1, 2));
                    NPoint mid{(a.x + b.x) * half, (a.y + b.y) * half};
                    objects[s.name()] = NObj{false, {}, NCircle{mid, b}};
                    break;
                }
                case Step::Kind::Intersect:
                    points[s.name()] = select(cut(objects.at(s.arg1), objects.at(s.arg2)), s.selector);
                    break;
                case Step::Kind::Midpoint: {
                    NPoint a = points.at(s.arg1), b = points.at(s.arg2);
                    Num half(Rational(1, 2));
                    points[s.name()] = NPoint{(a.x + b.x) * half, (a.y + b.y) * half};
                    break;
                }
                case Step::Kind::OnRay: {
                    NPoint o = points.at(s.arg1), t = points.at(s.arg2);
                    Num len = eval(s.length);
                    Num d = dist(o, t);
                    Num f = len / d;
                    points[s.name()] = NPoint{o.x + (t.x - o.x) * f, o.y + (t.y - o.y) * f};
                    break;
                }
                case Step::Kind::Divide: {
                    NPoint a = points.at(s.arg1), b = points.at(s.arg2);
                    for (int k = 1; k < s.divide_n; ++k) {
                        Num f(Rational(k, s.divide_n));
                        points[s.names[static_cast<size_t>(k - 1)]] =
                            NPoint{a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
                    }
                    break;
                }
                case Step::Kind::PerpThrough: {
                    NPoint x = points.at(s.arg1);
                    const NObj& l = objects.at(s.arg2);
                    Num dx = l.l.p1.x - l.l.p0.x, dy = l.l.p1.y - l.l.p0.y;
                    objects[s.name()] = NObj{true, NLine{x, NPoint{x.x - dy, x.y + dx}}, {}};
                    break;
                }
                case Step::Kind::LengthDef:
                    lengths[s.name()] = eval(s.length);
                    break;
            }
        }
    }
};

bool float_replay() {
    // |exact - float| < 2^-150 for every named point coordinate
    mpq_class eps(1);
    mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 150);
    for (const std::string& name : catalog_names()) {
        Program p = builtin(name).program;
        NumericReplay replay;
        replay.run(p);
        Workspace w = execute(p);
        for (const std::string& n : w.order) {
            const Point* pt = std::get_if<Point>(&w.bindings.at(n));
            if (!pt) continue;
            const NPoint& f = replay.points.at(n);
            for (int axis = 0; axis < 2; ++axis) {
                const Constructible& exact = axis == 0 ? pt->x : pt->y;
                mpq_class fq = (axis == 0 ? f.x : f.y).to_q();
                Interval iv = exact.approx_interval(200);
                if (fq < iv.lo.raw() - eps || fq > iv.hi.raw() + eps) return false;
            }
        }
    }
    return true;
}

void criterion_4() {
    bool ax = field_axioms();
    bool ix = intersection_exactness();
    bool el = elaborate_agreement();
    bool fr = float_replay();
    std::ostringstream why;
    if (!ax) why << "field axioms failed; ";
    if (!ix) why << "intersection exactness failed; ";
    if (!el) why << "elaborate/execute agreement failed; ";
    if (!fr) why << "200-bit replay out of tolerance; ";
    report(4, "property suites (field axioms, intersection exactness, elaboration, 200-bit replay)",
           ax && ix && el && fr, why.str());
}

// ---------------------------------------------------------------------------
// criterion 5: byte determinism of renders and reports
// ---------------------------------------------------------------------------

void criterion_5() {
    bool ok = true;
    std::string detail;
    for (const std::string& name : catalog_names()) {
        CatalogEntry e = builtin(name);
        Highlight h{e.highlight_circle, e.highlight_square};
        RenderStyle style;
        std::string svg1 = render_svg(execute(e.program), h, style);
        std::string svg2 = render_svg(execute(e.program), h, style);
        std::string m1 = metrics_to_text(metrics(e.program));
        std::string m2 = metrics_to_text(metrics(e.program));
        if (svg1 != svg2 || m1 != m2) {
            ok = false;
            detail = name;
            break;
        }
    }
    std::string r1 = error_report_to_text(pi_error(approximant("chu9-value").value, 12));
    std::string r2 = error_report_to_text(pi_error(approximant("chu9-value").value, 12));
    if (r1 != r2) ok = false;
    report(5, "byte-identical SVG and reports across repeated runs", ok, detail);
}

} // namespace

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
    } catch (const std::exception& e) {
        std::cout << "FAIL: unexpected exception: " << e.what() << "\n";
        return 1;
    }
    std::cout << (g_all_ok ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return g_all_ok ? 0 : 1;
}
