#include "quadratrix/catalog.hpp"

#include <map>

#include "quadratrix/error.hpp"
#include "quadratrix/parser.hpp"

namespace quadratrix {

namespace {

const char* kDixonPhi = R"(# Dixon's seven-step squaring of the unit circle: FK^2 = 6/5*(1+phi).
unit A B
point A = (0, 0)
point B = (1, 0)
line ab = through A B
circle u = center A through B
line ad = perp A to ab
point D = intersect ad u idx 0
point C = midpoint A D
circle c1 = center C through B
point E = intersect ad c1 far D
circle c2 = center D through E
point F = intersect ad c2 far E
circle cf = center F through E
point Er = intersect ad cf far E
point H = onray F Er dist 1
point G = onray F E dist 3/10*dist(A,F)
circle c3 = diameter H G
line fi = perp F to ad
point I = intersect fi c3 side B of ad
point K = onray F I dist 2*dist(F,I)
)";

const char* kChuPhi = R"(# Six-step squaring of the unit circle: MH^2 = 6/5*(1+phi).
unit A B
point A = (0, 0)
point B = (1, 0)
line ab = through A B
circle u = center B through A
line bc = perp B to ab
point Cu = intersect bc u idx 1
point C = onray B Cu dist 2
circle cac = center A through C
point D = intersect ab cac far B
point M = onray D A dist 2/5*dist(A,D)
circle cm = center D through M
point Mr = intersect ab cm far M
point N = onray D Mr dist dist(D,M)/2
circle cnb = diameter N B
line mh = perp M to ab
point H = intersect mh cnb idx 0
)";

const char* kChu9Left = R"(# Left half of the nine-place construction: EF = sqrt(63)/5 and
# NO = sqrt(15*sqrt(5)-7)/5.
unit A B
point A = (0, 0)
point B = (1, 0)
point C = (-1, 0)
line ab = through A B
point D = onray A B dist 1/5
circle cdb = center D through B
point E = intersect ab cdb far B
point bf = onray B A dist dist(A,D)
circle cbf = center B through bf
point F = intersect cdb cbf idx 0
circle cdiam = diameter D B
point bg = onray B A dist dist(E,A)
circle cbg = center B through bg
point G = intersect cdiam cbg idx 1
line hb = perp B to ab
circle cba = center B through A
point H = intersect hb cba idx 1
line ch = through C H
point I = onray C H dist 3/5*dist(C,H)
point K = onray I H dist 1
circle cck = diameter C K
line il = perp I to ch
point L = intersect il cck opposite A of ch
point M = onray L I dist 2*dist(L,I)
len dg = dist(D,G)
point N = onray I L dist dg
circle clm = diameter L M
line no = perp N to il
point O = intersect no clm side H of il
)";

const char* kChu9Right = R"(# Right half of the nine-place construction: PU = sqrt(269)/8.
unit R Q
point P = (0, 0)
point R = (1/4, 0)
point Q = (5/4, 0)
line pq = through P Q
line sq = perp Q to pq
circle cqr = center Q through R
point Qu = intersect sq cqr idx 1
point S = onray Q Qu dist 3/2
line ps = through P S
point T = midpoint S P
line tu = perp T to ps
point tsr = onray T P dist dist(S,R)
circle ctu = center T through tsr
point U = intersect tu ctu side R of ps
line pu = through P U
)";

const char* kChu9Full = R"(# Full nine-place squaring of the unit circle. The two halves sit in
# disjoint frames; their output lengths combine into the side W0--Z with
# W0Z^2 = 63/25 * (1 + 5/2 * (15*sqrt(5)-7)/269).
unit A B
point A = (0, 0)
point B = (1, 0)
point C = (-1, 0)
line ab = through A B
circle ucirc = center A through B
point D = onray A B dist 1/5
circle cdb = center D through B
point E = intersect ab cdb far B
point bf = onray B A dist dist(A,D)
circle cbf = center B through bf
point F = intersect cdb cbf idx 0
circle cdiam = diameter D B
point bg = onray B A dist dist(E,A)
circle cbg = center B through bg
point G = intersect cdiam cbg idx 1
line hb = perp B to ab
circle cba = center B through A
point H = intersect hb cba idx 1
line ch = through C H
point I = onray C H dist 3/5*dist(C,H)
point K = onray I H dist 1
circle cck = diameter C K
line il = perp I to ch
point L = intersect il cck opposite A of ch
point M = onray L I dist 2*dist(L,I)
len dg = dist(D,G)
point N = onray I L dist dg
circle clm = diameter L M
line no = perp N to il
point O = intersect no clm side H of il
point P = (4, 0)
point R = (17/4, 0)
point Q = (21/4, 0)
line pq = through P Q
line sq = perp Q to pq
circle cqr = center Q through R
point Qu = intersect sq cqr idx 1
point S = onray Q Qu dist 3/2
line ps = through P S
point T = midpoint S P
line tu = perp T to ps
point tsr = onray T P dist dist(S,R)
circle ctu = center T through tsr
point U = intersect tu ctu side R of ps
line pu = through P U
len lno = dist(N,O)
len lpu = dist(P,U)
len w1 = 5/8*(lno/lpu)
len w2 = 5/2*(w1*w1)+1
len w3 = sqrt(w2)
len lef = dist(E,F)
len total = lef*w3
point W0 = (0, -3)
point W1 = (1, -3)
point Z = onray W0 W1 dist total
)";

Constructible golden_ratio() {
    return (Constructible(1) + sqrt(Constructible(5))) / Constructible(2);
}

// 6/5 * (1 + phi)
Constructible dixon_value() {
    return Constructible::from_rational(6, 5) * (Constructible(1) + golden_ratio());
}

// (15*sqrt(5) - 7) / 269
Constructible nine_place_kernel() {
    return (Constructible(15) * sqrt(Constructible(5)) - Constructible(7)) / Constructible(269);
}

// 63/25 * (1 + 5/2 * (15*sqrt(5)-7)/269)
Constructible nine_place_value() {
    return Constructible::from_rational(63, 25) *
           (Constructible(1) + Constructible::from_rational(5, 2) * nine_place_kernel());
}

CatalogEntry make_entry(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    if (name == "dixon-phi") {
        e.description = "Dixon's seven-step construction of sqrt(6/5*(1+phi))";
        e.source_text = kDixonPhi;
        e.result_points = {"F", "K"};
        e.target = sqrt(dixon_value());
        e.highlight_circle = "u";
        e.highlight_square = {"F", "K"};
    } else if (name == "chu-phi") {
        e.description = "six-step construction of sqrt(6/5*(1+phi))";
        e.source_text = kChuPhi;
        e.result_points = {"M", "H"};
        e.target = sqrt(dixon_value());
        e.highlight_circle = "u";
        e.highlight_square = {"M", "H"};
    } else if (name == "chu9-left") {
        e.description = "left half of the nine-place construction (EF and NO)";
        e.source_text = kChu9Left;
        e.result_points = {"E", "F"};
        e.target = sqrt(Constructible(63)) / Constructible(5);
        e.extra_results.push_back(
            {{"N", "O"}, sqrt(Constructible(15) * sqrt(Constructible(5)) - Constructible(7)) / Constructible(5)});
    } else if (name == "chu9-right") {
        e.description = "right half of the nine-place construction (PU)";
        e.source_text = kChu9Right;
        e.result_points = {"P", "U"};
        e.target = sqrt(Constructible(269)) / Constructible(8);
    } else if (name == "chu9-full") {
        e.description = "nine-place squaring of the unit circle";
        e.source_text = kChu9Full;
        e.result_points = {"W0", "Z"};
        e.target = sqrt(nine_place_value());
        e.highlight_circle = "ucirc";
        e.highlight_square = {"W0", "Z"};
    } else {
        throw Error(Error::Kind::UnknownName, "unknown catalog entry '" + name + "'");
    }
    e.program = parse(e.source_text, name);
    return e;
}

} // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"dixon-phi", "chu-phi", "chu9-left", "chu9-right", "chu9-full"};
    return names;
}

CatalogEntry builtin(const std::string& name) { return make_entry(name); }

const std::vector<std::string>& approximant_names() {
    static const std::vector<std::string> names = {"zu-355-113", "ramanujan-quartic", "dixon-phi-value",
                                                   "chu9-value"};
    return names;
}

Approximant approximant(const std::string& name) {
    if (name == "zu-355-113") {
        return Approximant{name, Constructible::from_rational(355, 113), 6,
                           "Zu Chongzhi's ratio 355/113; ruler-and-compass construction by Ramanujan (1913)"};
    }
    if (name == "ramanujan-quartic") {
        // (9^2 + 19^2/22)^(1/4)
        Constructible radicand = Constructible(81) + Constructible::from_rational(361, 22);
        return Approximant{name, sqrt(sqrt(radicand)), 8, "Ramanujan (1914)"};
    }
    if (name == "dixon-phi-value") {
        return Approximant{name, dixon_value(), 3, "Dixon, Mathographics (1991)"};
    }
    if (name == "chu9-value") {
        return Approximant{name, nine_place_value(), 9,
                           "composite nine-place golden-ratio construction (catalog entry chu9-full)"};
    }
    throw Error(Error::Kind::UnknownName, "unknown approximant '" + name + "'");
}

bool verify(const Program& p, const std::pair<std::string, std::string>& endpoints,
            const Constructible& target) {
    Workspace w = execute(p);
    Constructible d = distance(w.point(endpoints.first), w.point(endpoints.second));
    return equals(d, target);
}

} // namespace quadratrix
