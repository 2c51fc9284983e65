#pragma once
#include <memory>
#include <string>
#include <vector>

#include "quadratrix/rational.hpp"

namespace quadratrix {

struct LenExpr;
using LenExprPtr = std::shared_ptr<const LenExpr>;

// Length expression: rationals, dist(P,Q), previously defined length names,
// +, -, *, /, sqrt and unary minus.
struct LenExpr {
    enum class Kind { RationalLit, Dist, NameRef, Add, Sub, Mul, Div, Sqrt, Neg };
    Kind kind;
    Rational value;                 // RationalLit
    std::string a, b;               // Dist endpoints; NameRef uses a
    LenExprPtr lhs, rhs;            // binaries; Sqrt/Neg use lhs

    static LenExprPtr rational(Rational v);
    static LenExprPtr dist(std::string p, std::string q);
    static LenExprPtr name(std::string n);
    static LenExprPtr binary(Kind k, LenExprPtr l, LenExprPtr r);
    static LenExprPtr sqrt_of(LenExprPtr e);
    static LenExprPtr neg(LenExprPtr e);
};

bool expr_equal(const LenExprPtr& a, const LenExprPtr& b);
std::string expr_to_string(const LenExprPtr& e);

// Machine-checkable disambiguation of a two-point intersection.
struct Selector {
    enum class Kind { None, Near, Far, SameSide, OppositeSide, Index };
    Kind kind = Kind::None;
    std::string point; // Near/Far target; side-selector reference point
    std::string line;  // side-selector line
    int index = 0;

    bool operator==(const Selector& o) const {
        return kind == o.kind && point == o.point && line == o.line && index == o.index;
    }
};

struct Step {
    enum class Kind {
        InitialPoint,     // point N = (x, y)
        DrawLine,         // line N = through P Q
        DrawCircle,       // circle N = center C through P
        CircleOnDiameter, // circle N = diameter P Q            [macro]
        Intersect,        // point N = intersect A B [sel]
        Midpoint,         // point N = midpoint P Q             [macro]
        OnRay,            // point N = onray O T dist <lenexpr>
        Divide,           // points N1 .. N(k) = divide P Q n   [macro]
        PerpThrough,      // line N = perp P to L               [macro]
        LengthDef,        // len N = <lenexpr>
    };

    Kind kind;
    std::vector<std::string> names; // bound names (n-1 of them for Divide)
    std::string arg1, arg2, arg3;
    Rational x, y;                  // InitialPoint coordinates
    int divide_n = 0;
    LenExprPtr length;              // OnRay, LengthDef
    Selector selector;              // Intersect
    int line = 0;                   // source line, 0 when synthesized

    const std::string& name() const { return names.front(); }
};

bool step_equal(const Step& a, const Step& b);

struct Program {
    std::string name;
    std::vector<Step> steps;
    // Declared unit segment point names; empty when the program declares none.
    std::string unit_p, unit_q;

    bool has_unit() const { return !unit_p.empty(); }
};

bool program_equal(const Program& a, const Program& b);

// Steps that elaborate rewrites into compass/ruler primitives.
bool is_macro_step(const Step& s);

// Canonical DSL text; parse(pretty_print(p)) is structurally identical to p.
std::string pretty_print(const Program& p);

} // namespace quadratrix
