#include "quadratrix/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "quadratrix/error.hpp"

namespace quadratrix {

// --- LenExpr helpers ---------------------------------------------------------

LenExprPtr LenExpr::rational(Rational v) {
    auto e = std::make_shared<LenExpr>();
    e->kind = Kind::RationalLit;
    e->value = std::move(v);
    return e;
}

LenExprPtr LenExpr::dist(std::string p, std::string q) {
    auto e = std::make_shared<LenExpr>();
    e->kind = Kind::Dist;
    e->a = std::move(p);
    e->b = std::move(q);
    return e;
}

LenExprPtr LenExpr::name(std::string n) {
    auto e = std::make_shared<LenExpr>();
    e->kind = Kind::NameRef;
    e->a = std::move(n);
    return e;
}

// Rational-only subtrees fold to literals, so "2/5" means the rational 2/5
// regardless of whether it is read as a literal or as a quotient.
LenExprPtr LenExpr::binary(Kind k, LenExprPtr l, LenExprPtr r) {
    if (l->kind == Kind::RationalLit && r->kind == Kind::RationalLit) {
        switch (k) {
            case Kind::Add: return rational(l->value + r->value);
            case Kind::Sub: return rational(l->value - r->value);
            case Kind::Mul: return rational(l->value * r->value);
            case Kind::Div: return rational(l->value / r->value);
            default: break;
        }
    }
    auto e = std::make_shared<LenExpr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

LenExprPtr LenExpr::sqrt_of(LenExprPtr x) {
    auto e = std::make_shared<LenExpr>();
    e->kind = Kind::Sqrt;
    e->lhs = std::move(x);
    return e;
}

LenExprPtr LenExpr::neg(LenExprPtr x) {
    if (x->kind == Kind::RationalLit) return rational(-x->value);
    auto e = std::make_shared<LenExpr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(x);
    return e;
}

bool expr_equal(const LenExprPtr& a, const LenExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case LenExpr::Kind::RationalLit: return a->value == b->value;
        case LenExpr::Kind::Dist: return a->a == b->a && a->b == b->b;
        case LenExpr::Kind::NameRef: return a->a == b->a;
        case LenExpr::Kind::Sqrt:
        case LenExpr::Kind::Neg: return expr_equal(a->lhs, b->lhs);
        default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

std::string expr_to_string(const LenExprPtr& e) {
    switch (e->kind) {
        case LenExpr::Kind::RationalLit: return e->value.to_string();
        case LenExpr::Kind::Dist: return "dist(" + e->a + "," + e->b + ")";
        case LenExpr::Kind::NameRef: return e->a;
        case LenExpr::Kind::Sqrt: return "sqrt(" + expr_to_string(e->lhs) + ")";
        case LenExpr::Kind::Neg: return "(-" + expr_to_string(e->lhs) + ")";
        case LenExpr::Kind::Add: return "(" + expr_to_string(e->lhs) + "+" + expr_to_string(e->rhs) + ")";
        case LenExpr::Kind::Sub: return "(" + expr_to_string(e->lhs) + "-" + expr_to_string(e->rhs) + ")";
        case LenExpr::Kind::Mul: return "(" + expr_to_string(e->lhs) + "*" + expr_to_string(e->rhs) + ")";
        case LenExpr::Kind::Div: return "(" + expr_to_string(e->lhs) + "/" + expr_to_string(e->rhs) + ")";
    }
    throw Error(Error::Kind::Defect, "unreachable expression kind");
}

bool step_equal(const Step& a, const Step& b) {
    return a.kind == b.kind && a.names == b.names && a.arg1 == b.arg1 && a.arg2 == b.arg2 &&
           a.arg3 == b.arg3 && a.x == b.x && a.y == b.y && a.divide_n == b.divide_n &&
           a.selector == b.selector && expr_equal(a.length, b.length);
}

bool program_equal(const Program& a, const Program& b) {
    if (a.unit_p != b.unit_p || a.unit_q != b.unit_q) return false;
    if (a.steps.size() != b.steps.size()) return false;
    for (size_t i = 0; i < a.steps.size(); ++i)
        if (!step_equal(a.steps[i], b.steps[i])) return false;
    return true;
}

bool is_macro_step(const Step& s) {
    switch (s.kind) {
        case Step::Kind::CircleOnDiameter:
        case Step::Kind::Midpoint:
        case Step::Kind::Divide:
        case Step::Kind::PerpThrough:
            return true;
        default:
            return false;
    }
}

std::string pretty_print(const Program& p) {
    std::ostringstream out;
    if (p.has_unit()) out << "unit " << p.unit_p << " " << p.unit_q << "\n";
    for (const Step& s : p.steps) {
        switch (s.kind) {
            case Step::Kind::InitialPoint:
                out << "point " << s.name() << " = (" << s.x.to_string() << ", " << s.y.to_string() << ")";
                break;
            case Step::Kind::DrawLine:
                out << "line " << s.name() << " = through " << s.arg1 << " " << s.arg2;
                break;
            case Step::Kind::PerpThrough:
                out << "line " << s.name() << " = perp " << s.arg1 << " to " << s.arg2;
                break;
            case Step::Kind::DrawCircle:
                out << "circle " << s.name() << " = center " << s.arg1 << " through " << s.arg2;
                break;
            case Step::Kind::CircleOnDiameter:
                out << "circle " << s.name() << " = diameter " << s.arg1 << " " << s.arg2;
                break;
            case Step::Kind::Intersect: {
                out << "point " << s.name() << " = intersect " << s.arg1 << " " << s.arg2;
                const Selector& sel = s.selector;
                switch (sel.kind) {
                    case Selector::Kind::None: break;
                    case Selector::Kind::Near: out << " near " << sel.point; break;
                    case Selector::Kind::Far: out << " far " << sel.point; break;
                    case Selector::Kind::SameSide: out << " side " << sel.point << " of " << sel.line; break;
                    case Selector::Kind::OppositeSide: out << " opposite " << sel.point << " of " << sel.line; break;
                    case Selector::Kind::Index: out << " idx " << sel.index; break;
                }
                break;
            }
            case Step::Kind::Midpoint:
                out << "point " << s.name() << " = midpoint " << s.arg1 << " " << s.arg2;
                break;
            case Step::Kind::OnRay:
                out << "point " << s.name() << " = onray " << s.arg1 << " " << s.arg2 << " dist "
                    << expr_to_string(s.length);
                break;
            case Step::Kind::Divide: {
                out << "points";
                for (const auto& n : s.names) out << " " << n;
                out << " = divide " << s.arg1 << " " << s.arg2 << " " << s.divide_n;
                break;
            }
            case Step::Kind::LengthDef:
                out << "len " << s.name() << " = " << expr_to_string(s.length);
                break;
        }
        out << "\n";
    }
    return out.str();
}

// --- tokenizer ---------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Name, Int, Punct, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw Error(Error::Kind::Parse, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words = {
        "unit", "point", "points", "line", "circle", "len", "through", "perp", "to",
        "center", "diameter", "intersect", "midpoint", "onray", "dist", "divide",
        "near", "far", "side", "opposite", "of", "idx", "sqrt",
    };
    return words;
}

std::vector<std::vector<Token>> tokenize(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks;
        size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (c == '#') break;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            int col = static_cast<int>(i) + 1;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = i;
                while (j < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[j])) || raw[j] == '_')) ++j;
                toks.push_back({Token::Kind::Name, raw.substr(i, j - i), lineno, col});
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
                toks.push_back({Token::Kind::Int, raw.substr(i, j - i), lineno, col});
                i = j;
            } else if (std::string("()=,+-*/").find(c) != std::string::npos) {
                toks.push_back({Token::Kind::Punct, std::string(1, c), lineno, col});
                ++i;
            } else {
                fail_at(lineno, col, std::string("unexpected character '") + c + "'");
            }
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

enum class SymKind { PointSym, LineSym, CircleSym, LenSym };

const char* sym_kind_name(SymKind k) {
    switch (k) {
        case SymKind::PointSym: return "point";
        case SymKind::LineSym: return "line";
        case SymKind::CircleSym: return "circle";
        case SymKind::LenSym: return "length";
    }
    return "?";
}

class StatementParser {
public:
    StatementParser(const std::vector<Token>& toks, std::map<std::string, SymKind>& symbols)
        : toks_(toks), symbols_(symbols) {}

    const Token& peek() const {
        static const Token end{Token::Kind::End, "", 0, 0};
        return pos_ < toks_.size() ? toks_[pos_] : end;
    }

    Token next() {
        if (pos_ >= toks_.size()) {
            const Token& last = toks_.back();
            fail_at(last.line, last.col + static_cast<int>(last.text.size()), "unexpected end of statement");
        }
        return toks_[pos_++];
    }

    bool at_end() const { return pos_ >= toks_.size(); }

    void expect_punct(const std::string& p) {
        Token t = next();
        if (t.kind != Token::Kind::Punct || t.text != p)
            fail_at(t.line, t.col, "expected '" + p + "', found '" + t.text + "'");
    }

    void expect_keyword(const std::string& w) {
        Token t = next();
        if (t.kind != Token::Kind::Name || t.text != w)
            fail_at(t.line, t.col, "expected '" + w + "', found '" + t.text + "'");
    }

    bool peek_keyword(const std::string& w) const {
        return peek().kind == Token::Kind::Name && peek().text == w;
    }

    bool peek_punct(const std::string& p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }

    // A fresh identifier being declared.
    std::string declare(SymKind kind) {
        Token t = next();
        if (t.kind != Token::Kind::Name) fail_at(t.line, t.col, "expected a name, found '" + t.text + "'");
        if (reserved_words().count(t.text)) fail_at(t.line, t.col, "'" + t.text + "' is a reserved word");
        if (symbols_.count(t.text))
            throw Error(Error::Kind::DuplicateName,
                        std::to_string(t.line) + ":" + std::to_string(t.col) + ": duplicate name '" + t.text + "'");
        symbols_.emplace(t.text, kind);
        return t.text;
    }

    // A reference to an existing symbol of the given kind.
    std::string reference(SymKind kind) {
        Token t = next();
        if (t.kind != Token::Kind::Name) fail_at(t.line, t.col, "expected a name, found '" + t.text + "'");
        auto it = symbols_.find(t.text);
        if (it == symbols_.end())
            throw Error(Error::Kind::UnknownName,
                        std::to_string(t.line) + ":" + std::to_string(t.col) + ": unknown name '" + t.text + "'");
        if (it->second != kind)
            fail_at(t.line, t.col, "'" + t.text + "' is a " + sym_kind_name(it->second) + ", expected a " +
                                       sym_kind_name(kind));
        return t.text;
    }

    std::string reference_object() {
        Token t = next();
        if (t.kind != Token::Kind::Name) fail_at(t.line, t.col, "expected a name, found '" + t.text + "'");
        auto it = symbols_.find(t.text);
        if (it == symbols_.end())
            throw Error(Error::Kind::UnknownName,
                        std::to_string(t.line) + ":" + std::to_string(t.col) + ": unknown name '" + t.text + "'");
        if (it->second != SymKind::LineSym && it->second != SymKind::CircleSym)
            fail_at(t.line, t.col, "'" + t.text + "' is a " + sym_kind_name(it->second) + ", expected a line or circle");
        return t.text;
    }

    mpz_class integer() {
        Token t = next();
        bool negative = false;
        if (t.kind == Token::Kind::Punct && t.text == "-") {
            negative = true;
            t = next();
        }
        if (t.kind != Token::Kind::Int) fail_at(t.line, t.col, "expected an integer, found '" + t.text + "'");
        mpz_class v(t.text);
        return negative ? mpz_class(-v) : v;
    }

    Rational rational_literal() {
        mpz_class num = integer();
        if (peek_punct("/")) {
            next();
            Token d = peek();
            mpz_class den = integer();
            if (sgn(den) == 0) fail_at(d.line, d.col, "zero denominator in rational literal");
            return Rational(num, den);
        }
        return Rational(num, mpz_class(1));
    }

    // lenexpr := term {(+|-) term}; term := factor {(*|/) factor};
    // factor := [-] primary; primary := INT | dist(P,Q) | sqrt(expr) | NAME | (expr)
    LenExprPtr parse_expr(bool allow_refs) {
        LenExprPtr e = parse_term(allow_refs);
        while (peek_punct("+") || peek_punct("-")) {
            bool plus = peek_punct("+");
            next();
            e = LenExpr::binary(plus ? LenExpr::Kind::Add : LenExpr::Kind::Sub, e, parse_term(allow_refs));
        }
        return e;
    }

private:
    LenExprPtr parse_term(bool allow_refs) {
        LenExprPtr e = parse_factor(allow_refs);
        while (peek_punct("*") || peek_punct("/")) {
            bool mul = peek_punct("*");
            Token op = next();
            LenExprPtr rhs = parse_factor(allow_refs);
            if (!mul && rhs->kind == LenExpr::Kind::RationalLit && rhs->value.sign() == 0)
                fail_at(op.line, op.col, "division by zero");
            e = LenExpr::binary(mul ? LenExpr::Kind::Mul : LenExpr::Kind::Div, e, rhs);
        }
        return e;
    }

    LenExprPtr parse_factor(bool allow_refs) {
        if (peek_punct("-")) {
            next();
            return LenExpr::neg(parse_factor(allow_refs));
        }
        return parse_primary(allow_refs);
    }

    LenExprPtr parse_primary(bool allow_refs) {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            next();
            return LenExpr::rational(Rational(mpz_class(t.text), mpz_class(1)));
        }
        if (t.kind == Token::Kind::Punct && t.text == "(") {
            next();
            LenExprPtr e = parse_expr(allow_refs);
            expect_punct(")");
            return e;
        }
        if (t.kind == Token::Kind::Name) {
            if (t.text == "sqrt") {
                next();
                expect_punct("(");
                LenExprPtr e = parse_expr(allow_refs);
                expect_punct(")");
                return LenExpr::sqrt_of(e);
            }
            if (t.text == "dist") {
                if (!allow_refs) fail_at(t.line, t.col, "dist() is not allowed in this expression");
                next();
                expect_punct("(");
                std::string p = reference(SymKind::PointSym);
                expect_punct(",");
                std::string q = reference(SymKind::PointSym);
                expect_punct(")");
                return LenExpr::dist(p, q);
            }
            if (!allow_refs) fail_at(t.line, t.col, "names are not allowed in this expression");
            return LenExpr::name(reference(SymKind::LenSym));
        }
        fail_at(t.line, t.col, "expected a length expression, found '" + t.text + "'");
    }

    const std::vector<Token>& toks_;
    std::map<std::string, SymKind>& symbols_;
    size_t pos_ = 0;
};

Selector parse_selector(StatementParser& p) {
    Selector sel;
    if (p.at_end()) return sel;
    if (p.peek_keyword("near") || p.peek_keyword("far")) {
        sel.kind = p.peek_keyword("near") ? Selector::Kind::Near : Selector::Kind::Far;
        p.next();
        sel.point = p.reference(SymKind::PointSym);
    } else if (p.peek_keyword("side") || p.peek_keyword("opposite")) {
        sel.kind = p.peek_keyword("side") ? Selector::Kind::SameSide : Selector::Kind::OppositeSide;
        p.next();
        sel.point = p.reference(SymKind::PointSym);
        p.expect_keyword("of");
        sel.line = p.reference(SymKind::LineSym);
    } else if (p.peek_keyword("idx")) {
        Token t = p.next();
        mpz_class v = p.integer();
        if (v != 0 && v != 1) fail_at(t.line, t.col, "idx selector must be 0 or 1");
        sel.kind = Selector::Kind::Index;
        sel.index = static_cast<int>(v.get_si());
    }
    return sel;
}

} // namespace

Program parse(const std::string& text, const std::string& program_name) {
    Program prog;
    prog.name = program_name;
    std::map<std::string, SymKind> symbols;
    bool saw_unit = false;

    for (const auto& line_toks : tokenize(text)) {
        StatementParser p(line_toks, symbols);
        Token head = p.next();
        if (head.kind != Token::Kind::Name)
            fail_at(head.line, head.col, "expected a statement keyword, found '" + head.text + "'");

        Step step;
        step.line = head.line;

        if (head.text == "unit") {
            if (saw_unit) fail_at(head.line, head.col, "duplicate unit declaration");
            saw_unit = true;
            // Unit points may be declared later in the program; validated at the end.
            Token a = p.next(), b = p.next();
            if (a.kind != Token::Kind::Name || b.kind != Token::Kind::Name)
                fail_at(head.line, head.col, "unit expects two point names");
            prog.unit_p = a.text;
            prog.unit_q = b.text;
            if (!p.at_end()) fail_at(p.peek().line, p.peek().col, "trailing tokens after statement");
            continue;
        }

        if (head.text == "point") {
            // Parse the right-hand side first so the declared name cannot be
            // referenced by its own definition.
            Token name_tok = p.peek();
            if (name_tok.kind != Token::Kind::Name)
                fail_at(name_tok.line, name_tok.col, "expected a name");
            std::string pending = name_tok.text;
            p.next();
            p.expect_punct("=");
            if (p.peek_punct("(")) {
                step.kind = Step::Kind::InitialPoint;
                p.expect_punct("(");
                step.x = p.rational_literal();
                p.expect_punct(",");
                step.y = p.rational_literal();
                p.expect_punct(")");
            } else if (p.peek_keyword("intersect")) {
                p.next();
                step.kind = Step::Kind::Intersect;
                step.arg1 = p.reference_object();
                step.arg2 = p.reference_object();
                step.selector = parse_selector(p);
            } else if (p.peek_keyword("midpoint")) {
                p.next();
                step.kind = Step::Kind::Midpoint;
                step.arg1 = p.reference(SymKind::PointSym);
                step.arg2 = p.reference(SymKind::PointSym);
            } else if (p.peek_keyword("onray")) {
                p.next();
                step.kind = Step::Kind::OnRay;
                step.arg1 = p.reference(SymKind::PointSym);
                step.arg2 = p.reference(SymKind::PointSym);
                p.expect_keyword("dist");
                step.length = p.parse_expr(true);
            } else {
                fail_at(p.peek().line, p.peek().col, "expected point definition");
            }
            if (reserved_words().count(pending)) fail_at(name_tok.line, name_tok.col, "'" + pending + "' is a reserved word");
            if (symbols.count(pending))
                throw Error(Error::Kind::DuplicateName, std::to_string(name_tok.line) + ":" +
                                                            std::to_string(name_tok.col) + ": duplicate name '" +
                                                            pending + "'");
            symbols.emplace(pending, SymKind::PointSym);
            step.names = {pending};
        } else if (head.text == "line") {
            std::string name;
            {
                Token name_tok = p.peek();
                p.next();
                if (name_tok.kind != Token::Kind::Name) fail_at(name_tok.line, name_tok.col, "expected a name");
                name = name_tok.text;
                p.expect_punct("=");
                if (p.peek_keyword("through")) {
                    p.next();
                    step.kind = Step::Kind::DrawLine;
                    step.arg1 = p.reference(SymKind::PointSym);
                    step.arg2 = p.reference(SymKind::PointSym);
                } else if (p.peek_keyword("perp")) {
                    p.next();
                    step.kind = Step::Kind::PerpThrough;
                    step.arg1 = p.reference(SymKind::PointSym);
                    p.expect_keyword("to");
                    step.arg2 = p.reference(SymKind::LineSym);
                } else {
                    fail_at(p.peek().line, p.peek().col, "expected 'through' or 'perp'");
                }
                if (reserved_words().count(name)) fail_at(name_tok.line, name_tok.col, "'" + name + "' is a reserved word");
                if (symbols.count(name))
                    throw Error(Error::Kind::DuplicateName, std::to_string(name_tok.line) + ":" +
                                                                std::to_string(name_tok.col) + ": duplicate name '" +
                                                                name + "'");
                symbols.emplace(name, SymKind::LineSym);
            }
            step.names = {name};
        } else if (head.text == "circle") {
            Token name_tok = p.peek();
            p.next();
            if (name_tok.kind != Token::Kind::Name) fail_at(name_tok.line, name_tok.col, "expected a name");
            std::string name = name_tok.text;
            p.expect_punct("=");
            if (p.peek_keyword("center")) {
                p.next();
                step.kind = Step::Kind::DrawCircle;
                step.arg1 = p.reference(SymKind::PointSym);
                p.expect_keyword("through");
                step.arg2 = p.reference(SymKind::PointSym);
            } else if (p.peek_keyword("diameter")) {
                p.next();
                step.kind = Step::Kind::CircleOnDiameter;
                step.arg1 = p.reference(SymKind::PointSym);
                step.arg2 = p.reference(SymKind::PointSym);
            } else {
                fail_at(p.peek().line, p.peek().col, "expected 'center' or 'diameter'");
            }
            if (reserved_words().count(name)) fail_at(name_tok.line, name_tok.col, "'" + name + "' is a reserved word");
            if (symbols.count(name))
                throw Error(Error::Kind::DuplicateName, std::to_string(name_tok.line) + ":" +
                                                            std::to_string(name_tok.col) + ": duplicate name '" + name +
                                                            "'");
            symbols.emplace(name, SymKind::CircleSym);
            step.names = {name};
        } else if (head.text == "points") {
            step.kind = Step::Kind::Divide;
            std::vector<Token> name_toks;
            while (!p.peek_punct("=")) {
                Token t = p.next();
                if (t.kind != Token::Kind::Name) fail_at(t.line, t.col, "expected a name");
                name_toks.push_back(t);
            }
            p.expect_punct("=");
            p.expect_keyword("divide");
            step.arg1 = p.reference(SymKind::PointSym);
            step.arg2 = p.reference(SymKind::PointSym);
            Token count_tok = p.peek();
            mpz_class n = p.integer();
            if (n < 2) fail_at(count_tok.line, count_tok.col, "divide needs n >= 2");
            step.divide_n = static_cast<int>(n.get_si());
            if (static_cast<int>(name_toks.size()) != step.divide_n - 1)
                fail_at(head.line, head.col,
                        "divide into " + n.get_str() + " parts binds " + std::to_string(step.divide_n - 1) +
                            " points, got " + std::to_string(name_toks.size()));
            for (const Token& t : name_toks) {
                if (reserved_words().count(t.text)) fail_at(t.line, t.col, "'" + t.text + "' is a reserved word");
                if (symbols.count(t.text))
                    throw Error(Error::Kind::DuplicateName, std::to_string(t.line) + ":" + std::to_string(t.col) +
                                                                ": duplicate name '" + t.text + "'");
                symbols.emplace(t.text, SymKind::PointSym);
                step.names.push_back(t.text);
            }
        } else if (head.text == "len") {
            Token name_tok = p.peek();
            p.next();
            if (name_tok.kind != Token::Kind::Name) fail_at(name_tok.line, name_tok.col, "expected a name");
            std::string name = name_tok.text;
            p.expect_punct("=");
            step.kind = Step::Kind::LengthDef;
            step.length = p.parse_expr(true);
            if (reserved_words().count(name)) fail_at(name_tok.line, name_tok.col, "'" + name + "' is a reserved word");
            if (symbols.count(name))
                throw Error(Error::Kind::DuplicateName, std::to_string(name_tok.line) + ":" +
                                                            std::to_string(name_tok.col) + ": duplicate name '" + name +
                                                            "'");
            symbols.emplace(name, SymKind::LenSym);
            step.names = {name};
        } else {
            fail_at(head.line, head.col, "unknown statement '" + head.text + "'");
        }

        if (!p.at_end()) fail_at(p.peek().line, p.peek().col, "trailing tokens after statement");
        prog.steps.push_back(std::move(step));
    }

    if (prog.has_unit()) {
        for (const std::string& n : {prog.unit_p, prog.unit_q}) {
            auto it = symbols.find(n);
            if (it == symbols.end())
                throw Error(Error::Kind::UnknownName, "unit declaration references unknown point '" + n + "'");
            if (it->second != SymKind::PointSym)
                throw Error(Error::Kind::Parse, "unit declaration: '" + n + "' is not a point");
        }
    }
    return prog;
}

LenExprPtr parse_target_expr(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.size() != 1)
        throw Error(Error::Kind::Parse, "expected a single-line expression");
    std::map<std::string, SymKind> no_symbols;
    StatementParser p(lines[0], no_symbols);
    LenExprPtr e = p.parse_expr(false);
    if (!p.at_end()) throw Error(Error::Kind::Parse, "trailing tokens after expression");
    return e;
}

} // namespace quadratrix
