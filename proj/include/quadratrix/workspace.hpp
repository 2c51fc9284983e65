#pragma once
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "quadratrix/geometry.hpp"
#include "quadratrix/program.hpp"

namespace quadratrix {

// Result of running a program: named exact bindings plus a replayable trace.
// The trace contains the executed steps with every intersection selector
// resolved to a positional index, so re-executing it as a program reproduces
// the bindings exactly.
struct Workspace {
    using Binding = std::variant<Point, GeomObject, Constructible>;

    std::vector<std::string> order; // definition order of bindings
    std::map<std::string, Binding> bindings;
    std::vector<Step> trace;
    std::string unit_p, unit_q;

    bool has(const std::string& name) const { return bindings.count(name) != 0; }
    bool has_point(const std::string& name) const;

    const Point& point(const std::string& name) const;
    const GeomObject& object(const std::string& name) const;
    const Line& line(const std::string& name) const;
    const Constructible& length(const std::string& name) const;

    Program trace_program(const std::string& name) const;
};

// Runs a program with exact arithmetic. Macro steps are interpreted by their
// geometric meaning (the elaborator provides the primitive-only expansion).
Workspace execute(const Program& p);

// The unique candidate satisfying the selector; throws on ties, on selectors
// nothing satisfies, and on empty candidate lists.
Point resolve_selector(const std::vector<Point>& candidates, const Selector& s, const Workspace& w);

Constructible eval_len(const LenExprPtr& e, const Workspace& w);

} // namespace quadratrix
