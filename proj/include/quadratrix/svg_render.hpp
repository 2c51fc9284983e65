#pragma once
#include <optional>
#include <string>
#include <utility>

#include "quadratrix/workspace.hpp"

namespace quadratrix {

struct RenderStyle {
    int canvas = 720;        // pixel width; height follows the aspect ratio
    int margin = 40;         // pixels
    int precision = 12;      // decimal digits for emitted coordinates
    double stroke = 1.5;     // pixels
    double point_radius = 3; // pixels
    int label_font = 14;     // pixels
    std::string highlight_fill = "#f6d945";
    std::string accent_stroke = "#b22222";
};

// Optional shaded area-comparison pair: a circle object binding and a square
// side given by two point bindings.
struct Highlight {
    std::string circle;                           // object name, may be empty
    std::pair<std::string, std::string> square;   // point names, may be empty
};

// Deterministic SVG 1.1 document for a workspace; identical inputs produce
// byte-identical output. Auxiliary "__aux" bindings are drawn but not
// labeled.
std::string render_svg(const Workspace& w, const Highlight& highlight, const RenderStyle& style);

} // namespace quadratrix
