#pragma once
#include <string>
#include <utility>
#include <vector>

#include "quadratrix/program.hpp"
#include "quadratrix/workspace.hpp"

namespace quadratrix {

// A named value approximating pi, with the number of decimal places the
// construction tradition credits it with.
struct Approximant {
    std::string name;
    Constructible value;
    int claimed_decimal_places;
    std::string source;
};

// A shipped construction with its exactly verified result segment(s).
struct CatalogEntry {
    std::string name;
    std::string description;
    Program program;
    std::string source_text; // the .construct body the program was parsed from
    std::pair<std::string, std::string> result_points;
    Constructible target; // claimed exact length of the result segment
    // Additional exactly verified segments (name pair -> claimed length).
    std::vector<std::pair<std::pair<std::string, std::string>, Constructible>> extra_results;
    // Render hints: the unit circle object and the square side to shade.
    std::string highlight_circle;
    std::pair<std::string, std::string> highlight_square;
};

const std::vector<std::string>& catalog_names();
CatalogEntry builtin(const std::string& name);

const std::vector<std::string>& approximant_names();
Approximant approximant(const std::string& name);

// Exact check: executes the program and compares the distance between the
// bound endpoints with the target. No tolerance.
bool verify(const Program& p, const std::pair<std::string, std::string>& endpoints,
            const Constructible& target);

} // namespace quadratrix
