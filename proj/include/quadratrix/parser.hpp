#pragma once
#include <string>

#include "quadratrix/program.hpp"

namespace quadratrix {

// Parses the construction DSL. Reports syntax errors, unknown/duplicate
// names, and arity mistakes with line:column locations. The returned program
// passed all static reference checks.
Program parse(const std::string& text, const std::string& program_name = "program");

// Parses just a length expression over rationals and sqrt (no dist, no
// names); used for verification targets given on the command line.
LenExprPtr parse_target_expr(const std::string& text);

} // namespace quadratrix
