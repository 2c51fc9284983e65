#pragma once
#include "quadratrix/program.hpp"

namespace quadratrix {

// Rewrites every macro step (midpoint, perpendicular, circle-on-diameter,
// n-division, length arithmetic) into the compass/ruler primitives
// InitialPoint, DrawLine, DrawCircle, Intersect and OnRay, introducing fresh
// auxiliary names. OnRay steps in the output carry plain segment transfers
// (dist of two bound points); LengthDef steps survive only as pure name
// bindings of the form dist(P,Q). User-visible bindings keep their values.
Program elaborate(const Program& p);

// True when the program consists solely of the elaborated primitive forms.
bool is_primitive_program(const Program& p);

// Whether elaboration rewrites this step into a longer primitive sequence
// (macro steps and constructed length expressions).
bool step_expands(const Step& s);

} // namespace quadratrix
