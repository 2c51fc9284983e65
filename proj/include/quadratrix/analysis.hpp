#pragma once
#include <optional>
#include <string>

#include "quadratrix/program.hpp"
#include "quadratrix/workspace.hpp"

namespace quadratrix {

// Efficiency survey of a construction: primitive step count after macro
// expansion, and the extreme sub-construction lengths (drawn segments, circle
// radii and compass transfers).
struct MetricsReport {
    std::string program;
    int primitive_steps = 0;
    int macro_steps = 0;
    bool has_lengths = false;
    Constructible max_length;
    Constructible min_positive_length;
    int distinct_points = 0;

    // 20-digit decimals; "n/a" when the program draws nothing.
    std::string max_length_decimal() const;
    std::string min_positive_length_decimal() const;
};

MetricsReport metrics(const Program& p);

std::string metrics_to_text(const MetricsReport& r);
std::string metrics_to_json(const MetricsReport& r);

// Digit-accuracy report of a value against pi. The ratio and the value are
// printed as truncated decimal expansions, which is also how places_correct
// counts agreement ("correct to k decimal places").
struct ErrorReport {
    std::string value_decimal; // truncated, 20 fractional digits
    std::string ratio_to_pi;   // truncated, ratio_digits fractional digits
    int places_correct = 0;
};

ErrorReport pi_error(const Constructible& v, int ratio_digits);

std::string error_report_to_text(const ErrorReport& r);
std::string error_report_to_json(const ErrorReport& r);

// Truncated decimal expansion of pi itself, from the arbitrary-precision
// oracle (pi never enters any construction; it exists only as a reference).
std::string pi_decimal_truncated(int digits);

} // namespace quadratrix
