#pragma once

#include <string>
#include <string_view>

namespace rice {

// Shortest fixed-notation decimal that round-trips to exactly `v`, always
// with a decimal point ("0.6", "1.0", "0.08").  This is the format used for
// constants in program text and job files.
std::string format_constant(double v);

// Fixed two-decimal rendering ("0.59", "1.00") used for observable fields.
std::string format_field(double v);

// Round to two decimal places, ties to even (matches std::rint semantics).
double round2(double v);

// Parse a decimal literal; the whole of `text` must be consumed.
// Throws ParseError otherwise.
double parse_number(std::string_view text);

}  // namespace rice
