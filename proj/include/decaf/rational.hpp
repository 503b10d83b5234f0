#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace decaf {

// Exact arithmetic for every weight in the pipeline.
using Rational = mpq_class;

// Parses an integer, a decimal literal ("2.5") or a fraction ("5/2") into an
// exact rational. Returns false on malformed text; never goes through binary
// floating point.
bool parse_rational(std::string_view text, Rational& out);

// Shortest exact text for a rational: decimal when the expansion terminates,
// "p/q" otherwise. parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace decaf
