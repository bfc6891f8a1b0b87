#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace qplace {

/// Exact time and weight arithmetic. All runtimes are kept as rationals and
/// only turned into seconds when reported.
using Rational = boost::rational<std::int64_t>;

/**
 * Parses "38", "0.001", "1e-4", "-2.5E3" or "3/4" into an exact rational.
 * Throws ValidationError on anything else.
 */
[[nodiscard]] Rational parse_rational(std::string_view text);

/**
 * Exact textual form: an integer, a terminating decimal, or "p/q" when the
 * denominator has prime factors other than 2 and 5. parse_rational reads
 * every output back to the same value.
 */
[[nodiscard]] std::string format_rational(const Rational& value);

/// Decimal rendering for human-facing seconds; exact when terminating,
/// otherwise rounded to `digits` fractional digits.
[[nodiscard]] std::string format_decimal(const Rational& value,
                                         int digits = 12);

} // namespace qplace
