#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fitsgeo {

/// Shortest decimal text that parses back to exactly `v`: lowercase `e`,
/// no `+` or leading zeros in the exponent, and -0 printed as "0".
/// Throws NonFiniteNumber for NaN/inf.
std::string format_number(double v);

/// Parses a complete decimal token. Accepts a leading sign and Fortran-style
/// `d`/`D` exponents ("1.0D-3"). Rejects NaN, infinities and trailing junk.
std::optional<double> parse_number(std::string_view text);

/// Parses a complete base-10 integer token (optional sign).
std::optional<long long> parse_integer(std::string_view text);

}  // namespace fitsgeo
