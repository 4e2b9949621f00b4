#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "chscatter/numerics.hpp"

namespace chscatter::io {

/// Shortest decimal form that parses back to the same double.
std::string format_real(double v);

/// Parses a real; besides plain decimals accepts a ratio "p/q" (e.g. "8/3").
/// Throws InputError naming `what` on failure.
double parse_real(std::string_view text, std::string_view what);

/// Reads a `coord,value` CSV whose coordinates form a uniform grid.
/// Errors carry `source` and the 1-based line number.
SampledFunction read_profile_csv(std::istream& in, const std::string& source);
SampledFunction read_profile_csv_file(const std::string& path);

/// Writes the `coord,value` header and one record per node; coordinates are
/// the grid formula x0 + i dx.
void write_profile_csv(std::ostream& out, const SampledFunction& f);

}  // namespace chscatter::io
