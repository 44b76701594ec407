#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "disperse/geometry.hpp"

namespace disperse {

// Text format, UTF-8 with LF line endings:
//
//   # disperse-pointset v1 d=<d> n=<n> coord=<rational|decimal> space=<cube|torus>
//   <d whitespace-separated coordinates>      (n lines)
//
// Rational coordinates are `num/den` in lowest terms (or a bare integer).
// Decimal coordinates are decimal literals written with round-trip precision.

void write_pointset(std::ostream& out, const PointSet& set);
void write_pointset(const std::filesystem::path& path, const PointSet& set);

/// Throws ParseError (malformed header/literal), DimensionMismatch (wrong
/// number of coordinates on a line) or Error{out_of_range} (coordinate
/// outside [0,1]).
PointSet read_pointset(std::istream& in);
PointSet read_pointset(const std::filesystem::path& path);

std::string pointset_to_string(const PointSet& set);
PointSet pointset_from_string(const std::string& text);

}  // namespace disperse
