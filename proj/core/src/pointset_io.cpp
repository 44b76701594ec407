#include "disperse/pointset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace disperse {

namespace {

constexpr std::string_view kMagic = "# disperse-pointset v1";

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

}  // namespace

void write_pointset(std::ostream& out, const PointSet& set) {
  out << kMagic << " d=" << set.dimension() << " n=" << set.size()
      << " coord=" << to_string(set.kind()) << " space=" << to_string(set.space()) << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.dimension(); ++j) {
      if (j) out << ' ';
      if (set.is_exact())
        out << format_rational(set.exact_point(i)[j]);
      else
        out << format_double(set.real_point(i)[j]);
    }
    out << '\n';
  }
}

void write_pointset(const std::filesystem::path& path, const PointSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  write_pointset(out, set);
  if (!out) throw Error(ErrorCategory::io, "write to '" + path.string() + "' failed");
}

PointSet read_pointset(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing header", 1);
  if (!header.empty() && header.back() == '\r') throw ParseError("CRLF line endings are not accepted", 1);
  if (header.rfind(kMagic, 0) != 0) throw ParseError("header must start with '" + std::string(kMagic) + "'", 1);

  std::map<std::string, std::string> fields;
  for (const auto& tok : split_ws(header.substr(kMagic.size()))) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("malformed header field '" + tok + "'", 1);
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"d", "n", "coord", "space"})
    if (!fields.count(key)) throw ParseError(std::string("header lacks '") + key + "='", 1);

  auto parse_count = [](const std::string& s, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError(std::string("bad ") + what + " '" + s + "'", 1);
    return v;
  };
  std::size_t dim = parse_count(fields["d"], "dimension");
  std::size_t count = parse_count(fields["n"], "point count");
  if (dim == 0) throw ParseError("dimension must be positive", 1);

  CoordKind kind;
  if (fields["coord"] == "rational")
    kind = CoordKind::exact;
  else if (fields["coord"] == "decimal")
    kind = CoordKind::decimal;
  else
    throw ParseError("coord must be 'rational' or 'decimal'", 1);

  Space space;
  if (fields["space"] == "cube")
    space = Space::cube;
  else if (fields["space"] == "torus")
    space = Space::torus;
  else
    throw ParseError("space must be 'cube' or 'torus'", 1);

  std::vector<Rational> exact;
  std::vector<double> real;
  std::string line;
  std::size_t lineno = 1;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.back() == '\r') throw ParseError("CRLF line endings are not accepted", lineno);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != dim)
      throw DimensionMismatch("line " + std::to_string(lineno) + " has " + std::to_string(tokens.size()) +
                              " coordinates, expected " + std::to_string(dim));
    for (const auto& tok : tokens) {
      if (kind == CoordKind::exact) {
        Rational q;
        try {
          q = parse_rational(tok);
        } catch (const std::exception&) {
          throw ParseError("bad rational '" + tok + "'", lineno);
        }
        if (tok.find('/') != std::string::npos &&
            numerator(q).str() + "/" + denominator(q).str() != tok)
          throw ParseError("rational '" + tok + "' is not in lowest terms", lineno);
        if (q < 0 || q > 1)
          throw Error(ErrorCategory::out_of_range,
                      "coordinate " + tok + " outside [0,1] (line " + std::to_string(lineno) + ")");
        exact.push_back(std::move(q));
      } else {
        double x = 0;
        try {
          std::size_t used = 0;
          x = std::stod(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ParseError("bad decimal '" + tok + "'", lineno);
        }
        if (!(x >= 0.0 && x <= 1.0))
          throw Error(ErrorCategory::out_of_range,
                      "coordinate " + tok + " outside [0,1] (line " + std::to_string(lineno) + ")");
        real.push_back(x);
      }
    }
    ++seen;
  }
  if (seen != count)
    throw ParseError("header announces " + std::to_string(count) + " points, found " + std::to_string(seen),
                     lineno);
  return kind == CoordKind::exact ? PointSet::from_exact(dim, std::move(exact), space)
                                  : PointSet::from_real(dim, std::move(real), space);
}

PointSet read_pointset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::io, "cannot open '" + path.string() + "'");
  return read_pointset(in);
}

std::string pointset_to_string(const PointSet& set) {
  std::ostringstream out;
  write_pointset(out, set);
  return out.str();
}

PointSet pointset_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_pointset(in);
}

}  // namespace disperse
