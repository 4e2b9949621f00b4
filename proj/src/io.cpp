#include "chscatter/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "chscatter/error.hpp"

namespace chscatter::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_plain(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("cannot format value");
  return std::string(buf.data(), ptr);
}

double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  if (parse_plain(text, v)) return v;
  const auto slash = text.find('/');
  double num = 0.0, den = 0.0;
  if (slash != std::string_view::npos && parse_plain(text.substr(0, slash), num) &&
      parse_plain(text.substr(slash + 1), den) && den != 0.0)
    return num / den;
  throw InputError("invalid value for " + std::string(what) + ": '" + std::string(text) + "'");
}

SampledFunction read_profile_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError(source + ":" + std::to_string(lineno) + ": " + msg);
  };

  ++lineno;
  if (!std::getline(in, line)) fail("empty input, expected header 'coord,value'");
  if (trim(line) != "coord,value") fail("expected header 'coord,value', got '" + std::string(trim(line)) + "'");

  std::vector<double> coords, values;
  std::vector<std::size_t> lines;
  while (std::getline(in, line)) {
    ++lineno;
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) fail("expected two comma-separated fields, got '" + std::string(row) + "'");
    double c = 0.0, v = 0.0;
    if (!parse_plain(row.substr(0, comma), c)) fail("invalid coordinate in row '" + std::string(row) + "'");
    if (!parse_plain(row.substr(comma + 1), v)) fail("invalid value in row '" + std::string(row) + "'");
    coords.push_back(c);
    values.push_back(v);
    lines.push_back(lineno);
  }
  if (coords.size() < 2) fail("need at least 2 data rows, got " + std::to_string(coords.size()));

  const std::size_t n = coords.size();
  const double dx = (coords.back() - coords.front()) / static_cast<double>(n - 1);
  if (!(dx > 0.0)) throw InputError(source + ": coordinates must be increasing");
  const Grid1D grid(coords.front(), dx, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(coords[i] - grid.point(i)) > 1e-6 * dx) {
      lineno = lines[i];
      fail("coordinates are not a uniform grid (expected " + format_real(grid.point(i)) + ")");
    }
  }
  return SampledFunction(grid, std::move(values));
}

SampledFunction read_profile_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return read_profile_csv(in, path);
}

void write_profile_csv(std::ostream& out, const SampledFunction& f) {
  out << "coord,value\n";
  const Grid1D& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) out << format_real(g.point(i)) << ',' << format_real(f[i]) << '\n';
}

}  // namespace chscatter::io
