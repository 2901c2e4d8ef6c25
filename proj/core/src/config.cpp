#include "parobs/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace

double parse_config_double(const std::string& text) {
  const std::string body = trim(text);
  if (body.empty()) throw ConfigError("empty numeric value");
  if (body == "pi") return std::numbers::pi;
  const char* begin = body.c_str();
  char* cursor = nullptr;
  const double value = std::strtod(begin, &cursor);
  if (cursor == begin) throw ConfigError("not a number: '" + body + "'");
  const std::string rest = trim(std::string(cursor));
  if (rest == "pi") return value * std::numbers::pi;
  if (!rest.empty()) throw ConfigError("trailing characters in number: '" + body + "'");
  return value;
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

bool Config::has(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

std::string Config::get_string(const std::string& key) const {
  const std::string* found = nullptr;
  for (const auto& [k, v] : entries_)
    if (k == key) found = &v;
  if (!found) throw ConfigError("missing config key '" + key + "'");
  return *found;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  try {
    return parse_config_double(get_string(key));
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const std::string body = get_string(key);
  const char* begin = body.c_str();
  char* cursor = nullptr;
  const long long value = std::strtoll(begin, &cursor, 10);
  if (cursor == begin || !trim(std::string(cursor)).empty())
    throw ConfigError("key '" + key + "': not an integer: '" + body + "'");
  return value;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::size_t Config::get_size(const std::string& key) const {
  const long long value = get_int(key);
  if (value < 0) throw ConfigError("key '" + key + "': must be nonnegative");
  return static_cast<std::size_t>(value);
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  return has(key) ? get_size(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string body = get_string(key);
  const char* begin = body.c_str();
  char* cursor = nullptr;
  const unsigned long long value = std::strtoull(begin, &cursor, 10);
  if (cursor == begin || !trim(std::string(cursor)).empty())
    throw ConfigError("key '" + key + "': not an unsigned integer: '" + body + "'");
  return value;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string body = get_string(key);
  if (body == "true" || body == "1" || body == "yes") return true;
  if (body == "false" || body == "0" || body == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + body + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const std::string body = get_string(key);
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    const std::string piece = trim(body.substr(start, comma - start));
    if (piece.empty()) throw ConfigError("key '" + key + "': empty list element");
    try {
      out.push_back(parse_config_double(piece));
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
    start = comma + 1;
    if (comma == body.size()) break;
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::vector<std::string> Config::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_)
    if (k == key) out.push_back(v);
  return out;
}

Grid grid_from_config(const Config& cfg) {
  const std::vector<double> points = cfg.get_double_list("grid.points");
  const std::vector<double> extents = cfg.get_double_list("grid.extents");
  if (points.size() != extents.size())
    throw ConfigError("grid.points and grid.extents must have the same length");
  std::vector<std::size_t> counts;
  counts.reserve(points.size());
  for (double p : points) {
    if (!(p > 0.0) || p != static_cast<double>(static_cast<std::size_t>(p)))
      throw ConfigError("grid.points entries must be positive integers");
    counts.push_back(static_cast<std::size_t>(p));
  }
  try {
    return Grid(counts, extents);
  } catch (const Error& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

EllipticSymbol symbol_from_config(const Config& cfg, int dim) {
  const int order = static_cast<int>(cfg.get_int("symbol.order", 2));
  const std::string kind = cfg.get_string("symbol.kind", "laplacian");
  if (kind == "laplacian") {
    try {
      return laplacian_power_symbol(dim, order);
    } catch (const Error& e) {
      throw ConfigError(std::string("symbol: ") + e.what());
    }
  }
  if (kind != "custom")
    throw ConfigError("symbol.kind must be 'laplacian' or 'custom', got '" + kind + "'");

  std::vector<SymbolTerm> terms;
  for (const std::string& line : cfg.get_all("symbol.term")) {
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ConfigError("symbol.term needs '<exponents> : <re> [im]', got '" + line + "'");
    std::istringstream alpha_in(line.substr(0, colon));
    SymbolTerm term;
    for (int i = 0; i < dim; ++i)
      if (!(alpha_in >> term.alpha[i]))
        throw ConfigError("symbol.term: expected " + std::to_string(dim) +
                          " exponents in '" + line + "'");
    int excess = 0;
    if (alpha_in >> excess)
      throw ConfigError("symbol.term: too many exponents in '" + line + "'");
    std::istringstream coeff_in(line.substr(colon + 1));
    double re = 0.0;
    double im = 0.0;
    if (!(coeff_in >> re)) throw ConfigError("symbol.term: missing coefficient in '" + line + "'");
    coeff_in >> im;
    term.coeff = {re, im};
    terms.push_back(term);
  }
  if (terms.empty()) throw ConfigError("symbol.kind = custom needs symbol.term lines");
  try {
    return EllipticSymbol::certify(dim, order, terms);
  } catch (const NotElliptic&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("symbol: ") + e.what());
  }
}

ThickSetSpec thickset_from_config(const Config& cfg) {
  ThickSetSpec spec;
  const std::string kind = cfg.get_string("set.kind", "slabs");
  if (kind == "slabs")
    spec.kind = ThickSetSpec::Kind::PeriodicSlabs;
  else if (kind == "checkerboard")
    spec.kind = ThickSetSpec::Kind::Checkerboard;
  else if (kind == "random")
    spec.kind = ThickSetSpec::Kind::RandomCells;
  else
    throw ConfigError("set.kind must be slabs, checkerboard, or random, got '" + kind + "'");
  spec.axis = static_cast<int>(cfg.get_int("set.axis", 0));
  spec.width_cells = cfg.get_size("set.width_cells", spec.width_cells);
  spec.period_cells = cfg.get_size("set.period_cells", spec.period_cells);
  spec.phase_cells = cfg.get_size("set.phase_cells", spec.phase_cells);
  spec.cell_size = cfg.get_size("set.cell_size", spec.cell_size);
  spec.density = cfg.get_double("set.density", spec.density);
  if (cfg.has("set.box")) spec.box = cfg.get_double_list("set.box");
  return spec;
}

}  // namespace parobs
