#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parobs/grid.hpp"
#include "parobs/symbols.hpp"
#include "parobs/thickness.hpp"

namespace parobs {

// Line-oriented configuration: one `key = value` per line, keys dotted into
// sections (symbol.order = 4), '#' starts a comment, blank lines skipped.
// Keys may repeat: scalar getters take the last occurrence, get_all sees
// every occurrence in file order.  Numeric values accept a trailing `pi`
// multiplier (extent = 40pi), since domain sizes here are natural multiples
// of pi.  Every parse failure raises ConfigError.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::size_t get_size(const std::string& key) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Comma-separated list of numbers (same `pi` suffix rule).
  std::vector<double> get_double_list(const std::string& key) const;

  /// Every value bound to the key, in file order.
  std::vector<std::string> get_all(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Number parser shared with the config getters: plain double, `pi`, or
/// `<number>pi`; `inf` is accepted for exponents like r.
double parse_config_double(const std::string& text);

/// Grid from grid.points and grid.extents (comma lists of equal length).
Grid grid_from_config(const Config& cfg);

// Certified symbol from the symbol.* section: symbol.order (even), and
// either symbol.kind = laplacian (the power |xi|^m, the default) or
// symbol.kind = custom with repeated lines
//   symbol.term = <alpha_1> ... <alpha_dim> : <re> [<im>]
EllipticSymbol symbol_from_config(const Config& cfg, int dim);

// Thick-set spec from the set.* section: set.kind = slabs | checkerboard |
// random plus the kind's parameters (set.axis, set.width_cells,
// set.period_cells, set.phase_cells, set.cell_size, set.density) and the
// optional reference box set.box.
ThickSetSpec thickset_from_config(const Config& cfg);

}  // namespace parobs
